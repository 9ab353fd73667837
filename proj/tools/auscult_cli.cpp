// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Batch CLI: denoise recordings, build evaluation mixtures, score sweeps and
// print operation-count tables.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "auscult/audio_io.hpp"
#include "auscult/eval.hpp"
#include "auscult/incremental.hpp"
#include "auscult/mixsim.hpp"
#include "auscult/nlms.hpp"
#include "auscult/nmpcf.hpp"

using json = nlohmann::json;
using namespace auscult;

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitIoError = 3;
constexpr int kExitNumericError = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

// ---------------------------------------------------------------- denoise

struct DenoiseArgs {
  std::string internal_path, external_path;
  std::string out_signal = "s_hat.wav";
  std::string out_noise = "n_hat.wav";
  std::string reference_path;
  DenoiseConfig cfg;
};

int run_denoise(const DenoiseArgs& args) {
  TimeSignal x = load_wav(args.internal_path, args.cfg.sample_rate);
  TimeSignal y = load_wav(args.external_path, args.cfg.sample_rate);
  std::tie(x, y) = align_lengths(x, y);

  std::vector<IncrementalTrace> traces;
  for (int run = 0; run < args.cfg.num_runs; ++run)
    traces.push_back(denoise_incremental(x, y, args.cfg, run));

  // With a clean reference the reported run is the median-SDR one;
  // otherwise run 0.
  size_t chosen = 0;
  if (!args.reference_path.empty()) {
    TimeSignal s = load_wav(args.reference_path, args.cfg.sample_rate);
    if (s.size() < x.size())
      throw IoError("reference shorter than the mixture");
    s.samples.conservativeResize(x.size());
    TimeSignal n{x.samples - s.samples, x.sample_rate};
    std::vector<std::pair<double, size_t>> by_sdr;
    for (size_t run = 0; run < traces.size(); ++run) {
      const BssScores scores =
          bss_metrics(traces[run].stages.back().biomedical, s, n);
      by_sdr.emplace_back(scores.sdr_db, run);
    }
    std::sort(by_sdr.begin(), by_sdr.end());
    chosen = by_sdr[by_sdr.size() / 2].second;
  }

  const StageRecord& last = traces[chosen].stages.back();
  save_wav(last.biomedical, args.out_signal);
  save_wav(last.noise, args.out_noise);
  std::cout << "wrote " << args.out_signal << " and " << args.out_noise
            << " (run " << chosen << ", " << traces[chosen].stages.size()
            << " stages, final objective " << last.final_objective << ")\n";
  return 0;
}

// -------------------------------------------------------------------- mix

TimeSignal load_entry_wav(const json& entry, const char* key, int rate) {
  if (!entry.contains(key))
    throw IoError(std::string("manifest entry missing \"") + key + "\"");
  return load_wav(entry.at(key).get<std::string>(), rate);
}

int run_mix(const std::string& manifest_path, int rate) {
  const json manifest = load_json(manifest_path);
  const json& entries =
      manifest.is_array() ? manifest : manifest.at("entries");
  for (const json& entry : entries) {
    TimeSignal s = load_entry_wav(entry, "s", rate);
    TimeSignal n_a = load_entry_wav(entry, "n", rate);
    std::tie(s, n_a) = align_lengths(s, n_a);

    const double snr = entry.at("snr_db").get<double>();
    const double delay_ms = entry.value("delay_ms", 0.0);
    const std::string scenario = entry.value("scenario", "ideal");

    MixResult result;
    if (scenario == "ideal") {
      result = mix_ideal(s, n_a, snr, delay_ms);
    } else if (scenario == "real") {
      MixtureSpec spec;
      spec.biomedical = std::move(s);
      spec.ambient = std::move(n_a);
      spec.target_snr_db = snr;
      spec.scenario = Scenario::Real;
      spec.delay_ms = delay_ms;
      if (entry.contains("room_ir"))
        spec.room_ir = load_wav(entry.at("room_ir").get<std::string>(), rate);
      if (entry.contains("body_ir"))
        spec.body_ir = load_wav(entry.at("body_ir").get<std::string>(), rate);
      result = mix_real(spec);
      s = spec.biomedical;
    } else {
      throw IoError("unknown scenario: " + scenario);
    }

    const std::string out_x = entry.at("out_x").get<std::string>();
    save_wav(result.internal, out_x);
    save_wav(result.external, entry.at("out_y").get<std::string>());
    if (entry.contains("out_n"))
      save_wav(result.noise, entry.at("out_n").get<std::string>());

    json sidecar;
    sidecar["achieved_snr_db"] =
        10.0 * std::log10(s.power() / result.noise.power());
    sidecar["alpha"] = result.alpha;
    sidecar["snr_init_db"] = result.snr_init_db;
    sidecar["scenario"] = scenario;
    sidecar["delay_ms"] = delay_ms;
    const std::string sidecar_path =
        entry.value("sidecar", out_x + ".meta.json");
    std::ofstream sf(sidecar_path);
    if (!sf) throw IoError("cannot write " + sidecar_path);
    sf << sidecar.dump(2) << "\n";
  }
  std::cout << "mixed " << entries.size() << " entries\n";
  return 0;
}

// ------------------------------------------------------------------- eval

int run_eval(const std::string& ref_path, const std::string& noise_path,
             const std::string& mixture_path,
             const std::vector<std::string>& estimate_paths, int rate,
             const std::string& json_out) {
  TimeSignal s = load_wav(ref_path, rate);
  TimeSignal n = load_wav(noise_path, rate);
  TimeSignal x = load_wav(mixture_path, rate);
  std::vector<TimeSignal> estimates;
  Index len = std::min({s.size(), n.size(), x.size()});
  for (const std::string& path : estimate_paths) {
    estimates.push_back(load_wav(path, rate));
    len = std::min(len, estimates.back().size());
  }
  s.samples.conservativeResize(len);
  n.samples.conservativeResize(len);
  x.samples.conservativeResize(len);
  for (TimeSignal& e : estimates) e.samples.conservativeResize(len);

  const EvalReport report = improvement_report(s, n, x, estimates);
  json j;
  j["input_sdr_db"] = report.input_sdr_db;
  j["input_sir_db"] = report.input_sir_db;
  j["sdr_abs_db"] = report.sdr_abs_db;
  j["sir_abs_db"] = report.sir_abs_db;
  j["sdr_improvement_db"] = report.sdr_improvement_db;
  j["sir_improvement_db"] = report.sir_improvement_db;
  j["sdr_improvement_median_db"] = report.sdr_improvement_median_db;
  j["sir_improvement_median_db"] = report.sir_improvement_median_db;
  std::cout << j.dump(2) << "\n";
  if (!json_out.empty()) {
    std::ofstream f(json_out);
    if (!f) throw IoError("cannot write " + json_out);
    f << j.dump(2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ sweep

struct SweepRow {
  std::string method, noise_type, run;
  double snr_db = 0, delay_ms = 0;
  int stage = 0;
  double sdr_i = 0, sir_i = 0, sdr_abs = 0, sir_abs = 0;
};

struct SweepCondition {
  size_t order = 0;  // manifest-major ordering of output rows
  std::string method, noise_type;
  std::string s_path, n_path, room_ir, body_ir, scenario;
  double snr_db = 0, delay_ms = 0;
  std::vector<int> stages;
  DenoiseConfig cfg;
};

std::vector<SweepRow> run_condition(const SweepCondition& cond) {
  const int rate = cond.cfg.sample_rate;
  TimeSignal s = load_wav(cond.s_path, rate);
  TimeSignal n_a = load_wav(cond.n_path, rate);
  std::tie(s, n_a) = align_lengths(s, n_a);

  MixResult mix;
  if (cond.scenario == "real") {
    MixtureSpec spec;
    spec.biomedical = s;
    spec.ambient = n_a;
    spec.target_snr_db = cond.snr_db;
    spec.delay_ms = cond.delay_ms;
    spec.room_ir = load_wav(cond.room_ir, rate);
    spec.body_ir = load_wav(cond.body_ir, rate);
    mix = mix_real(spec);
  } else {
    mix = mix_ideal(s, n_a, cond.snr_db, cond.delay_ms);
  }

  const BssScores base = bss_metrics(mix.internal, s, mix.noise);
  std::vector<SweepRow> rows;
  auto push = [&](const std::string& run, int stage, const BssScores& sc) {
    SweepRow row;
    row.method = cond.method;
    row.noise_type = cond.noise_type;
    row.snr_db = cond.snr_db;
    row.delay_ms = cond.delay_ms;
    row.stage = stage;
    row.run = run;
    row.sdr_abs = sc.sdr_db;
    row.sir_abs = sc.sir_db;
    row.sdr_i = sc.sdr_db - base.sdr_db;
    row.sir_i = sc.sir_db - base.sir_db;
    rows.push_back(row);
  };

  if (cond.method == "nmpcf") {
    std::vector<IncrementalTrace> traces;
    for (int run = 0; run < cond.cfg.num_runs; ++run)
      traces.push_back(
          denoise_incremental(mix.internal, mix.external, cond.cfg, run));
    for (int stage : cond.stages) {
      std::vector<double> sdrs, sirs;
      for (int run = 0; run < cond.cfg.num_runs; ++run) {
        const BssScores sc = bss_metrics(
            traces[run].stages.at(stage - 1).biomedical, s, mix.noise);
        push(std::to_string(run), stage, sc);
        sdrs.push_back(sc.sdr_db);
        sirs.push_back(sc.sir_db);
      }
      push("median", stage, {median(sdrs), median(sirs)});
    }
  } else if (cond.method == "nlms") {
    NlmsConfig nlms_cfg;  // L = 10 per the baseline setup
    const TimeSignal est = nlms_denoise(mix.internal, mix.external, nlms_cfg);
    const BssScores sc = bss_metrics(est, s, mix.noise);
    push("0", 1, sc);
    push("median", 1, sc);
  } else {
    throw IoError("unknown method: " + cond.method);
  }
  return rows;
}

int run_sweep(const std::string& plan_path, int workers) {
  const json plan = load_json(plan_path);
  DenoiseConfig cfg;
  cfg.rng_seed = plan.value("seed", 0);
  cfg.num_runs = plan.value("runs", 3);
  cfg.noise_rank = plan.value("kn", 256);
  cfg.biomedical_rank = plan.value("ks", 16);
  cfg.lambda = plan.value("lambda", 10.0);
  cfg.max_iter = plan.value("iters", 50);
  cfg.sample_rate = plan.value("rate", 8000);

  std::vector<int> stages = plan.value("stages", std::vector<int>{1, 2, 3});
  cfg.incremental_iters = *std::max_element(stages.begin(), stages.end());

  const auto methods =
      plan.value("methods", std::vector<std::string>{"nmpcf", "nlms"});
  const auto snrs = plan.at("snrs_db").get<std::vector<double>>();
  const auto delays = plan.value("delays_ms", std::vector<double>{0.0});
  if (methods.empty() || snrs.empty())
    throw IoError("sweep plan needs at least one method and one SNR");
  const std::string out_dir = plan.value("output_dir", ".");
  std::filesystem::create_directories(out_dir);

  std::vector<SweepCondition> conditions;
  for (const json& entry : plan.at("entries")) {
    for (const std::string& method : methods)
      for (double snr : snrs)
        for (double delay : delays) {
          SweepCondition cond;
          cond.order = conditions.size();
          cond.method = method;
          cond.noise_type = entry.value("noise_type", "unknown");
          cond.s_path = entry.at("s").get<std::string>();
          cond.n_path = entry.at("n").get<std::string>();
          cond.scenario = entry.value("scenario", "ideal");
          cond.room_ir = entry.value("room_ir", "");
          cond.body_ir = entry.value("body_ir", "");
          cond.snr_db = snr;
          cond.delay_ms = delay;
          cond.stages = stages;
          cond.cfg = cfg;
          conditions.push_back(std::move(cond));
        }
  }

  // Bounded worker pool; rows are gathered per condition and emitted in
  // manifest order regardless of completion order.
  std::vector<std::vector<SweepRow>> results(conditions.size());
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::optional<std::string> first_error;
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < conditions.size();
         i = next.fetch_add(1)) {
      try {
        results[i] = run_condition(conditions[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = e.what();
      }
    }
  };
  const int pool = std::max(1, workers);
  std::vector<std::thread> threads;
  for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  if (first_error) throw IoError(*first_error);

  const std::string csv_path = out_dir + "/results.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot write " + csv_path);
  csv << "method,noise_type,snr_db,delay_ms,stage,run,sdr_i,sir_i,sdr_abs,sir_abs\n";
  json jrows = json::array();
  for (const std::vector<SweepRow>& rows : results)
    for (const SweepRow& r : rows) {
      csv << r.method << ',' << r.noise_type << ',' << r.snr_db << ','
          << r.delay_ms << ',' << r.stage << ',' << r.run << ',' << r.sdr_i
          << ',' << r.sir_i << ',' << r.sdr_abs << ',' << r.sir_abs << '\n';
      jrows.push_back({{"method", r.method},
                       {"noise_type", r.noise_type},
                       {"snr_db", r.snr_db},
                       {"delay_ms", r.delay_ms},
                       {"stage", r.stage},
                       {"run", r.run},
                       {"sdr_i", r.sdr_i},
                       {"sir_i", r.sir_i},
                       {"sdr_abs", r.sdr_abs},
                       {"sir_abs", r.sir_abs}});
    }
  std::ofstream jf(out_dir + "/results.json");
  jf << jrows.dump(2) << "\n";
  std::cout << "wrote " << csv_path << "\n";
  return 0;
}

// ------------------------------------------------------------- complexity

int run_complexity(int window_len, int rate, int k_n, int k_s, int iters,
                   int stages) {
  const int hop = window_len / 2;
  const double frames_per_s = std::lround(double(rate) / hop);
  const double bins = window_len;  // one FFT-length worth of bins per frame

  const OpCount proposed =
      complexity_estimate("proposed", {{"i_o", double(stages)},
                                       {"M", double(iters)},
                                       {"F", bins},
                                       {"T", frames_per_s},
                                       {"K_N", double(k_n)},
                                       {"K_S", double(k_s)},
                                       {"N", double(window_len)}});
  const OpCount nlms =
      complexity_estimate("nlms", {{"L", 10}, {"f_s", double(rate)}});
  const OpCount mss = complexity_estimate(
      "mss", {{"F", 400}, {"T", 23}, {"N", 400}});

  std::printf("%-10s %18s %18s\n", "method", "mult/s", "add/s");
  for (const OpCount& ops : {proposed, mss, nlms})
    std::printf("%-10s %18.4g %18.4g\n", ops.method.c_str(),
                ops.multiplications_per_second, ops.additions_per_second);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ambient denoising for auscultation recordings"};
  app.require_subcommand(1);

  int rate = 8000;
  app.add_option("--rate", rate, "Working sample rate in Hz")
      ->capture_default_str();

  // denoise
  DenoiseArgs den;
  int stages = den.cfg.incremental_iters;
  CLI::App* denoise = app.add_subcommand("denoise", "Denoise one recording");
  denoise->add_option("--internal", den.internal_path, "Stethoscope WAV")
      ->required();
  denoise->add_option("--external", den.external_path, "Ambient-mic WAV")
      ->required();
  denoise->add_option("--out-signal", den.out_signal, "Biomedical output WAV");
  denoise->add_option("--out-noise", den.out_noise, "Noise output WAV");
  denoise->add_option("--reference", den.reference_path,
                      "Clean reference WAV used to pick the median run");
  denoise->add_option("--kn", den.cfg.noise_rank, "Noise basis rank K_N")
      ->capture_default_str();
  denoise->add_option("--ks", den.cfg.biomedical_rank, "Biomedical rank K_S")
      ->capture_default_str();
  denoise->add_option("--lambda", den.cfg.lambda, "External channel weight")
      ->capture_default_str();
  denoise->add_option("--iters", den.cfg.max_iter, "Update sweeps M")
      ->capture_default_str();
  denoise->add_option("--stages", stages, "Incremental stages i_o")
      ->capture_default_str();
  denoise->add_option("--seed", den.cfg.rng_seed, "RNG seed")
      ->capture_default_str();
  denoise->add_option("--runs", den.cfg.num_runs, "Seeded runs")
      ->capture_default_str();

  // mix
  std::string manifest_path;
  CLI::App* mix = app.add_subcommand("mix", "Build mixtures from a manifest");
  mix->add_option("--manifest", manifest_path, "Manifest JSON")->required();

  // eval
  std::string ref_path, noise_path, mixture_path, json_out;
  std::vector<std::string> estimate_paths;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score estimates");
  eval_cmd->add_option("--reference", ref_path, "Clean biomedical WAV")
      ->required();
  eval_cmd->add_option("--noise", noise_path, "Scaled noise WAV")->required();
  eval_cmd->add_option("--mixture", mixture_path, "Internal mixture WAV")
      ->required();
  eval_cmd->add_option("--estimate", estimate_paths, "Estimate WAV (repeatable)")
      ->required();
  eval_cmd->add_option("--json-out", json_out, "Write the report here too");

  // sweep
  std::string plan_path;
  int workers = int(std::thread::hardware_concurrency());
  CLI::App* sweep = app.add_subcommand("sweep", "Run an evaluation grid");
  sweep->add_option("--plan", plan_path, "Sweep plan JSON")->required();
  sweep->add_option("--workers", workers, "Worker pool size")
      ->capture_default_str();

  // complexity
  int c_window = 512, c_kn = 256, c_ks = 16, c_iters = 50, c_stages = 3;
  CLI::App* complexity =
      app.add_subcommand("complexity", "Print operation-count table");
  complexity->add_option("--window", c_window, "Window length N")
      ->capture_default_str();
  complexity->add_option("--kn", c_kn, "K_N")->capture_default_str();
  complexity->add_option("--ks", c_ks, "K_S")->capture_default_str();
  complexity->add_option("--iters", c_iters, "M")->capture_default_str();
  complexity->add_option("--stages", c_stages, "i_o")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadArgs;
  }

  den.cfg.sample_rate = rate;
  den.cfg.incremental_iters = stages;

  try {
    if (*denoise) return run_denoise(den);
    if (*mix) return run_mix(manifest_path, rate);
    if (*eval_cmd)
      return run_eval(ref_path, noise_path, mixture_path, estimate_paths, rate,
                      json_out);
    if (*sweep) return run_sweep(plan_path, workers);
    if (*complexity)
      return run_complexity(c_window, rate, c_kn, c_ks, c_iters, c_stages);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const UnreadableFile& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const UnwritableFile& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const UnsupportedEncoding& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const EmptyAudio& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericError;
  }
  return kExitBadArgs;
}
