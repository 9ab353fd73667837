// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace auscult {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// audio_io
struct UnreadableFile : Error { using Error::Error; };
struct UnwritableFile : Error { using Error::Error; };
struct UnsupportedEncoding : Error { using Error::Error; };
struct EmptyAudio : Error { using Error::Error; };
struct RateMismatch : Error { using Error::Error; };

// spectral
struct SignalTooShort : Error { using Error::Error; };
struct BadOverlap : Error { using Error::Error; };
struct InconsistentMetadata : Error { using Error::Error; };
struct AllZeroSpectrogram : Error { using Error::Error; };
struct NonPositiveFactor : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };

// baselines / mixing
struct LengthMismatch : Error { using Error::Error; };
struct ZeroEnergyInput : Error { using Error::Error; };
struct MissingImpulseResponse : Error { using Error::Error; };

// eval
struct ZeroReference : Error { using Error::Error; };
struct DegenerateProjection : Error { using Error::Error; };
struct MissingParameter : Error { using Error::Error; };

}  // namespace auscult
