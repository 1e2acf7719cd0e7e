// errors.hpp — typed error conditions raised across the library
#pragma once

#include <stdexcept>
#include <string>

namespace dqt {

// Base class of every library error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// pauli
struct WindowTooSmall : Error { using Error::Error; };
struct WindowTooLarge : Error { using Error::Error; };

// ksector
struct TruncationTooLarge : Error { using Error::Error; };
struct IdentityString : Error { using Error::Error; };

// generator
struct ChargeNotConserved : Error { using Error::Error; };

// hydro
struct DegenerateKernel : Error { using Error::Error; };
struct BallisticTransport : Error { using Error::Error; };
struct SolverDivergence : Error { using Error::Error; };
struct NonDecayingIntegrand : Error { using Error::Error; };
struct ModeTrackingLost : Error { using Error::Error; };
struct GapClosure : Error { using Error::Error; };

// chainsim
struct RingTooLarge : Error { using Error::Error; };
struct StepSizeUnderflow : Error { using Error::Error; };
struct HorizonExceeded : Error { using Error::Error; };
struct ConeNotResolved : Error { using Error::Error; };

// config / reporting
struct ConfigError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct InvalidBoundInput : Error { using Error::Error; };

}  // namespace dqt
