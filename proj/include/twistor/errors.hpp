#pragma once

#include <stdexcept>
#include <string>

namespace twistor {

/// Base class for all failures raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };

/// Gram-Schmidt hit a subspace whose induced form is (numerically) degenerate,
/// or the input vectors were linearly dependent.
struct DegenerateSubspace : Error { using Error::Error; };

/// Iterative eigen-solver did not converge within its iteration cap.
struct ConvergenceFailure : Error { using Error::Error; };

struct NotSymmetric : Error { using Error::Error; };

/// A kernel/solution space did not have the dimension required by theory.
struct RankFailure : Error { using Error::Error; };

/// An eigenvalue fell outside the admissible finite set.
struct SpectrumViolation : Error { using Error::Error; };

struct DimensionTooSmall : Error { using Error::Error; };

/// grad f is not the metric raise of df.
struct InconsistentGradient : Error { using Error::Error; };

/// A finite-difference curve left the region where the chart is valid
/// (e.g. crossed the null cone of an indefinite ambient metric).
struct CurveLeavesChart : Error { using Error::Error; };

/// Rotation between two unit vectors is undefined: 1 + <u,v> is too small.
struct AntipodalOrDegenerate : Error { using Error::Error; };

/// A proposed fibre value is not an isometric complex structure of the
/// tangent space it is attached to.
struct IncompatibleJ : Error { using Error::Error; };

struct NotTangent : Error { using Error::Error; };

struct NotIsometry : Error { using Error::Error; };

struct NotOnSphere : Error { using Error::Error; };

/// Least-squares fit had no usable signal in the sampled values.
struct DegenerateSamples : Error { using Error::Error; };

/// CLI-level configuration problems (exit code 2).
struct ConfigError : Error { using Error::Error; };
struct UnknownSuite : ConfigError { using ConfigError::ConfigError; };
struct UnsupportedDimension : ConfigError { using ConfigError::ConfigError; };

}  // namespace twistor
