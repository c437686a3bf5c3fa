#pragma once

namespace frac {

/// Tolerance used to decide that a real argument sits on a pole of Gamma.
inline constexpr double kPoleTolerance = 1e-12;

/// Largest |z| accepted by gamma() and reciprocal_gamma().
inline constexpr double kGammaArgLimit = 170.0;

/// True when z is within kPoleTolerance of a non-positive integer.
bool is_gamma_pole(double z) noexcept;

/// Euler Gamma function on the real line.
///
/// Positive integers come from an exact factorial table; other arguments use a
/// Lanczos approximation (g = 7, 9 terms), with the reflection identity for
/// z < 0.5.
///
/// Throws PoleError at non-positive integers and OverflowError when |z| exceeds
/// kGammaArgLimit or the result is not representable.
double gamma(double z);

/// 1/Gamma(z); exactly zero on the poles of Gamma. Throws OverflowError for
/// |z| > kGammaArgLimit.
double reciprocal_gamma(double z);

/// sin(pi z) with exact argument reduction, so that the result is accurate
/// near integers.
double sin_pi(double z) noexcept;

}  // namespace frac
