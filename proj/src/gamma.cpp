#include "frac/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "frac/errors.hpp"

namespace frac {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// (n-1)! for n = 1..171, i.e. Gamma at the positive integers.
const std::array<double, 172>& factorial_table() {
    static const std::array<double, 172> table = [] {
        std::array<double, 172> t{};
        t[0] = 1.0;
        for (std::size_t i = 1; i < t.size(); ++i) {
            t[i] = t[i - 1] * static_cast<double>(i);
        }
        return t;
    }();
    return table;
}

// Lanczos series for z >= 0.5.
double lanczos(double z) {
    const double x = z - 1.0;
    double sum = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        sum += kLanczosCoeffs[i] / (x + static_cast<double>(i));
    }
    const double t = x + kLanczosG + 0.5;
    // t^(x+0.5) overflows for large x before the exp(-t) factor can compensate.
    const double half_power = std::pow(t, 0.5 * (x + 0.5));
    const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
    return sqrt_two_pi * sum * (half_power * std::exp(-t)) * half_power;
}

// Gamma for z >= 0.5. Large arguments are reduced to [1, 2) and rebuilt by the
// reduction formula; every factor z - k is exact, so only the product rounds.
double gamma_positive(double z) {
    if (z < 2.0) {
        return lanczos(z);
    }
    const double shift = std::floor(z) - 1.0;
    const double r = z - shift;
    double result = lanczos(r);
    for (double i = 0.0; i < shift; i += 1.0) {
        result *= r + i;
    }
    return result;
}

void check_range(double z) {
    if (!std::isfinite(z) || std::abs(z) > kGammaArgLimit) {
        throw OverflowError("gamma argument " + std::to_string(z) + " outside [-170, 170]");
    }
}

}  // namespace

bool is_gamma_pole(double z) noexcept {
    const double r = std::round(z);
    return r <= 0.0 && std::abs(z - r) <= kPoleTolerance;
}

double sin_pi(double z) noexcept {
    const double k = std::round(z);
    const double d = z - k;
    const double s = std::sin(std::numbers::pi * d);
    return std::fmod(k, 2.0) == 0.0 ? s : -s;
}

double gamma(double z) {
    check_range(z);
    if (is_gamma_pole(z)) {
        throw PoleError("gamma has a pole at " + std::to_string(z));
    }
    double result;
    if (z == std::round(z)) {
        result = factorial_table()[static_cast<std::size_t>(z) - 1];
    } else if (z >= 0.5) {
        result = gamma_positive(z);
    } else {
        result = std::numbers::pi / (sin_pi(z) * gamma_positive(1.0 - z));
    }
    if (!std::isfinite(result)) {
        throw OverflowError("gamma(" + std::to_string(z) + ") is not representable");
    }
    return result;
}

double reciprocal_gamma(double z) {
    check_range(z);
    if (is_gamma_pole(z)) {
        return 0.0;
    }
    if (z == std::round(z)) {
        return 1.0 / factorial_table()[static_cast<std::size_t>(z) - 1];
    }
    if (z >= 0.5) {
        return 1.0 / gamma_positive(z);
    }
    // Reflection written for the reciprocal so it stays finite near the poles.
    return sin_pi(z) * gamma_positive(1.0 - z) / std::numbers::pi;
}

}  // namespace frac
