#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frac/monomial.hpp"

namespace frac {

/// Samples of a function at the uniform nodes t_j = a + j h, h = (b - a) / N.
///
/// Each node carries a reliability flag. Nodes are flagged unreliable where an
/// operator's discrete value is an endpoint artifact rather than an
/// approximation of the continuous result (t = a after differentiation, and
/// the first 2h when the exact result is singular at a).
class GridFunction {
public:
    /// Throws DomainError unless b > a, values.size() >= 5 and all values are finite.
    GridFunction(double a, double b, std::vector<double> values);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    /// Number of intervals N.
    std::size_t intervals() const noexcept { return values_.size() - 1; }
    double step() const noexcept { return (b_ - a_) / static_cast<double>(intervals()); }
    double node(std::size_t j) const noexcept;

    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }

    bool reliable(std::size_t j) const noexcept { return reliable_[j] != 0; }
    std::span<const unsigned char> reliability() const noexcept { return reliable_; }
    void mark_unreliable(std::size_t j) { reliable_.at(j) = 0; }

    /// Same grid and flags, new values.
    GridFunction with_values(std::vector<double> values) const;

    friend bool operator==(const GridFunction&, const GridFunction&) = default;

private:
    double a_;
    double b_;
    std::vector<double> values_;
    std::vector<unsigned char> reliable_;
};

/// Samples y on N + 1 uniform nodes of [a, b]. Requires y.base() == a.
GridFunction sample(const MonomialSeries& y, double b, std::size_t intervals);

enum class QuadratureScheme {
    kProductTrapezoid,  ///< exact on the piecewise-linear interpolant, order 2 - alpha
    kProductRectangle,  ///< left-point piecewise-constant interpolant, order 1
};

struct SchemeConfig {
    QuadratureScheme scheme = QuadratureScheme::kProductTrapezoid;
};

/// Fractional integral of order alpha >= 0 (alpha = 0 returns y).
GridFunction rl_integral_grid(const GridFunction& y, double alpha, SchemeConfig cfg = {});

/// First derivative: central differences inside, three-point one-sided stencils
/// at both ends. Node 0 is flagged unreliable.
GridFunction classical_derivative_grid(const GridFunction& y);

/// Riemann-Liouville derivative D I^(1 - alpha) y for alpha in (0, 1].
GridFunction rl_derivative_grid(const GridFunction& y, FracOrder order, SchemeConfig cfg = {});

/// Hilfer derivative, the literal composition I^outer D I^inner y.
GridFunction hilfer_derivative_grid(const GridFunction& y, const HilferSpec& spec,
                                    SchemeConfig cfg = {});

enum class OperatorKind { kIntegral, kRiemannLiouville, kCaputo, kHilfer };

struct OperatorParams {
    OperatorKind kind = OperatorKind::kIntegral;
    double alpha = 0.5;
    double beta = 0.0;  // Hilfer only
};

/// Exact (monomial backend) result of the selected operator.
MonomialSeries apply_exact(const MonomialSeries& y, const OperatorParams& params);

/// Grid result of the selected operator.
GridFunction apply_grid(const GridFunction& y, const OperatorParams& params, SchemeConfig cfg = {});

struct ConvergenceRow {
    std::size_t intervals = 0;
    double max_error = 0.0;       ///< max |grid - exact| over the interior window
    double relative_error = 0.0;  ///< max_error / max |exact| over the same window
    double order = 0.0;           ///< log(e_prev / e) / log(N / N_prev); NaN on the first row
};

/// Compares grid against exact results on [a + 0.1 (b - a), b] for each grid size.
/// Grid sizes must be strictly increasing and >= 8.
std::vector<ConvergenceRow> convergence_study(const MonomialSeries& y, const OperatorParams& params,
                                              std::span<const std::size_t> grid_sizes,
                                              double b = 1.0, SchemeConfig cfg = {});

}  // namespace frac
