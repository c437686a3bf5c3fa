#include "frac/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "frac/errors.hpp"
#include "frac/gamma.hpp"

namespace frac {
namespace {

constexpr std::size_t kMinIntervals = 4;

// Fraction of b - a excluded from interior error measurements.
constexpr double kInteriorOffset = 0.1;

// Trapezoid weights for output node k:
//   w_0 = (k-1)^(p) - (k - alpha - 1) k^alpha,  p = alpha + 1
//   w_j = (k-j+1)^p - 2 (k-j)^p + (k-j-1)^p,     0 < j < k
//   w_k = 1
// scaled by h^alpha / Gamma(alpha + 2).
std::vector<double> product_trapezoid(std::span<const double> y, double h, double alpha) {
    const std::size_t n = y.size() - 1;
    std::vector<double> pow_p(n + 1);
    std::vector<double> pow_a(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        pow_p[m] = std::pow(static_cast<double>(m), alpha + 1.0);
        pow_a[m] = std::pow(static_cast<double>(m), alpha);
    }
    // Interior weight depends only on the distance d = k - j >= 1.
    std::vector<double> interior(n + 1, 0.0);
    for (std::size_t d = 1; d < n; ++d) {
        interior[d] = pow_p[d + 1] - 2.0 * pow_p[d] + pow_p[d - 1];
    }

    const double scale = std::pow(h, alpha) * reciprocal_gamma(alpha + 2.0);
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        double sum = (pow_p[k - 1] - (kd - alpha - 1.0) * pow_a[k]) * y[0];
        for (std::size_t j = 1; j < k; ++j) {
            sum += interior[k - j] * y[j];
        }
        sum += y[k];
        out[k] = scale * sum;
    }
    return out;
}

// Left rectangle: weight (k-j)^alpha - (k-j-1)^alpha on y_j, j < k, scaled by
// h^alpha / Gamma(alpha + 1).
std::vector<double> product_rectangle(std::span<const double> y, double h, double alpha) {
    const std::size_t n = y.size() - 1;
    std::vector<double> pow_a(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        pow_a[m] = std::pow(static_cast<double>(m), alpha);
    }
    const double scale = std::pow(h, alpha) * reciprocal_gamma(alpha + 1.0);
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            sum += (pow_a[k - j] - pow_a[k - j - 1]) * y[j];
        }
        out[k] = scale * sum;
    }
    return out;
}

// Derivatives of functions with y(a) != 0 blow up like (t - a)^(-order) at a.
void flag_singular_start(GridFunction& out, const GridFunction& y, double inner_order) {
    if (inner_order <= 0.0) {
        return;
    }
    double largest = 0.0;
    for (double v : y.values()) {
        largest = std::max(largest, std::abs(v));
    }
    if (std::abs(y[0]) <= 1e-14 * largest || y[0] == 0.0) {
        return;
    }
    for (std::size_t j = 0; j <= 2 && j <= out.intervals(); ++j) {
        out.mark_unreliable(j);
    }
}

}  // namespace

GridFunction::GridFunction(double a, double b, std::vector<double> values)
    : a_(a), b_(b), values_(std::move(values)), reliable_(values_.size(), 1) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        throw DomainError("grid interval requires finite a < b");
    }
    if (values_.size() < kMinIntervals + 1) {
        throw DomainError("grid needs at least " + std::to_string(kMinIntervals) + " intervals");
    }
    if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
        throw DomainError("grid values must be finite");
    }
}

double GridFunction::node(std::size_t j) const noexcept {
    // Hit b exactly on the last node.
    if (j == intervals()) {
        return b_;
    }
    return a_ + static_cast<double>(j) * step();
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
    GridFunction out(a_, b_, std::move(values));
    if (out.values_.size() != values_.size()) {
        throw DomainError("grid size mismatch");
    }
    out.reliable_ = reliable_;
    return out;
}

GridFunction sample(const MonomialSeries& y, double b, std::size_t intervals) {
    if (intervals < kMinIntervals) {
        throw DomainError("grid needs at least " + std::to_string(kMinIntervals) + " intervals");
    }
    const double a = y.base();
    const double h = (b - a) / static_cast<double>(intervals);
    std::vector<double> values(intervals + 1);
    for (std::size_t j = 0; j <= intervals; ++j) {
        const double t = j == intervals ? b : a + static_cast<double>(j) * h;
        values[j] = evaluate(y, t);
    }
    return GridFunction(a, b, std::move(values));
}

GridFunction rl_integral_grid(const GridFunction& y, double alpha, SchemeConfig cfg) {
    if (!std::isfinite(alpha) || alpha < 0.0) {
        throw DomainError("integral order must be >= 0, got " + std::to_string(alpha));
    }
    if (alpha == 0.0) {
        return y;
    }
    const double h = y.step();
    switch (cfg.scheme) {
        case QuadratureScheme::kProductTrapezoid:
            return y.with_values(product_trapezoid(y.values(), h, alpha));
        case QuadratureScheme::kProductRectangle:
            return y.with_values(product_rectangle(y.values(), h, alpha));
    }
    throw DomainError("unknown quadrature scheme");
}

GridFunction classical_derivative_grid(const GridFunction& y) {
    const std::size_t n = y.intervals();
    const double inv_2h = 0.5 / y.step();
    std::vector<double> d(n + 1);
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) * inv_2h;
    for (std::size_t j = 1; j < n; ++j) {
        d[j] = (y[j + 1] - y[j - 1]) * inv_2h;
    }
    d[n] = (3.0 * y[n] - 4.0 * y[n - 1] + y[n - 2]) * inv_2h;
    GridFunction out = y.with_values(std::move(d));
    out.mark_unreliable(0);
    return out;
}

GridFunction rl_derivative_grid(const GridFunction& y, FracOrder order, SchemeConfig cfg) {
    const double alpha = order.alpha();
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("grid derivative order must lie in (0, 1]");
    }
    GridFunction out = classical_derivative_grid(rl_integral_grid(y, 1.0 - alpha, cfg));
    flag_singular_start(out, y, 1.0 - alpha);
    return out;
}

GridFunction hilfer_derivative_grid(const GridFunction& y, const HilferSpec& spec,
                                    SchemeConfig cfg) {
    GridFunction differentiated = classical_derivative_grid(rl_integral_grid(y, spec.inner(), cfg));
    GridFunction out = rl_integral_grid(differentiated, spec.outer(), cfg);
    flag_singular_start(out, y, spec.inner());
    return out;
}

MonomialSeries apply_exact(const MonomialSeries& y, const OperatorParams& params) {
    switch (params.kind) {
        case OperatorKind::kIntegral:
            return frac_integral(y, FracOrder(params.alpha));
        case OperatorKind::kRiemannLiouville:
            return frac_derivative_rl(y, FracOrder(params.alpha));
        case OperatorKind::kCaputo:
            return frac_derivative_caputo(y, FracOrder(params.alpha));
        case OperatorKind::kHilfer:
            return frac_derivative_hilfer(y, HilferSpec(params.alpha, params.beta));
    }
    throw DomainError("unknown operator");
}

GridFunction apply_grid(const GridFunction& y, const OperatorParams& params, SchemeConfig cfg) {
    switch (params.kind) {
        case OperatorKind::kIntegral:
            return rl_integral_grid(y, params.alpha, cfg);
        case OperatorKind::kRiemannLiouville:
            return rl_derivative_grid(y, FracOrder(params.alpha), cfg);
        case OperatorKind::kCaputo:
            if (!(params.alpha > 0.0 && params.alpha < 1.0)) {
                throw DomainError("Caputo order must lie in (0, 1)");
            }
            return hilfer_derivative_grid(y, HilferSpec(params.alpha, 1.0), cfg);
        case OperatorKind::kHilfer:
            return hilfer_derivative_grid(y, HilferSpec(params.alpha, params.beta), cfg);
    }
    throw DomainError("unknown operator");
}

std::vector<ConvergenceRow> convergence_study(const MonomialSeries& y, const OperatorParams& params,
                                              std::span<const std::size_t> grid_sizes, double b,
                                              SchemeConfig cfg) {
    for (std::size_t i = 0; i < grid_sizes.size(); ++i) {
        if (grid_sizes[i] < 8 || (i > 0 && grid_sizes[i] <= grid_sizes[i - 1])) {
            throw DomainError("grid sizes must be strictly increasing and >= 8");
        }
    }
    const MonomialSeries exact = apply_exact(y, params);
    const double a = y.base();
    const double window_start = a + kInteriorOffset * (b - a);

    std::vector<ConvergenceRow> rows;
    rows.reserve(grid_sizes.size());
    for (std::size_t n : grid_sizes) {
        const GridFunction approx = apply_grid(sample(y, b, n), params, cfg);
        double max_error = 0.0;
        double max_exact = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            const double t = approx.node(j);
            if (t < window_start || !approx.reliable(j)) {
                continue;
            }
            const double reference = evaluate(exact, t);
            max_error = std::max(max_error, std::abs(approx[j] - reference));
            max_exact = std::max(max_exact, std::abs(reference));
        }
        ConvergenceRow row;
        row.intervals = n;
        row.max_error = max_error;
        row.relative_error = max_exact > 0.0 ? max_error / max_exact : max_error;
        row.order = std::numeric_limits<double>::quiet_NaN();
        if (!rows.empty()) {
            const ConvergenceRow& prev = rows.back();
            row.order = std::log(prev.max_error / max_error) /
                        std::log(static_cast<double>(n) / static_cast<double>(prev.intervals));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace frac
