#pragma once

#include <span>
#include <vector>

namespace frac {

/// Exponents closer than this are treated as the same power.
inline constexpr double kExponentMergeTolerance = 1e-12;

/// Coefficients below this fraction of the largest one are dropped.
inline constexpr double kCoefficientDropRatio = 1e-14;

/// One term c * (t - a)^mu.
struct Monomial {
    double coeff = 0.0;
    double exponent = 0.0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// A positive real order alpha together with the integer n, n - 1 < alpha <= n.
///
/// Order zero is admitted (n = 0) and means the identity operator.
class FracOrder {
public:
    /// Throws DomainError for negative or non-finite alpha.
    explicit FracOrder(double alpha);

    double alpha() const noexcept { return alpha_; }
    int n() const noexcept { return n_; }

private:
    double alpha_;
    int n_;
};

/// Order alpha in (0, 1] and type beta in [0, 1] of a Hilfer derivative.
class HilferSpec {
public:
    /// Throws DomainError when alpha or beta fall outside their ranges.
    HilferSpec(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    /// Order of the fractional integral applied after differentiating, beta (1 - alpha).
    double outer() const noexcept { return outer_; }
    /// Order of the fractional integral applied first, (1 - beta) (1 - alpha).
    double inner() const noexcept { return inner_; }
    /// alpha + beta - alpha beta.
    double gamma_order() const noexcept { return gamma_order_; }

private:
    double alpha_;
    double beta_;
    double outer_;
    double inner_;
    double gamma_order_;
};

/// Finite sum of shifted powers  sum_k c_k (t - a)^{mu_k}.
///
/// Always held in canonical form: exponents strictly increasing, exponents
/// within kExponentMergeTolerance merged, negligible coefficients removed.
/// An empty series is the zero function.
class MonomialSeries {
public:
    MonomialSeries() = default;
    explicit MonomialSeries(std::vector<Monomial> terms, double base = 0.0);

    double base() const noexcept { return base_; }
    std::span<const Monomial> terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Every exponent >= 0, i.e. the series is continuous on [a, b].
    bool is_continuous() const noexcept;
    /// Smallest exponent; the series must not be empty.
    double min_exponent() const;

    /// y(a) for a continuous series (the t^0 coefficient). Throws
    /// SingularityError if a negative power survives.
    double initial_value() const;

    friend MonomialSeries operator+(const MonomialSeries& lhs, const MonomialSeries& rhs);
    friend MonomialSeries operator-(const MonomialSeries& lhs, const MonomialSeries& rhs);
    friend MonomialSeries operator*(double scale, const MonomialSeries& y);

    friend bool operator==(const MonomialSeries&, const MonomialSeries&) = default;

private:
    double base_ = 0.0;
    std::vector<Monomial> terms_;
};

/// Riemann-Liouville integral of the given order; order 0 is the identity.
/// Throws DomainError when some exponent is <= -1.
MonomialSeries frac_integral(const MonomialSeries& y, FracOrder order);

/// n-th classical derivative. Terms with integer exponent in [0, n - 1] vanish.
MonomialSeries classical_derivative(const MonomialSeries& y, int n);

/// Riemann-Liouville derivative from the closed form
/// c (t-a)^mu -> c Gamma(mu + 1) / Gamma(mu - alpha + 1) (t-a)^(mu - alpha).
MonomialSeries frac_derivative_rl(const MonomialSeries& y, FracOrder order);

/// Riemann-Liouville derivative computed as D^n I^(n - alpha) y.
MonomialSeries frac_derivative_rl_composed(const MonomialSeries& y, FracOrder order);

/// Signed-order Riemann-Liouville operator: D^s for s >= 0, I^(-s) for s < 0.
MonomialSeries rl_operator(const MonomialSeries& y, double order);

/// Hilfer derivative, evaluated literally as I^outer D I^inner y.
/// Throws DomainError for discontinuous input.
MonomialSeries frac_derivative_hilfer(const MonomialSeries& y, const HilferSpec& spec);

/// Caputo derivative of order alpha in (0, 1): the Hilfer derivative of type 1.
MonomialSeries frac_derivative_caputo(const MonomialSeries& y, FracOrder order);

/// Point value of the series. Throws SingularityError at t = a when a
/// negative power is present and DomainError for t < a.
double evaluate(const MonomialSeries& y, double t);

/// j-th initial-value correction of the I^alpha D^beta composition law:
///   [D^(beta - j) y](a) * (t - a)^(alpha - j) / Gamma(alpha - j + 1),
/// where a negative derivative order means the matching integral.
MonomialSeries boundary_term(const MonomialSeries& y, double alpha, double beta, int j);

namespace testing {

/// Scales the Gamma ratio used by frac_integral (or, for the RL closed form,
/// by frac_derivative_rl) by (1 + relative) on the calling thread while alive.
/// Used to show that the law checks are not vacuous.
class ScopedRatioPerturbation {
public:
    enum class Site { kIntegral, kDerivative };

    ScopedRatioPerturbation(Site site, double relative);
    ~ScopedRatioPerturbation();

    ScopedRatioPerturbation(const ScopedRatioPerturbation&) = delete;
    ScopedRatioPerturbation& operator=(const ScopedRatioPerturbation&) = delete;

private:
    Site site_;
    double previous_;
};

}  // namespace testing

}  // namespace frac
