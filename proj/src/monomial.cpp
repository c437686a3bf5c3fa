#include "frac/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "frac/errors.hpp"
#include "frac/gamma.hpp"

namespace frac {
namespace {

thread_local double integral_ratio_scale = 1.0;
thread_local double derivative_ratio_scale = 1.0;

bool near_integer(double x, double* rounded) {
    const double r = std::round(x);
    *rounded = r;
    return std::abs(x - r) <= kExponentMergeTolerance;
}

std::vector<Monomial> canonicalize(std::vector<Monomial> terms) {
    for (const Monomial& m : terms) {
        if (!std::isfinite(m.coeff) || !std::isfinite(m.exponent)) {
            throw DomainError("monomial with non-finite coefficient or exponent");
        }
    }
    std::erase_if(terms, [](const Monomial& m) { return m.coeff == 0.0; });
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Monomial& l, const Monomial& r) { return l.exponent < r.exponent; });

    std::vector<Monomial> merged;
    merged.reserve(terms.size());
    double cluster_start = 0.0;
    for (const Monomial& m : terms) {
        if (!merged.empty() && m.exponent - cluster_start <= kExponentMergeTolerance) {
            merged.back().coeff += m.coeff;
        } else {
            merged.push_back(m);
            cluster_start = m.exponent;
        }
    }

    double largest = 0.0;
    for (const Monomial& m : merged) {
        largest = std::max(largest, std::abs(m.coeff));
    }
    const double threshold = kCoefficientDropRatio * (largest > 0.0 ? largest : 1.0);
    std::erase_if(merged, [&](const Monomial& m) {
        return m.coeff == 0.0 || std::abs(m.coeff) <= threshold;
    });
    return merged;
}

void require_integrable(const MonomialSeries& y, const char* op) {
    for (const Monomial& m : y.terms()) {
        if (m.exponent <= -1.0) {
            throw DomainError(std::string(op) + ": exponent " + std::to_string(m.exponent) +
                              " is not integrable at the base point");
        }
    }
}

void require_continuous(const MonomialSeries& y, const char* op) {
    if (!y.is_continuous()) {
        throw DomainError(std::string(op) + ": input must be continuous (all exponents >= 0)");
    }
}

void require_same_base(const MonomialSeries& lhs, const MonomialSeries& rhs) {
    if (lhs.base() != rhs.base()) {
        throw DomainError("series with different base points cannot be combined");
    }
}

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha), n_(0) {
    if (!std::isfinite(alpha) || alpha < 0.0) {
        throw DomainError("fractional order must be finite and >= 0, got " + std::to_string(alpha));
    }
    n_ = static_cast<int>(std::ceil(alpha));
}

HilferSpec::HilferSpec(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("Hilfer order must lie in (0, 1], got " + std::to_string(alpha));
    }
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError("Hilfer type must lie in [0, 1], got " + std::to_string(beta));
    }
    outer_ = beta * (1.0 - alpha);
    inner_ = (1.0 - beta) * (1.0 - alpha);
    gamma_order_ = alpha + beta - alpha * beta;
}

MonomialSeries::MonomialSeries(std::vector<Monomial> terms, double base)
    : base_(base), terms_(canonicalize(std::move(terms))) {
    if (!std::isfinite(base)) {
        throw DomainError("series base point must be finite");
    }
}

bool MonomialSeries::is_continuous() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Monomial& m) { return m.exponent >= 0.0; });
}

double MonomialSeries::min_exponent() const {
    if (terms_.empty()) {
        throw DomainError("zero series has no exponents");
    }
    return terms_.front().exponent;
}

double MonomialSeries::initial_value() const {
    double value = 0.0;
    for (const Monomial& m : terms_) {
        if (m.exponent < -kExponentMergeTolerance) {
            throw SingularityError("series is unbounded at its base point (exponent " +
                                   std::to_string(m.exponent) + ")");
        }
        if (m.exponent <= kExponentMergeTolerance) {
            value += m.coeff;
        }
    }
    return value;
}

MonomialSeries operator+(const MonomialSeries& lhs, const MonomialSeries& rhs) {
    require_same_base(lhs, rhs);
    std::vector<Monomial> terms(lhs.terms_.begin(), lhs.terms_.end());
    terms.insert(terms.end(), rhs.terms_.begin(), rhs.terms_.end());
    return MonomialSeries(std::move(terms), lhs.base_);
}

MonomialSeries operator-(const MonomialSeries& lhs, const MonomialSeries& rhs) {
    return lhs + (-1.0) * rhs;
}

MonomialSeries operator*(double scale, const MonomialSeries& y) {
    std::vector<Monomial> terms(y.terms_.begin(), y.terms_.end());
    for (Monomial& m : terms) {
        m.coeff *= scale;
    }
    return MonomialSeries(std::move(terms), y.base_);
}

MonomialSeries frac_integral(const MonomialSeries& y, FracOrder order) {
    const double alpha = order.alpha();
    if (alpha == 0.0) {
        return y;
    }
    require_integrable(y, "frac_integral");
    std::vector<Monomial> out;
    out.reserve(y.size());
    for (const Monomial& m : y.terms()) {
        const double ratio = gamma(m.exponent + 1.0) * reciprocal_gamma(m.exponent + alpha + 1.0);
        out.push_back({m.coeff * ratio * integral_ratio_scale, m.exponent + alpha});
    }
    return MonomialSeries(std::move(out), y.base());
}

MonomialSeries classical_derivative(const MonomialSeries& y, int n) {
    if (n < 0) {
        throw DomainError("derivative order must be >= 0");
    }
    if (n == 0) {
        return y;
    }
    std::vector<Monomial> out;
    out.reserve(y.size());
    for (const Monomial& m : y.terms()) {
        double rounded = 0.0;
        if (near_integer(m.exponent, &rounded) && rounded >= 0.0 && rounded <= n - 1) {
            continue;
        }
        double factor = 1.0;
        for (int k = 0; k < n; ++k) {
            factor *= m.exponent - k;
        }
        out.push_back({m.coeff * factor, m.exponent - n});
    }
    return MonomialSeries(std::move(out), y.base());
}

MonomialSeries frac_derivative_rl(const MonomialSeries& y, FracOrder order) {
    const double alpha = order.alpha();
    if (alpha == 0.0) {
        return y;
    }
    require_integrable(y, "frac_derivative_rl");
    std::vector<Monomial> out;
    out.reserve(y.size());
    for (const Monomial& m : y.terms()) {
        const double ratio = gamma(m.exponent + 1.0) * reciprocal_gamma(m.exponent - alpha + 1.0);
        out.push_back({m.coeff * ratio * derivative_ratio_scale, m.exponent - alpha});
    }
    return MonomialSeries(std::move(out), y.base());
}

MonomialSeries frac_derivative_rl_composed(const MonomialSeries& y, FracOrder order) {
    const int n = order.n();
    return classical_derivative(frac_integral(y, FracOrder(n - order.alpha())), n);
}

MonomialSeries rl_operator(const MonomialSeries& y, double order) {
    if (order >= 0.0) {
        return frac_derivative_rl(y, FracOrder(order));
    }
    return frac_integral(y, FracOrder(-order));
}

MonomialSeries frac_derivative_hilfer(const MonomialSeries& y, const HilferSpec& spec) {
    require_continuous(y, "frac_derivative_hilfer");
    const MonomialSeries inner = frac_integral(y, FracOrder(spec.inner()));
    const MonomialSeries differentiated = classical_derivative(inner, 1);
    return frac_integral(differentiated, FracOrder(spec.outer()));
}

MonomialSeries frac_derivative_caputo(const MonomialSeries& y, FracOrder order) {
    if (!(order.alpha() > 0.0 && order.alpha() < 1.0)) {
        throw DomainError("Caputo order must lie in (0, 1)");
    }
    return frac_derivative_hilfer(y, HilferSpec(order.alpha(), 1.0));
}

double evaluate(const MonomialSeries& y, double t) {
    const double a = y.base();
    if (!(t >= a)) {
        throw DomainError("evaluation point " + std::to_string(t) + " lies left of the base point");
    }
    if (t == a) {
        return y.initial_value();
    }
    const double x = t - a;
    double sum = 0.0;
    for (const Monomial& m : y.terms()) {
        sum += m.coeff * std::pow(x, m.exponent);
    }
    return sum;
}

MonomialSeries boundary_term(const MonomialSeries& y, double alpha, double beta, int j) {
    if (j < 1) {
        throw DomainError("boundary term index must be >= 1");
    }
    if (!(alpha >= 0.0) || !(beta >= 0.0)) {
        throw DomainError("boundary term orders must be >= 0");
    }
    const double initial = rl_operator(y, beta - j).initial_value();
    const double coeff = initial * reciprocal_gamma(alpha - j + 1.0);
    if (coeff == 0.0) {
        return MonomialSeries({}, y.base());
    }
    return MonomialSeries({{coeff, alpha - j}}, y.base());
}

namespace testing {

ScopedRatioPerturbation::ScopedRatioPerturbation(Site site, double relative) : site_(site) {
    double& scale = site_ == Site::kIntegral ? integral_ratio_scale : derivative_ratio_scale;
    previous_ = scale;
    scale = previous_ * (1.0 + relative);
}

ScopedRatioPerturbation::~ScopedRatioPerturbation() {
    (site_ == Site::kIntegral ? integral_ratio_scale : derivative_ratio_scale) = previous_;
}

}  // namespace testing

}  // namespace frac
