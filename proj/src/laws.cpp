#include "frac/laws.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "frac/errors.hpp"
#include "frac/function_spec.hpp"
#include "frac/gamma.hpp"
#include "frac/grid.hpp"

namespace frac {
namespace {

// Exponents closer than this are compared as the same power across two
// computation paths.
constexpr double kExponentPairTolerance = 1e-9;

constexpr std::size_t kPropositionGridDraws = 10;
constexpr std::size_t kPropositionGridIntervals = 256;

constexpr std::array<double, 3> kEnvelopeOffsets = {1e-2, 1e-4, 1e-6};
constexpr double kVanishingBound = 1e-3;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Each draw gets its own engine so a draw depends only on (seed, index).
class DrawSampler {
public:
    DrawSampler(const DrawConfig& cfg, std::size_t index)
        : cfg_(cfg), engine_(splitmix64(cfg.seed ^ splitmix64(index))) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1p-53;
        return lo + (hi - lo) * u;
    }

    int integer(int lo, int hi) {
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double alpha() { return uniform(cfg_.alpha_min, cfg_.alpha_max); }
    double beta() { return uniform(cfg_.beta_min, cfg_.beta_max); }

    // Coefficient bounded away from zero so that no draw degenerates.
    double coefficient() {
        double c = 0.0;
        do {
            c = uniform(cfg_.coeff_min, cfg_.coeff_max);
        } while (std::abs(c) < 0.5);
        return c;
    }

    MonomialSeries series(bool with_constant = false) {
        std::vector<Monomial> terms;
        const int count = integer(cfg_.terms_min, cfg_.terms_max);
        for (int k = 0; k < count; ++k) {
            terms.push_back({coefficient(), uniform(cfg_.exponent_min, cfg_.exponent_max)});
        }
        if (with_constant) {
            terms.push_back({coefficient(), 0.0});
        }
        return MonomialSeries(std::move(terms));
    }

private:
    const DrawConfig& cfg_;
    std::mt19937_64 engine_;
};

class ReportBuilder {
public:
    ReportBuilder(LawId law, const DrawConfig& cfg, double tolerance) {
        report_.law = law;
        report_.config = cfg;
        report_.tolerance = tolerance;
    }

    void add(double residual, double alpha, double beta, const MonomialSeries& y) {
        ++report_.draws;
        // NaN must never pass.
        if (std::isnan(residual)) {
            residual = kViolation;
        }
        report_.max_residual = std::max(report_.max_residual, residual);
        if (!(residual <= report_.tolerance) && report_.witnesses.size() < kMaxWitnesses) {
            report_.witnesses.push_back({alpha, beta, format_function_spec(y), residual});
        }
    }

    // Draw whose operators threw: the law is not verified on it.
    void add_failure(double alpha, double beta, const MonomialSeries& y) {
        add(kViolation, alpha, beta, y);
    }

    GridCheck& grid() {
        if (!report_.grid) {
            report_.grid.emplace();
        }
        return *report_.grid;
    }

    void add_grid(double residual, double alpha, double beta, const MonomialSeries& y) {
        GridCheck& g = grid();
        ++g.draws;
        if (std::isnan(residual)) {
            residual = kViolation;
        }
        g.max_residual = std::max(g.max_residual, residual);
        if (!(residual <= g.tolerance)) {
            g.pass = false;
            if (report_.witnesses.size() < kMaxWitnesses) {
                report_.witnesses.push_back({alpha, beta, format_function_spec(y), residual});
            }
        }
    }

    LawReport finish() {
        report_.pass = report_.max_residual <= report_.tolerance &&
                       (!report_.grid || report_.grid->pass);
        return std::move(report_);
    }

private:
    LawReport report_;
};

template <typename Fn>
void guarded(ReportBuilder& out, double alpha, double beta, const MonomialSeries& y, Fn&& fn) {
    try {
        out.add(fn(), alpha, beta, y);
    } catch (const Error&) {
        out.add_failure(alpha, beta, y);
    }
}

// Grid Hilfer derivative against the exact RL derivative, relative to the
// largest exact value over the interior window.
double grid_proposition_residual(const MonomialSeries& y, const HilferSpec& spec) {
    const GridFunction samples = sample(y, 1.0, kPropositionGridIntervals);
    const GridFunction approx = hilfer_derivative_grid(samples, spec);
    const MonomialSeries exact = frac_derivative_rl(y, FracOrder(spec.alpha()));
    const double window_start = y.base() + 0.1;
    double max_error = 0.0;
    double max_exact = 0.0;
    for (std::size_t j = 0; j <= approx.intervals(); ++j) {
        const double t = approx.node(j);
        if (t < window_start || !approx.reliable(j)) {
            continue;
        }
        const double reference = evaluate(exact, t);
        max_error = std::max(max_error, std::abs(approx[j] - reference));
        max_exact = std::max(max_exact, std::abs(reference));
    }
    return max_exact > 0.0 ? max_error / max_exact : max_error;
}

}  // namespace

std::string_view law_name(LawId law) {
    switch (law) {
        case LawId::kCom: return "com";
        case LawId::kCom1: return "com1";
        case LawId::kCom2: return "com2";
        case LawId::kProposition: return "proposition";
        case LawId::kProofChain: return "proof-chain";
        case LawId::kCaputoEndpoint: return "caputo-endpoint";
    }
    return "unknown";
}

std::optional<LawId> parse_law(std::string_view name) {
    for (LawId law : all_laws()) {
        if (law_name(law) == name) {
            return law;
        }
    }
    return std::nullopt;
}

const std::vector<LawId>& all_laws() {
    static const std::vector<LawId> laws = {LawId::kCom,         LawId::kCom1,
                                            LawId::kCom2,        LawId::kProposition,
                                            LawId::kProofChain,  LawId::kCaputoEndpoint};
    return laws;
}

void DrawConfig::validate() const {
    if (draws == 0) {
        throw DomainError("draw count must be >= 1");
    }
    if (!(exponent_min >= 0.0 && exponent_min <= exponent_max)) {
        throw DomainError("exponent range must satisfy 0 <= min <= max");
    }
    if (!(coeff_min < coeff_max) || std::max(std::abs(coeff_min), std::abs(coeff_max)) < 0.5) {
        throw DomainError("coefficient range must contain values with |c| >= 0.5");
    }
    if (terms_min < 1 || terms_min > terms_max) {
        throw DomainError("term count range must satisfy 1 <= min <= max");
    }
    if (!(alpha_min > 0.0 && alpha_min <= alpha_max && alpha_max < 1.0)) {
        throw DomainError("alpha range must lie in (0, 1)");
    }
    if (!(beta_min >= 0.0 && beta_min <= beta_max && beta_max < 1.0)) {
        throw DomainError("beta range must lie in [0, 1)");
    }
}

double series_residual(const MonomialSeries& lhs, const MonomialSeries& rhs) {
    const auto l = lhs.terms();
    const auto r = rhs.terms();
    double scale = 0.0;
    for (const Monomial& m : l) scale = std::max(scale, std::abs(m.coeff));
    for (const Monomial& m : r) scale = std::max(scale, std::abs(m.coeff));
    if (scale == 0.0) {
        return 0.0;
    }
    const double floor = kCoefficientDropRatio * scale;
    auto relative = [floor](double x, double y) {
        return std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor});
    };

    double worst = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < l.size() || j < r.size()) {
        if (i < l.size() && j < r.size() &&
            std::abs(l[i].exponent - r[j].exponent) <= kExponentPairTolerance) {
            worst = std::max(worst, relative(l[i].coeff, r[j].coeff));
            ++i;
            ++j;
        } else if (j == r.size() || (i < l.size() && l[i].exponent < r[j].exponent)) {
            worst = std::max(worst, relative(l[i].coeff, 0.0));
            ++i;
        } else {
            worst = std::max(worst, relative(0.0, r[j].coeff));
            ++j;
        }
    }
    return worst;
}

double initial_value_envelope_excess(const MonomialSeries& y, double alpha) {
    const MonomialSeries integral = frac_integral(y, FracOrder(alpha));
    double coeff_sum = 0.0;
    for (const Monomial& m : y.terms()) {
        coeff_sum += std::abs(m.coeff);
    }
    if (coeff_sum == 0.0) {
        // Zero function: every value must be exactly zero.
        for (double eps : kEnvelopeOffsets) {
            if (evaluate(integral, y.base() + eps) != 0.0) {
                return kViolation;
            }
        }
        return 0.0;
    }
    const double envelope = coeff_sum * reciprocal_gamma(alpha + 1.0);
    double excess = 0.0;
    for (double eps : kEnvelopeOffsets) {
        const double value = evaluate(integral, y.base() + eps);
        const double ratio = std::abs(value) / std::pow(eps, alpha) / envelope;
        excess = std::max(excess, ratio - 1.0);
    }
    return excess;
}

ProofChainTrace trace_proof_chain(const MonomialSeries& y, const HilferSpec& spec) {
    ProofChainTrace trace;
    const double outer = spec.outer();
    const double inner = spec.inner();
    const double gamma_order = spec.gamma_order();
    const FracOrder outer_order(outer);

    trace.order_identity_residual = std::abs((1.0 - inner) - gamma_order);

    trace.steps.push_back(frac_derivative_hilfer(y, spec));
    trace.steps.push_back(frac_integral(frac_derivative_rl(y, FracOrder(1.0 - inner)), outer_order));
    trace.steps.push_back(frac_integral(frac_derivative_rl(y, FracOrder(gamma_order)), outer_order));

    const MonomialSeries rl = frac_derivative_rl(y, FracOrder(spec.alpha()));
    const MonomialSeries correction = boundary_term(y, outer, gamma_order, 1);
    trace.steps.push_back(rl - correction);
    trace.steps.push_back(rl);

    for (const Monomial& m : correction.terms()) {
        trace.boundary_magnitude = std::max(trace.boundary_magnitude, std::abs(m.coeff));
    }
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        for (std::size_t k = i + 1; k < trace.steps.size(); ++k) {
            trace.max_step_residual =
                std::max(trace.max_step_residual, series_residual(trace.steps[i], trace.steps[k]));
        }
    }
    return trace;
}

LawReport check_com(const DrawConfig& cfg) {
    cfg.validate();
    ReportBuilder out(LawId::kCom, cfg, kExactTolerance);
    for (std::size_t i = 0; i < cfg.draws; ++i) {
        DrawSampler draw(cfg, i);
        const MonomialSeries y = draw.series();
        const double alpha = draw.alpha();
        guarded(out, alpha, 0.0, y, [&] {
            double residual = initial_value_envelope_excess(y, alpha);
            const MonomialSeries integral = frac_integral(y, FracOrder(alpha));
            if (std::abs(evaluate(integral, y.base() + kEnvelopeOffsets.back())) > kVanishingBound) {
                residual = std::max(residual, kViolation);
            }
            return residual;
        });
    }
    return out.finish();
}

LawReport check_com1(const DrawConfig& cfg) {
    cfg.validate();
    ReportBuilder out(LawId::kCom1, cfg, kExactTolerance);
    for (std::size_t i = 0; i < cfg.draws; ++i) {
        DrawSampler draw(cfg, i);
        const MonomialSeries y = draw.series();
        const double alpha = draw.alpha();
        // Every tenth draw pins beta to an edge of [0, alpha].
        double beta = draw.uniform(0.0, alpha);
        if (i % 10 == 0) {
            beta = alpha;
        } else if (i % 10 == 1) {
            beta = 0.0;
        }
        guarded(out, alpha, beta, y, [&] {
            const MonomialSeries lhs = frac_derivative_rl(frac_integral(y, FracOrder(beta)),
                                                          FracOrder(alpha));
            const MonomialSeries rhs = frac_derivative_rl(y, FracOrder(alpha - beta));
            return series_residual(lhs, rhs);
        });
    }
    return out.finish();
}

LawReport check_com2(const DrawConfig& cfg) {
    cfg.validate();
    ReportBuilder out(LawId::kCom2, cfg, kExactTolerance);
    for (std::size_t i = 0; i < cfg.draws; ++i) {
        DrawSampler draw(cfg, i);
        // Every tenth draw belongs to the batch with a nonzero correction term:
        // a constant term and derivative order 1, so D^(beta - 1) y = y.
        const bool boundary_batch = i % 10 == 9;
        const MonomialSeries y = draw.series(boundary_batch);
        const double alpha = boundary_batch ? draw.alpha() : draw.beta();
        const double beta = boundary_batch ? 1.0 : draw.beta();
        guarded(out, alpha, beta, y, [&] {
            const MonomialSeries lhs =
                frac_integral(frac_derivative_rl(y, FracOrder(beta)), FracOrder(alpha));
            const MonomialSeries correction = boundary_term(y, alpha, beta, 1);
            const MonomialSeries rhs = rl_operator(y, beta - alpha) - correction;
            double residual = series_residual(lhs, rhs);
            if (boundary_batch && correction.empty()) {
                residual = std::max(residual, kViolation);
            }
            return residual;
        });
    }
    return out.finish();
}

LawReport check_proposition(const DrawConfig& cfg) {
    cfg.validate();
    ReportBuilder out(LawId::kProposition, cfg, kExactTolerance);
    out.grid().tolerance = kGridTolerance;
    out.grid().intervals = kPropositionGridIntervals;
    for (std::size_t i = 0; i < cfg.draws; ++i) {
        DrawSampler draw(cfg, i);
        const MonomialSeries y = draw.series();
        const double alpha = draw.alpha();
        const double beta = i % 10 == 0 ? 0.0 : draw.beta();
        const HilferSpec spec(alpha, beta);
        guarded(out, alpha, beta, y, [&] {
            return series_residual(frac_derivative_hilfer(y, spec),
                                   frac_derivative_rl(y, FracOrder(alpha)));
        });
        if (i < kPropositionGridDraws) {
            try {
                out.add_grid(grid_proposition_residual(y, spec), alpha, beta, y);
            } catch (const Error&) {
                out.add_grid(kViolation, alpha, beta, y);
            }
        }
    }
    return out.finish();
}

LawReport check_proof_chain(const MonomialSeries& y, const HilferSpec& spec) {
    DrawConfig cfg;
    cfg.draws = 1;
    ReportBuilder out(LawId::kProofChain, cfg, kExactTolerance);
    guarded(out, spec.alpha(), spec.beta(), y, [&] {
        const ProofChainTrace trace = trace_proof_chain(y, spec);
        double residual = trace.max_step_residual;
        if (!(trace.order_identity_residual <= kOrderIdentityTolerance)) {
            residual = std::max(residual, kViolation);
        }
        return residual;
    });
    return out.finish();
}

LawReport check_proof_chain(const DrawConfig& cfg) {
    cfg.validate();
    ReportBuilder out(LawId::kProofChain, cfg, kExactTolerance);
    for (std::size_t i = 0; i < cfg.draws; ++i) {
        DrawSampler draw(cfg, i);
        const MonomialSeries y = draw.series();
        const double alpha = draw.alpha();
        const double beta = i % 10 == 0 ? 0.0 : draw.beta();
        const LawReport single = check_proof_chain(y, HilferSpec(alpha, beta));
        out.add(single.max_residual, alpha, beta, y);
    }
    return out.finish();
}

LawReport check_caputo_endpoint(const DrawConfig& cfg) {
    cfg.validate();
    ReportBuilder out(LawId::kCaputoEndpoint, cfg, kExactTolerance);
    for (std::size_t i = 0; i < cfg.draws; ++i) {
        DrawSampler draw(cfg, i);
        // Odd draws carry a constant term, so y(a) != 0 exactly on those.
        const MonomialSeries y = draw.series(i % 2 == 1);
        const double alpha = draw.alpha();
        guarded(out, alpha, 1.0, y, [&] {
            const MonomialSeries hilfer = frac_derivative_hilfer(y, HilferSpec(alpha, 1.0));
            const MonomialSeries rl = frac_derivative_rl(y, FracOrder(alpha));
            const double initial = y.initial_value();
            const MonomialSeries correction(
                {{initial * reciprocal_gamma(1.0 - alpha), -alpha}}, y.base());
            double residual = series_residual(hilfer, rl - correction);
            const bool equals_rl = series_residual(hilfer, rl) <= kExactTolerance;
            if (equals_rl != (initial == 0.0)) {
                residual = std::max(residual, kViolation);
            }
            return residual;
        });
    }
    return out.finish();
}

LawReport run_law(LawId law, const DrawConfig& cfg) {
    switch (law) {
        case LawId::kCom: return check_com(cfg);
        case LawId::kCom1: return check_com1(cfg);
        case LawId::kCom2: return check_com2(cfg);
        case LawId::kProposition: return check_proposition(cfg);
        case LawId::kProofChain: return check_proof_chain(cfg);
        case LawId::kCaputoEndpoint: return check_caputo_endpoint(cfg);
    }
    throw DomainError("unknown law");
}

nlohmann::ordered_json report_to_json(const LawReport& report) {
    using nlohmann::ordered_json;
    const DrawConfig& c = report.config;
    ordered_json doc;
    doc["report_version"] = 1;
    doc["law"] = law_name(report.law);
    doc["seed"] = c.seed;
    doc["draws"] = report.draws;
    doc["parameter_ranges"] = {
        {"exponent", {c.exponent_min, c.exponent_max}},
        {"coefficient", {c.coeff_min, c.coeff_max}},
        {"terms", {c.terms_min, c.terms_max}},
        {"alpha", {c.alpha_min, c.alpha_max}},
        {"beta", {c.beta_min, c.beta_max}},
    };
    doc["max_residual"] = report.max_residual;
    doc["tolerance"] = report.tolerance;
    doc["verdict"] = report.pass ? "pass" : "fail";
    ordered_json witnesses = ordered_json::array();
    for (const Witness& w : report.witnesses) {
        witnesses.push_back(
            {{"alpha", w.alpha}, {"beta", w.beta}, {"series", w.series}, {"residual", w.residual}});
    }
    doc["witnesses"] = std::move(witnesses);
    if (report.grid) {
        const GridCheck& g = *report.grid;
        doc["grid"] = {{"draws", g.draws},
                       {"grid_size", g.intervals},
                       {"max_residual", g.max_residual},
                       {"tolerance", g.tolerance},
                       {"verdict", g.pass ? "pass" : "fail"}};
    }
    return doc;
}

}  // namespace frac
