#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "frac/monomial.hpp"

namespace frac {

enum class LawId { kCom, kCom1, kCom2, kProposition, kProofChain, kCaputoEndpoint };

std::string_view law_name(LawId law);
/// Accepts com, com1, com2, proposition, proof-chain, caputo-endpoint.
std::optional<LawId> parse_law(std::string_view name);
/// All laws in report order.
const std::vector<LawId>& all_laws();

/// Random draw parameters. Every draw satisfies the continuity and
/// integrability hypotheses of the laws by construction (exponents >= 1).
struct DrawConfig {
    std::uint64_t seed = 42;
    std::size_t draws = 1000;
    double exponent_min = 1.0;
    double exponent_max = 4.0;
    double coeff_min = -10.0;
    double coeff_max = 10.0;
    int terms_min = 1;
    int terms_max = 4;
    double alpha_min = 0.01;
    double alpha_max = 0.99;
    double beta_min = 0.0;
    double beta_max = 0.99;

    /// Throws DomainError for an empty draw count or inverted/out-of-range bounds.
    void validate() const;
};

struct Witness {
    double alpha = 0.0;
    double beta = 0.0;
    std::string series;
    double residual = 0.0;
};

/// Grid-backend cross-check attached to the proposition law.
struct GridCheck {
    std::size_t draws = 0;
    std::size_t intervals = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct LawReport {
    LawId law = LawId::kCom;
    DrawConfig config;
    std::size_t draws = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::vector<Witness> witnesses;  // at most kMaxWitnesses, only on failure
    std::optional<GridCheck> grid;
};

inline constexpr std::size_t kMaxWitnesses = 10;
inline constexpr double kExactTolerance = 1e-10;
inline constexpr double kGridTolerance = 2e-2;
inline constexpr double kOrderIdentityTolerance = 1e-15;
/// Residual recorded when a qualitative condition (not a coefficient match) fails.
inline constexpr double kViolation = 1.0;

/// Coefficient-wise relative distance between two series. Terms are paired by
/// exponent; unpaired terms count with their full relative size.
double series_residual(const MonomialSeries& lhs, const MonomialSeries& rhs);

/// Relative excess of |I^alpha y (a + eps)| over the envelope
/// sum|c_k| eps^alpha / Gamma(alpha + 1), maximised over eps in {1e-2, 1e-4, 1e-6}.
/// Zero when the envelope holds.
double initial_value_envelope_excess(const MonomialSeries& y, double alpha);

/// Every intermediate expression of the Hilfer/RL coincidence argument.
struct ProofChainTrace {
    /// (i) I^outer D I^inner y, (ii) I^outer D^(1 - inner) y, (iii) I^outer D^gamma y,
    /// (iv) D^alpha y minus the initial-value correction, (v) D^alpha y.
    std::vector<MonomialSeries> steps;
    /// |(1 - inner) - (alpha + beta - alpha beta)|
    double order_identity_residual = 0.0;
    /// Largest coefficient of the correction dropped between (iv) and (v).
    double boundary_magnitude = 0.0;
    /// Largest residual over all pairs of steps.
    double max_step_residual = 0.0;
};

ProofChainTrace trace_proof_chain(const MonomialSeries& y, const HilferSpec& spec);

LawReport check_com(const DrawConfig& cfg);
LawReport check_com1(const DrawConfig& cfg);
LawReport check_com2(const DrawConfig& cfg);
LawReport check_proposition(const DrawConfig& cfg);
/// Single-function proof chain.
LawReport check_proof_chain(const MonomialSeries& y, const HilferSpec& spec);
/// Proof chain over random draws.
LawReport check_proof_chain(const DrawConfig& cfg);
LawReport check_caputo_endpoint(const DrawConfig& cfg);

LawReport run_law(LawId law, const DrawConfig& cfg);

/// JSON document with report_version 1.
nlohmann::ordered_json report_to_json(const LawReport& report);

}  // namespace frac
