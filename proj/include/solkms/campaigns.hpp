#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "solkms/exec.hpp"
#include "solkms/kms.hpp"
#include "solkms/rng.hpp"

namespace solkms {

/// Outcome of one verification suite. A report passes only if it ran at least
/// one case and its max residual stays within the suite tolerance.
struct Report {
    std::string suite;
    nlohmann::json params = nlohmann::json::object();
    int cases = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    nlohmann::json witnesses = nlohmann::json::array();
    double wall_time_ms = 0.0;
};

nlohmann::json report_to_json(const Report& r);

/// Parameters shared by the seeded campaigns.
struct CampaignConfig {
    int N = 2;
    double theta0 = 1.0 / 3.0;
    double beta = 1.0;
    int depth = 4;
    int samples = 1000;
    int n_states = 20;
    std::uint64_t seed = 42;
    ExecPolicy policy = ExecPolicy::Serial;
};

SolenoidPoint random_solenoid_point(Rng& rng, int N, int depth);

/// Random spanning-family sum: up to max_terms terms s^m i(f) s^{*n} with
/// m, n <= max_power and deg f <= max_degree.
ToeplitzElement random_element(Rng& rng, const AlgebraLevel& level, int max_power = 2,
                               int max_degree = 4, int max_terms = 2);

/// 20 states for a parameter pack: extreme states at random solenoid points
/// plus convex mixtures of them; at beta = 0 the unique trace state.
std::vector<KmsState> build_state_family(const ThetaSeq& theta, int n_states,
                                         std::uint64_t seed);

// Seeded verification suites. Each one is deterministic in (config); the
// Parallel policy fans the cases out over OpenMP and merges order-normalized,
// so both policies produce identical reports (except wall_time_ms).
Report kms_identity_campaign(const CampaignConfig& cfg);
Report invariance_campaign(const CampaignConfig& cfg);
Report positivity_campaign(const CampaignConfig& cfg);
Report embedding_campaign(const CampaignConfig& cfg);
Report tower_compatibility_report(const CampaignConfig& cfg);
Report equivariance_campaign(const CampaignConfig& cfg);
Report factor_values_report(const CampaignConfig& cfg);

/// beta > 0 only: finds a low-degree function witnessing that the reversed
/// density tower fails positivity. Passes when a witness with gap value
/// below -tolerance exists at every checked level.
Report reversed_detection_report(const CampaignConfig& cfg);

/// beta = 0 only: trace identity |phi(xy) - phi(yx)| over random pairs, the
/// factor test, and gap values.
Report trace_campaign(const CampaignConfig& cfg);

/// Rate-0 rigidity: Lebesgue passes with zero violation; seeded perturbed
/// measures all fail.
Report omega0_campaign(std::uint64_t seed, int perturbed_samples = 50,
                       ExecPolicy policy = ExecPolicy::Serial);

/// Resolvent identity across n in {1..4}, r in {0.1, 1, 2 ln 2, 5}, plus
/// seeded random simplex round trips through decompose_subinvariant.
Report cycle_roundtrip_campaign(std::uint64_t seed, int roundtrips = 200);

/// Arc-level identity (m_{Nr} . R_s . p_N^{-1}) = (m_r . R_{Ns}) over seeded
/// random arcs, N in {2,3}, r in {0.5, 2}, s in {0, 0.3, 0.77}.
Report pushforward_identity_campaign(std::uint64_t seed, int arcs_per_case = 64);

struct L1Curve {
    std::vector<double> values;  // ||m_r - m_{n,r}||_1 for n = 1..n_max
    Report report;
};

/// Distance curve; passes when strictly decreasing and below final_bound at n_max.
L1Curve l1_curve(double r, int n_max, int panels = 4096, double final_bound = 1e-3,
                 ExecPolicy policy = ExecPolicy::Serial);

/// Everything applicable to one parameter pack (trace suite at beta = 0,
/// state campaigns otherwise).
std::vector<Report> full_verify(const CampaignConfig& cfg);

/// A perturbed-Lebesgue measure (dyadic bump, renormalized), for negative tests.
CircleMeasure perturbed_lebesgue(Rng& rng);

}  // namespace solkms
