#pragma once

#include <complex>
#include <vector>

#include "solkms/measures.hpp"
#include "solkms/toeplitz.hpp"

namespace solkms {

/// Parameter pack for a depth-J tower: angles theta_j = theta0 / N^{2j}
/// (canonical real lift, so N^2 theta_{j+1} = theta_j holds in R) and
/// per-level subinvariance rates r_j = beta / (N^j theta_j), built
/// multiplicatively so that r_{j+1} = N r_j holds to the last ulp.
class ThetaSeq {
  public:
    ThetaSeq(int N, double theta0, int depth, double beta);

    int N() const { return N_; }
    int depth() const { return depth_; }
    double beta() const { return beta_; }
    double theta(int j) const { return theta_.at(static_cast<std::size_t>(j)); }
    double rate(int j) const { return rate_.at(static_cast<std::size_t>(j)); }
    AlgebraLevel level(int j) const;

  private:
    int N_;
    int depth_;
    double beta_;
    std::vector<double> theta_;
    std::vector<double> rate_;
};

/// Throws NoKmsStatesError for beta < 0 and DegenerateThetaError for theta0 = 0.
ThetaSeq make_theta_seq(int N, double theta0, int depth, double beta);

/// Point of the inverse limit of circles: coordinates s_0..s_J with
/// s_j = N s_{j+1} (mod 1).
class SolenoidPoint {
  public:
    SolenoidPoint(std::vector<CirclePoint> coords, int N);

    /// Lift a deepest-level coordinate upward through the covering maps.
    static SolenoidPoint from_deepest(CirclePoint s_deepest, int N, int depth);
    static SolenoidPoint zero(int N, int depth);

    int depth() const { return static_cast<int>(coords_.size()) - 1; }
    int N() const { return N_; }
    CirclePoint coord(int j) const { return coords_.at(static_cast<std::size_t>(j)); }

    /// Coordinatewise group difference (s_j - t_j mod 1); stays compatible.
    friend SolenoidPoint operator-(const SolenoidPoint& a, const SolenoidPoint& b);

  private:
    std::vector<CirclePoint> coords_;
    int N_;
};

/// Compatible sequence of measures m_0..m_J, one per level.
struct MeasureTower {
    std::vector<CircleMeasure> levels;
};

/// A state given by its inverse temperature data and measure tower; evaluation
/// of a level-j spanning element s^a i(f) s^{*b} is
///     delta_{a,b} e^{-a beta / N^j} integral of f against m_j.
struct KmsState {
    ThetaSeq theta;
    MeasureTower tower;
};

/// The extreme state attached to a solenoid point: m_j = m_{r_j} . R_{s_j}.
/// Requires beta > 0 (at beta = 0 use trace_state).
KmsState extreme_state_from_solenoid(const SolenoidPoint& p, const ThetaSeq& theta);

/// Levelwise convex combination of states sharing a parameter pack.
KmsState convex_state(const std::vector<double>& weights, const std::vector<KmsState>& states);

/// The unique beta = 0 state: Lebesgue measure at every level.
KmsState trace_state(const ThetaSeq& theta);

/// Negative control: the tower of reversed exponential densities, which is
/// pushforward-compatible but violates subinvariance at every level.
KmsState reversed_density_state(const ThetaSeq& theta);

std::complex<double> evaluate(const KmsState& phi, const ToeplitzElement& x);

/// |phi(xy) - phi(y alpha_{i beta}(x))| for x, y at a common level.
double verify_kms_identity(const KmsState& phi, const ToeplitzElement& x,
                           const ToeplitzElement& y);

/// Re phi(x (1 - ss*) x*); nonnegative for every genuinely subinvariant tower.
double verify_positivity_gap(const KmsState& phi, const ToeplitzElement& x);

/// |phi(alpha_t(x)) - phi(x)|.
double verify_state_invariance(const KmsState& phi, const ToeplitzElement& x, double t);

/// true iff phi kills the gap projection at every level (within 1e-10).
bool factors_through_solenoid(const KmsState& phi);

/// Value phi(1 - ss*) at level j; equals 1 - e^{-beta / N^j} on canonical states.
double gap_value(const KmsState& phi, int j);

/// |phi_p(lambda_q(x)) - phi_{p - q}(x)| where phi_p is the extreme state at p.
double verify_solenoid_equivariance(const SolenoidPoint& p, const SolenoidPoint& q,
                                    const ThetaSeq& theta, const ToeplitzElement& x);

/// Tower compatibility defect: worst dyadic-arc deviation (levels <= arc_level)
/// between pushforward_cover(m_{j+1}, N) and m_j over all j.
double tower_compatibility_defect(const KmsState& phi, int arc_level = 8);

}  // namespace solkms
