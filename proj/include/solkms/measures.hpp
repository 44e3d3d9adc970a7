#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "solkms/circle.hpp"
#include "solkms/exec.hpp"
#include "solkms/trig.hpp"

namespace solkms {

/// One density piece: t -> coeff * e^{-rate (t - lo)} on the non-wrapping
/// interval [lo, hi) inside [0,1). Anchoring the exponential at the piece's
/// own left endpoint keeps coefficients representable at large rates, where
/// an absolute parametrization would overflow under rotation.
struct ExpPiece {
    double lo;
    double hi;
    double coeff;  // density value at lo; >= 0
    double rate;
};

/// Borel probability measure on the circle with piecewise-exponential density.
///
/// The density at t is the sum over all pieces whose interval contains t, so a
/// convex combination of measures is just the concatenation of their piece
/// lists with scaled coefficients. Construction enforces nonnegative
/// coefficients and unit total mass.
class CircleMeasure {
  public:
    explicit CircleMeasure(std::vector<ExpPiece> pieces);

    const std::vector<ExpPiece>& pieces() const { return pieces_; }
    double density(CirclePoint t) const;
    double total_mass() const;
    /// Sorted piece endpoints, always including 0 and 1.
    std::vector<double> breakpoints() const;

  private:
    std::vector<ExpPiece> pieces_;
};

/// Lebesgue measure: density identically 1.
CircleMeasure lebesgue();

/// Density (r / (1 - e^{-r})) e^{-rt}; r = 0 gives Lebesgue. Rejects r < 0
/// (no subinvariant measures exist below rate 0).
CircleMeasure make_mr(double r);

/// Negative control: density proportional to e^{+rt}, which fails rate-r
/// subinvariance for every r > 0.
CircleMeasure reversed_mr(double r);

/// m compose R_s: (m . R_s)(U) = m(R_s(U)); density shifts to t -> density(t - s).
CircleMeasure rotate_measure(const CircleMeasure& m, double s);

/// m compose p_N^{-1}: density u -> (1/N) sum_i density((u+i)/N). Rates divide by N.
CircleMeasure pushforward_cover(const CircleMeasure& m, int N);

/// Convex combination sum_i w_i m_i (weights on the simplex).
CircleMeasure convex_combination(const std::vector<double>& weights,
                                 const std::vector<CircleMeasure>& measures);

/// Step-density approximation of make_mr(r) on the level-n dyadic partition:
/// value 2^n (v^n_0)_j on [j/2^n, (j+1)/2^n). Requires r > 0.
CircleMeasure make_mnr(int n, double r);

/// sum_j lambda_j (m_r . R_{j/2^n}) as a single flat measure.
CircleMeasure extreme_mixture(const std::vector<double>& lambda, double r, int n);

double measure_arc(const CircleMeasure& m, const Arc& a);

std::complex<double> integrate(const CircleMeasure& m, const TrigPoly& f);
double integrate(const CircleMeasure& m, const SimpleFunction& f);

/// integral of |density_1 - density_2| over the circle, by breakpoint-refined
/// adaptive Simpson quadrature. `panels` sets the initial uniform subdivision.
double l1_distance(const CircleMeasure& m1, const CircleMeasure& m2, int panels = 4096,
                   ExecPolicy policy = ExecPolicy::Serial);

struct SubinvWitness {
    double t;  // density-grid witness point (arc start for arc-stage witnesses)
    double s;  // offending rotation amount
    std::optional<Arc> arc;
};

struct SubinvReport {
    bool satisfied;
    double worst_violation;
    std::optional<SubinvWitness> witness;
};

struct SubinvGrid {
    int n_t = 256;
    int n_s = 256;
    int arc_level = 8;  // dyadic arc checks up to this level
};

/// Rate-r subinvariance verdict: density domination
///     density(t - s) <= e^{rs} density(t)
/// on an n_t x n_s grid over [0,1)^2, plus the arc form
///     m(R_s(U)) <= e^{rs} m(U)
/// for every dyadic arc up to grid.arc_level and every grid s.
SubinvReport check_subinvariance(const CircleMeasure& m, double r,
                                 const SubinvGrid& grid = SubinvGrid{}, double tol = 1e-9,
                                 ExecPolicy policy = ExecPolicy::Serial);

struct CertifyReport {
    bool ok;
    int failing_stage;  // 0 = none, 1 = scale hypotheses, 2 = derived conclusion
    int failing_k;      // scale index for stage 1, sample index for stage 2
    explicit operator bool() const { return ok; }
};

/// Scale-hypothesis certificate: checks m(R_{gamma/N^k}(U)) <= e^{s/N^k} m(U)
/// for k = 0..K on the probe arcs, then the conclusion m(R_{t gamma}(U)) <=
/// e^{st} m(U) for sampled base-N truncated t (the digit-iteration bound).
CertifyReport certify_from_scales(const CircleMeasure& m, double gamma, double s, int K,
                                  int N, const std::vector<Arc>& probe_arcs,
                                  double tol = 1e-9, int samples = 32,
                                  std::uint64_t seed = 1234);

/// Weights lambda expressing the level-n dyadic arc masses of m as a convex
/// combination of the extreme arc-mass vectors v^n_j. Throws
/// NotSubinvariantError when the arc masses are not rate-r subinvariant.
std::vector<double> decompose_into_extremes(const CircleMeasure& m, double r, int n);

enum class ProbeVerdict { ForcedEqual, Exceeds };

/// Forced-equality probe on the n-part partition: if m's mass on the last part
/// does not exceed m_r's, rate-r subinvariance forces m = m_r on every part
/// (checked, with a diagnostic throw on mismatch); otherwise Exceeds.
ProbeVerdict extremality_probe(const CircleMeasure& m, double r, int n, double tol = 1e-9);

}  // namespace solkms
