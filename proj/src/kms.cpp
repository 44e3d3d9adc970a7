#include "solkms/kms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "solkms/errors.hpp"

namespace solkms {

ThetaSeq::ThetaSeq(int N, double theta0, int depth, double beta)
    : N_(N), depth_(depth), beta_(beta) {
    if (N < 2) throw std::invalid_argument("ThetaSeq requires N >= 2");
    if (depth < 1) throw std::invalid_argument("ThetaSeq requires depth >= 1");
    if (theta0 == 0.0) {
        throw DegenerateThetaError("theta0 = 0 is the degenerate regime and is out of scope");
    }
    if (!(theta0 > 0.0 && theta0 < 1.0)) {
        throw std::invalid_argument("ThetaSeq requires theta0 in (0,1)");
    }
    if (beta < 0.0) {
        throw NoKmsStatesError("no KMS states exist at negative inverse temperature");
    }
    theta_.resize(static_cast<std::size_t>(depth) + 1);
    rate_.resize(static_cast<std::size_t>(depth) + 1);
    theta_[0] = theta0;
    rate_[0] = beta / theta0;
    const double n2 = static_cast<double>(N) * static_cast<double>(N);
    for (int j = 1; j <= depth; ++j) {
        theta_[static_cast<std::size_t>(j)] = theta_[static_cast<std::size_t>(j - 1)] / n2;
        rate_[static_cast<std::size_t>(j)] = rate_[static_cast<std::size_t>(j - 1)] * N;
    }
}

AlgebraLevel ThetaSeq::level(int j) const {
    if (j < 0 || j > depth_) throw std::out_of_range("ThetaSeq level index out of range");
    return make_level(j, theta(j), N_);
}

ThetaSeq make_theta_seq(int N, double theta0, int depth, double beta) {
    return ThetaSeq(N, theta0, depth, beta);
}

SolenoidPoint::SolenoidPoint(std::vector<CirclePoint> coords, int N)
    : coords_(std::move(coords)), N_(N) {
    if (coords_.empty()) throw std::invalid_argument("SolenoidPoint needs coordinates");
    if (N < 2) throw std::invalid_argument("SolenoidPoint requires N >= 2");
    for (std::size_t j = 0; j + 1 < coords_.size(); ++j) {
        const double lifted = cover(coords_[j + 1], N).value();
        if (std::abs(lifted - coords_[j].value()) > 1e-9 &&
            std::abs(std::abs(lifted - coords_[j].value()) - 1.0) > 1e-9) {
            throw std::invalid_argument("SolenoidPoint coordinates violate s_j = N s_{j+1} mod 1");
        }
    }
}

SolenoidPoint SolenoidPoint::from_deepest(CirclePoint s_deepest, int N, int depth) {
    std::vector<CirclePoint> coords(static_cast<std::size_t>(depth) + 1);
    coords[static_cast<std::size_t>(depth)] = s_deepest;
    for (int j = depth - 1; j >= 0; --j) {
        coords[static_cast<std::size_t>(j)] = cover(coords[static_cast<std::size_t>(j + 1)], N);
    }
    return SolenoidPoint(std::move(coords), N);
}

SolenoidPoint SolenoidPoint::zero(int N, int depth) {
    return SolenoidPoint(std::vector<CirclePoint>(static_cast<std::size_t>(depth) + 1), N);
}

SolenoidPoint operator-(const SolenoidPoint& a, const SolenoidPoint& b) {
    if (a.depth() != b.depth() || a.N_ != b.N_) {
        throw std::invalid_argument("solenoid difference needs matching depth and N");
    }
    std::vector<CirclePoint> coords(a.coords_.size());
    for (std::size_t j = 0; j < coords.size(); ++j) {
        coords[j] = CirclePoint(a.coords_[j].value() - b.coords_[j].value());
    }
    return SolenoidPoint(std::move(coords), a.N_);
}

KmsState extreme_state_from_solenoid(const SolenoidPoint& p, const ThetaSeq& theta) {
    if (!(theta.beta() > 0.0)) {
        throw std::invalid_argument(
            "extreme_state_from_solenoid requires beta > 0; at beta = 0 use trace_state");
    }
    if (p.depth() != theta.depth() || p.N() != theta.N()) {
        throw std::invalid_argument("solenoid point does not match the parameter pack");
    }
    MeasureTower tower;
    tower.levels.reserve(static_cast<std::size_t>(theta.depth()) + 1);
    for (int j = 0; j <= theta.depth(); ++j) {
        tower.levels.push_back(rotate_measure(make_mr(theta.rate(j)), p.coord(j).value()));
    }
    return KmsState{theta, std::move(tower)};
}

KmsState convex_state(const std::vector<double>& weights, const std::vector<KmsState>& states) {
    if (weights.size() != states.size() || states.empty()) {
        throw std::invalid_argument("convex_state: need one weight per state");
    }
    const ThetaSeq& theta = states.front().theta;
    for (const auto& st : states) {
        if (st.theta.N() != theta.N() || st.theta.depth() != theta.depth() ||
            st.theta.beta() != theta.beta() || st.theta.theta(0) != theta.theta(0)) {
            throw std::invalid_argument("convex_state: states use different parameter packs");
        }
    }
    MeasureTower tower;
    for (int j = 0; j <= theta.depth(); ++j) {
        std::vector<CircleMeasure> level_measures;
        level_measures.reserve(states.size());
        for (const auto& st : states) {
            level_measures.push_back(st.tower.levels.at(static_cast<std::size_t>(j)));
        }
        tower.levels.push_back(convex_combination(weights, level_measures));
    }
    return KmsState{theta, std::move(tower)};
}

KmsState trace_state(const ThetaSeq& theta) {
    if (theta.beta() != 0.0) {
        throw std::invalid_argument("trace_state requires beta = 0");
    }
    MeasureTower tower;
    for (int j = 0; j <= theta.depth(); ++j) tower.levels.push_back(lebesgue());
    return KmsState{theta, std::move(tower)};
}

KmsState reversed_density_state(const ThetaSeq& theta) {
    if (!(theta.beta() > 0.0)) {
        throw std::invalid_argument("reversed_density_state requires beta > 0");
    }
    MeasureTower tower;
    for (int j = 0; j <= theta.depth(); ++j) {
        tower.levels.push_back(reversed_mr(theta.rate(j)));
    }
    return KmsState{theta, std::move(tower)};
}

namespace {

const CircleMeasure& tower_measure(const KmsState& phi, const AlgebraLevel& level) {
    if (level.j > phi.theta.depth()) {
        throw LevelMismatchError("element level " + std::to_string(level.j) +
                                 " exceeds tower depth " + std::to_string(phi.theta.depth()));
    }
    if (level.N != phi.theta.N() ||
        std::abs(level.theta - phi.theta.theta(level.j)) >
            1e-12 * (1.0 + std::abs(level.theta))) {
        throw LevelMismatchError("element level does not belong to this state's tower");
    }
    return phi.tower.levels.at(static_cast<std::size_t>(level.j));
}

}  // namespace

std::complex<double> evaluate(const KmsState& phi, const ToeplitzElement& x) {
    const CircleMeasure& m = tower_measure(phi, x.level());
    const double weight = phi.theta.beta() / std::pow(phi.theta.N(), x.level().j);
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [key, f] : x.terms()) {
        if (key.first != key.second) continue;  // off-diagonal terms vanish
        acc += std::exp(-weight * key.first) * integrate(m, f);
    }
    return acc;
}

double verify_kms_identity(const KmsState& phi, const ToeplitzElement& x,
                           const ToeplitzElement& y) {
    const std::complex<double> lhs = evaluate(phi, elem_mul(x, y));
    const std::complex<double> rhs =
        evaluate(phi, elem_mul(y, apply_dynamics_imaginary(x, phi.theta.beta())));
    return std::abs(lhs - rhs);
}

double verify_positivity_gap(const KmsState& phi, const ToeplitzElement& x) {
    const ToeplitzElement gap = gap_element(x.level());
    return evaluate(phi, elem_mul(elem_mul(x, gap), elem_adjoint(x))).real();
}

double verify_state_invariance(const KmsState& phi, const ToeplitzElement& x, double t) {
    return std::abs(evaluate(phi, apply_dynamics(x, t)) - evaluate(phi, x));
}

double gap_value(const KmsState& phi, int j) {
    return evaluate(phi, gap_element(phi.theta.level(j))).real();
}

bool factors_through_solenoid(const KmsState& phi) {
    for (int j = 0; j <= phi.theta.depth(); ++j) {
        if (gap_value(phi, j) > 1e-10) return false;
    }
    return true;
}

double verify_solenoid_equivariance(const SolenoidPoint& p, const SolenoidPoint& q,
                                    const ThetaSeq& theta, const ToeplitzElement& x) {
    const KmsState at_p = extreme_state_from_solenoid(p, theta);
    const KmsState at_diff = extreme_state_from_solenoid(p - q, theta);
    const double s_j = q.coord(x.level().j).value();
    const std::complex<double> lhs = evaluate(at_p, solenoid_act(x, s_j));
    const std::complex<double> rhs = evaluate(at_diff, x);
    return std::abs(lhs - rhs);
}

double tower_compatibility_defect(const KmsState& phi, int arc_level) {
    double worst = 0.0;
    for (int j = 0; j < phi.theta.depth(); ++j) {
        const CircleMeasure pushed =
            pushforward_cover(phi.tower.levels.at(static_cast<std::size_t>(j) + 1), phi.theta.N());
        const CircleMeasure& target = phi.tower.levels.at(static_cast<std::size_t>(j));
        for (int level = 0; level <= arc_level; ++level) {
            for (const auto& arc : dyadic_partition(level)) {
                worst = std::max(worst,
                                 std::abs(measure_arc(pushed, arc) - measure_arc(target, arc)));
            }
        }
    }
    return worst;
}

}  // namespace solkms
