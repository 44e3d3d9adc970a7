#include "solkms/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "solkms/cycle.hpp"
#include "solkms/errors.hpp"
#include "solkms/rng.hpp"

namespace solkms {

namespace {

// integral of the anchored density coeff * e^{-rate (t - anchor)} over [x, y)
double piece_integral(double coeff, double rate, double anchor, double x, double y) {
    if (y <= x) return 0.0;
    if (rate == 0.0) return coeff * (y - x);
    return coeff * std::exp(-rate * (x - anchor)) * (-std::expm1(-rate * (y - x))) / rate;
}

void append_piece(std::vector<ExpPiece>& out, double lo, double hi, double coeff, double rate) {
    if (hi - lo <= 0.0 || coeff == 0.0) return;
    out.push_back(ExpPiece{lo, hi, coeff, rate});
}

// e^x clamped into double range, so growth factors never become inf (which
// would turn 0-density grid points into NaN comparisons)
double bounded_exp(double x) {
    return std::min(std::exp(x), std::numeric_limits<double>::max());
}

}  // namespace

CircleMeasure::CircleMeasure(std::vector<ExpPiece> pieces) : pieces_(std::move(pieces)) {
    for (auto& p : pieces_) {
        if (!(p.lo >= 0.0 && p.lo < p.hi && p.hi <= 1.0)) {
            throw std::invalid_argument("CircleMeasure piece interval must satisfy 0 <= lo < hi <= 1");
        }
        if (p.coeff < 0.0) {
            if (p.coeff < -1e-15) {
                throw std::invalid_argument("CircleMeasure piece coefficient must be nonnegative");
            }
            p.coeff = 0.0;
        }
    }
    const double mass = total_mass();
    if (std::abs(mass - 1.0) > 1e-10) {
        throw std::invalid_argument("CircleMeasure total mass " + std::to_string(mass) +
                                    " is not 1");
    }
}

double CircleMeasure::density(CirclePoint t) const {
    const double x = t.value();
    double d = 0.0;
    for (const auto& p : pieces_) {
        if (x >= p.lo && x < p.hi) d += p.coeff * std::exp(-p.rate * (x - p.lo));
    }
    return d;
}

double CircleMeasure::total_mass() const {
    double mass = 0.0;
    for (const auto& p : pieces_) mass += piece_integral(p.coeff, p.rate, p.lo, p.lo, p.hi);
    return mass;
}

std::vector<double> CircleMeasure::breakpoints() const {
    std::vector<double> bps{0.0, 1.0};
    for (const auto& p : pieces_) {
        bps.push_back(p.lo);
        bps.push_back(p.hi);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    return bps;
}

CircleMeasure lebesgue() { return CircleMeasure({ExpPiece{0.0, 1.0, 1.0, 0.0}}); }

CircleMeasure make_mr(double r) {
    if (r < 0.0) {
        throw std::invalid_argument("make_mr: no subinvariant measures exist for r < 0");
    }
    if (r == 0.0) return lebesgue();
    const double coeff = r / (-std::expm1(-r));
    return CircleMeasure({ExpPiece{0.0, 1.0, coeff, r}});
}

CircleMeasure reversed_mr(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("reversed_mr requires r > 0");
    if (r > 300.0) {
        throw std::invalid_argument("reversed_mr: rate too large for a double-range density");
    }
    const double coeff = r / std::expm1(r);
    return CircleMeasure({ExpPiece{0.0, 1.0, coeff, -r}});
}

CircleMeasure rotate_measure(const CircleMeasure& m, double s) {
    const double shift = CirclePoint::wrap(s);
    if (shift == 0.0) return m;
    std::vector<ExpPiece> out;
    out.reserve(m.pieces().size() + 1);
    for (const auto& p : m.pieces()) {
        const double a = p.lo + shift;
        const double b = p.hi + shift;
        // anchored coefficients shift with the piece; only the fragment that
        // wraps past 1 re-anchors at 0 and picks up the decay over [a, 1).
        if (b <= 1.0) {
            append_piece(out, a, b, p.coeff, p.rate);
        } else if (a >= 1.0) {
            append_piece(out, a - 1.0, b - 1.0, p.coeff, p.rate);
        } else {
            append_piece(out, a, 1.0, p.coeff, p.rate);
            append_piece(out, 0.0, b - 1.0, p.coeff * std::exp(-p.rate * (1.0 - a)), p.rate);
        }
    }
    return CircleMeasure(std::move(out));
}

CircleMeasure pushforward_cover(const CircleMeasure& m, int N) {
    if (N < 2) throw std::invalid_argument("pushforward_cover requires N >= 2");
    std::vector<ExpPiece> out;
    out.reserve(m.pieces().size());
    const double n = static_cast<double>(N);
    for (const auto& p : m.pieces()) {
        for (int i = 0; i < N; ++i) {
            // portion of the piece living on the i-th branch [i/N, (i+1)/N)
            const double lo = std::max(p.lo, static_cast<double>(i) / n);
            const double hi = std::min(p.hi, static_cast<double>(i + 1) / n);
            if (hi <= lo) continue;
            const double coeff = (p.coeff / n) * std::exp(-p.rate * (lo - p.lo));
            append_piece(out, n * lo - i, n * hi - i, coeff, p.rate / n);
        }
    }
    return CircleMeasure(std::move(out));
}

CircleMeasure convex_combination(const std::vector<double>& weights,
                                 const std::vector<CircleMeasure>& measures) {
    if (weights.size() != measures.size() || weights.empty()) {
        throw std::invalid_argument("convex_combination: need one weight per measure");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (w < -1e-12) throw std::invalid_argument("convex_combination: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("convex_combination: weights must sum to 1");
    }
    std::vector<ExpPiece> out;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        for (const auto& p : measures[i].pieces()) {
            append_piece(out, p.lo, p.hi, weights[i] * p.coeff, p.rate);
        }
    }
    return CircleMeasure(std::move(out));
}

CircleMeasure make_mnr(int n, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("make_mnr requires r > 0");
    const auto v0 = cycle::extreme_vector(n, r, 0);
    const double k = static_cast<double>(cycle::size_at_level(n));
    std::vector<ExpPiece> out;
    out.reserve(v0.size());
    for (std::size_t j = 0; j < v0.size(); ++j) {
        append_piece(out, static_cast<double>(j) / k, static_cast<double>(j + 1) / k,
                     k * v0[j], 0.0);
    }
    return CircleMeasure(std::move(out));
}

CircleMeasure extreme_mixture(const std::vector<double>& lambda, double r, int n) {
    const std::int64_t k = cycle::size_at_level(n);
    if (static_cast<std::int64_t>(lambda.size()) != k) {
        throw std::invalid_argument("extreme_mixture: weight vector length must be 2^n");
    }
    const CircleMeasure base = make_mr(r);
    std::vector<ExpPiece> out;
    for (std::int64_t j = 0; j < k; ++j) {
        const double w = lambda[static_cast<std::size_t>(j)];
        if (w == 0.0) continue;
        const CircleMeasure rot =
            rotate_measure(base, static_cast<double>(j) / static_cast<double>(k));
        for (const auto& p : rot.pieces()) append_piece(out, p.lo, p.hi, w * p.coeff, p.rate);
    }
    return CircleMeasure(std::move(out));
}

double measure_arc(const CircleMeasure& m, const Arc& a) {
    double mass = 0.0;
    for (const auto& frag : a.fragments()) {
        for (const auto& p : m.pieces()) {
            const double lo = std::max(frag.lo, p.lo);
            const double hi = std::min(frag.hi, p.hi);
            if (hi > lo) mass += piece_integral(p.coeff, p.rate, p.lo, lo, hi);
        }
    }
    return mass;
}

std::complex<double> integrate(const CircleMeasure& m, const TrigPoly& f) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [k, c] : f.coeffs()) {
        if (k == 0) {
            for (const auto& p : m.pieces()) {
                acc += c * piece_integral(p.coeff, p.rate, p.lo, p.lo, p.hi);
            }
            continue;
        }
        const double w = 2.0 * std::numbers::pi * k;
        for (const auto& p : m.pieces()) {
            // integral of coeff e^{-rate (t - lo)} e^{i w t} over [lo, hi); the
            // antiderivative is evaluated with the decay kept anchored at lo
            const std::complex<double> z(-p.rate, w);
            const std::complex<double> upper =
                std::exp(std::complex<double>(-p.rate * (p.hi - p.lo), w * p.hi));
            const std::complex<double> lower =
                std::exp(std::complex<double>(0.0, w * p.lo));
            acc += c * p.coeff * (upper - lower) / z;
        }
    }
    return acc;
}

double integrate(const CircleMeasure& m, const SimpleFunction& f) {
    double acc = 0.0;
    const auto& bps = f.breakpoints();
    const auto& vals = f.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double lo = bps[i];
        const double hi = (i + 1 < bps.size()) ? bps[i + 1] : 1.0;
        acc += vals[i] * measure_arc(m, Arc(CirclePoint(lo), hi - lo));
    }
    return acc;
}

namespace {

// Adaptive Simpson on [a,b] with classic 15x error control.
double adaptive_simpson(const CircleMeasure& m1, const CircleMeasure& m2, double a, double fa,
                        double b, double fb, double fm, double whole, double eps, int depth) {
    const double mid = 0.5 * (a + b);
    const double lm = 0.5 * (a + mid);
    const double rm = 0.5 * (mid + b);
    const double flm = std::abs(m1.density(CirclePoint(lm)) - m2.density(CirclePoint(lm)));
    const double frm = std::abs(m1.density(CirclePoint(rm)) - m2.density(CirclePoint(rm)));
    const double left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(m1, m2, a, fa, mid, fm, flm, left, eps * 0.5, depth - 1) +
           adaptive_simpson(m1, m2, mid, fm, b, fb, frm, right, eps * 0.5, depth - 1);
}

double l1_over_gap(const CircleMeasure& m1, const CircleMeasure& m2, double a, double b,
                   int panels) {
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == panels) ? b : a + (i + 1) * h;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = std::abs(m1.density(CirclePoint(x0)) - m2.density(CirclePoint(x0)));
        const double f1 = std::abs(m1.density(CirclePoint(x1)) - m2.density(CirclePoint(x1)));
        const double fm = std::abs(m1.density(CirclePoint(xm)) - m2.density(CirclePoint(xm)));
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += adaptive_simpson(m1, m2, x0, f0, x1, f1, fm, whole, 1e-13, 24);
    }
    return total;
}

}  // namespace

double l1_distance(const CircleMeasure& m1, const CircleMeasure& m2, int panels,
                   ExecPolicy policy) {
    if (panels < 256) throw std::invalid_argument("l1_distance requires panels >= 256");
    std::vector<double> bps = m1.breakpoints();
    for (double b : m2.breakpoints()) bps.push_back(b);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    const std::size_t gaps = bps.size() - 1;
    std::vector<double> partial(gaps, 0.0);
    auto gap_work = [&](std::size_t g) {
        const double a = bps[g];
        const double b = bps[g + 1];
        const int gap_panels = std::max(4, static_cast<int>(std::ceil((b - a) * panels)));
        partial[g] = l1_over_gap(m1, m2, a, b, gap_panels);
    };
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t g = 0; g < static_cast<std::int64_t>(gaps); ++g) {
            gap_work(static_cast<std::size_t>(g));
        }
    } else {
        for (std::size_t g = 0; g < gaps; ++g) gap_work(g);
    }
    // summed in gap order in both lanes
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

namespace {

struct GridHit {
    double violation = -std::numeric_limits<double>::infinity();
    std::size_t row = 0;
    std::size_t col = 0;
};

}  // namespace

SubinvReport check_subinvariance(const CircleMeasure& m, double r, const SubinvGrid& grid,
                                 double tol, ExecPolicy policy) {
    if (grid.n_t < 2 || grid.n_s < 2) {
        throw std::invalid_argument("check_subinvariance grid sizes must be >= 2");
    }
    const std::size_t n_t = static_cast<std::size_t>(grid.n_t);
    const std::size_t n_s = static_cast<std::size_t>(grid.n_s);

    std::vector<double> svals(n_s);
    std::vector<double> growth(n_s);
    for (std::size_t l = 0; l < n_s; ++l) {
        svals[l] = static_cast<double>(l) / static_cast<double>(n_s);
        growth[l] = bounded_exp(r * svals[l]);
    }

    // Stage A: pointwise density domination on the t x s grid.
    std::vector<GridHit> rows(n_t);
    auto row_work = [&](std::size_t i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_t);
        const double dt = m.density(CirclePoint(t));
        GridHit best;
        best.row = i;
        for (std::size_t l = 0; l < n_s; ++l) {
            const double shifted = m.density(rotate(CirclePoint(t), svals[l]));
            const double viol = shifted - growth[l] * dt;
            if (viol > best.violation) {
                best.violation = viol;
                best.col = l;
            }
        }
        rows[i] = best;
    };
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_t); ++i) {
            row_work(static_cast<std::size_t>(i));
        }
    } else {
        for (std::size_t i = 0; i < n_t; ++i) row_work(i);
    }
    GridHit best;
    for (const auto& h : rows) {
        if (h.violation > best.violation) best = h;
    }

    SubinvReport report;
    report.worst_violation = best.violation;
    report.witness = SubinvWitness{static_cast<double>(best.row) / static_cast<double>(n_t),
                                   svals[best.col], std::nullopt};

    // Stage B: arc form on dyadic arcs.
    for (int level = 0; level <= grid.arc_level; ++level) {
        for (const auto& arc : dyadic_partition(level)) {
            const double base = measure_arc(m, arc);
            for (std::size_t l = 0; l < n_s; ++l) {
                const double viol = measure_arc(m, rotate_arc(arc, svals[l])) - growth[l] * base;
                if (viol > report.worst_violation) {
                    report.worst_violation = viol;
                    report.witness = SubinvWitness{arc.start().value(), svals[l], arc};
                }
            }
        }
    }

    report.satisfied = report.worst_violation <= tol;
    return report;
}

CertifyReport certify_from_scales(const CircleMeasure& m, double gamma, double s, int K, int N,
                                  const std::vector<Arc>& probe_arcs, double tol, int samples,
                                  std::uint64_t seed) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("certify_from_scales requires gamma in (0,1)");
    }
    if (K < 1) throw std::invalid_argument("certify_from_scales requires K >= 1");
    if (N < 2) throw std::invalid_argument("certify_from_scales requires N >= 2");
    if (probe_arcs.empty()) throw std::invalid_argument("certify_from_scales needs probe arcs");

    // Stage 1: the scale hypotheses m(R_{gamma/N^k}(U)) <= e^{s/N^k} m(U).
    double scale = 1.0;
    for (int k = 0; k <= K; ++k) {
        const double rot = gamma / scale;
        const double factor = bounded_exp(s / scale);
        for (const auto& arc : probe_arcs) {
            if (measure_arc(m, rotate_arc(arc, rot)) > factor * measure_arc(m, arc) + tol) {
                return CertifyReport{false, 1, k};
            }
        }
        scale *= N;
    }

    // Stage 2: the conclusion for base-N truncated t, which the level-K
    // hypothesis reaches by digit iteration.
    Rng rng(seed);
    for (int sample = 0; sample < samples; ++sample) {
        double t = 0.0;
        double denom = 1.0;
        for (int i = 1; i <= K; ++i) {
            denom *= N;
            t += static_cast<double>(rng.below(static_cast<std::uint64_t>(N))) / denom;
        }
        const double factor = bounded_exp(s * t);
        for (const auto& arc : probe_arcs) {
            if (measure_arc(m, rotate_arc(arc, t * gamma)) >
                factor * measure_arc(m, arc) + tol) {
                return CertifyReport{false, 2, sample};
            }
        }
    }
    return CertifyReport{true, 0, -1};
}

std::vector<double> decompose_into_extremes(const CircleMeasure& m, double r, int n) {
    return cycle::decompose_subinvariant(cycle::measure_to_vector(m, n), n, r);
}

ProbeVerdict extremality_probe(const CircleMeasure& m, double r, int n, double tol) {
    if (n < 1) throw std::invalid_argument("extremality_probe requires n >= 1");
    const CircleMeasure mr = make_mr(r);
    const double width = 1.0 / static_cast<double>(n);
    const Arc last(CirclePoint(1.0 - width), width);
    if (measure_arc(m, last) > measure_arc(mr, last) + tol) return ProbeVerdict::Exceeds;
    for (int i = 0; i < n; ++i) {
        const Arc part(CirclePoint(static_cast<double>(i) * width), width);
        const double diff = std::abs(measure_arc(m, part) - measure_arc(mr, part));
        if (diff > tol) {
            throw NotSubinvariantError(
                "extremality_probe: forced equality fails on part " + std::to_string(i) +
                    " (input measure is not rate-" + std::to_string(r) + " subinvariant)",
                i);
        }
    }
    return ProbeVerdict::ForcedEqual;
}

}  // namespace solkms
