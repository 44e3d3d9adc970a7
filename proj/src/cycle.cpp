#include "solkms/cycle.hpp"

#include <cmath>
#include <string>

#include "solkms/errors.hpp"
#include "solkms/rng.hpp"

namespace solkms::cycle {

namespace {

void require_level(int n) {
    if (n < 0 || n > 24) throw std::invalid_argument("cycle level n out of range");
}

double shift_ratio(int n, double r) { return std::exp(-r / static_cast<double>(size_at_level(n))); }

}  // namespace

std::vector<double> extreme_vector(int n, double r, std::int64_t j) {
    require_level(n);
    if (!(r > 0.0)) throw std::invalid_argument("extreme_vector requires r > 0");
    const std::int64_t k = size_at_level(n);
    if (j < 0 || j >= k) throw std::invalid_argument("extreme_vector index out of range");
    // c = (1 - q) / (1 - e^{-r}) with q = e^{-r/2^n}, via expm1 for small rates
    const double c = std::expm1(-r / static_cast<double>(k)) / std::expm1(-r);
    std::vector<double> v(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) {
        const std::int64_t offset = (i - j + k) % k;
        v[static_cast<std::size_t>(i)] =
            c * std::exp(-r * static_cast<double>(offset) / static_cast<double>(k));
    }
    return v;
}

std::vector<std::vector<double>> extreme_vectors(int n, double r) {
    require_level(n);
    if (n > 12) throw std::invalid_argument("extreme_vectors stores 4^n entries; use extreme_vector beyond n = 12");
    const std::int64_t k = size_at_level(n);
    std::vector<std::vector<double>> vs(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) {
        vs[static_cast<std::size_t>(j)] = extreme_vector(n, r, j);
    }
    return vs;
}

std::vector<double> resolvent_apply(const std::vector<double>& x, int n, double r) {
    require_level(n);
    const std::int64_t k = size_at_level(n);
    if (static_cast<std::int64_t>(x.size()) != k) {
        throw std::invalid_argument("resolvent_apply: vector length must be 2^n");
    }
    const double q = shift_ratio(n, r);
    std::vector<double> eps(x.size());
    for (std::int64_t i = 0; i < k; ++i) {
        eps[static_cast<std::size_t>(i)] =
            x[static_cast<std::size_t>(i)] - q * x[static_cast<std::size_t>((i - 1 + k) % k)];
    }
    return eps;
}

std::vector<double> decompose_subinvariant(const std::vector<double>& x, int n, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("decompose_subinvariant requires r > 0");
    std::vector<double> eps = resolvent_apply(x, n, r);
    for (std::size_t j = 0; j < eps.size(); ++j) {
        if (eps[j] < -1e-8) {
            throw NotSubinvariantError(
                "decompose_subinvariant: negative resolvent entry at index " + std::to_string(j),
                static_cast<int>(j));
        }
    }
    const double one_minus_q = -std::expm1(-r / static_cast<double>(size_at_level(n)));
    std::vector<double> lambda(eps.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < eps.size(); ++j) {
        double l = eps[j] / one_minus_q;
        if (l < 0.0) l = 0.0;  // clamp fp dust
        lambda[j] = l;
        sum += l;
    }
    if (sum > 0.0) {
        for (double& l : lambda) l /= sum;
    }
    return lambda;
}

bool is_subinvariant_vector(const std::vector<double>& x, int n, double r, double tol) {
    const std::int64_t k = size_at_level(n);
    if (static_cast<std::int64_t>(x.size()) != k) return false;
    double sum = 0.0;
    for (double xi : x) {
        if (xi < -tol) return false;
        sum += xi;
    }
    if (std::abs(sum - 1.0) > 1e-9) return false;
    const double growth = std::exp(r / static_cast<double>(k));
    for (std::int64_t i = 0; i < k; ++i) {
        // (Ax)_i = x_{i-1} must not exceed e^{r/2^n} x_i
        if (x[static_cast<std::size_t>((i - 1 + k) % k)] >
            growth * x[static_cast<std::size_t>(i)] + tol) {
            return false;
        }
    }
    return true;
}

bool verify_extremality_bruteforce(int n, double r, int trials, std::uint64_t seed) {
    require_level(n);
    if (size_at_level(n) > 16) throw std::invalid_argument("bruteforce check limited to 2^n <= 16");
    const auto vs = extreme_vectors(n, r);
    const std::size_t k = vs.size();
    for (std::size_t j = 0; j < k; ++j) {
        Rng rng = Rng::for_case(seed, j);
        for (int trial = 0; trial < trials; ++trial) {
            // Candidate x: perturb v^n_j, project back to the probability simplex.
            std::vector<double> x = vs[j];
            const double delta = 0.2 * rng.uniform();
            double sum = 0.0;
            for (double& xi : x) {
                xi = std::max(0.0, xi + delta * (2.0 * rng.uniform() - 1.0));
                sum += xi;
            }
            for (double& xi : x) xi /= sum;
            const double t = rng.uniform(0.1, 0.9);
            // y forced by t x + (1-t) y = v^n_j
            std::vector<double> y(k);
            for (std::size_t i = 0; i < k; ++i) y[i] = (vs[j][i] - t * x[i]) / (1.0 - t);
            if (!is_subinvariant_vector(x, n, r) || !is_subinvariant_vector(y, n, r)) {
                continue;  // not a decomposition inside the simplex
            }
            for (std::size_t i = 0; i < k; ++i) {
                if (std::abs(x[i] - vs[j][i]) > 1e-9 || std::abs(y[i] - vs[j][i]) > 1e-9) {
                    return false;  // proper decomposition found: not extreme
                }
            }
        }
    }
    return true;
}

std::vector<double> measure_to_vector(const CircleMeasure& m, int n) {
    const auto arcs = dyadic_partition(n);
    std::vector<double> x(arcs.size());
    for (std::size_t j = 0; j < arcs.size(); ++j) x[j] = measure_arc(m, arcs[j]);
    return x;
}

}  // namespace solkms::cycle
