#pragma once

#include <cstdint>
#include <vector>

#include "solkms/measures.hpp"

namespace solkms::cycle {

// Finite core of the decomposition machinery: vectors indexed by Z/2^nZ with
// the cyclic-shift adjacency (Ax)_i = x_{i-1}.  Rate-r subinvariance reads
// x_j <= e^{r/2^n} x_{j+1}, and (I - e^{-r/2^n} A) maps the extreme vectors
// v^n_j to the scaled indicators eps_j.

/// Number of vertices at level n.
inline std::int64_t size_at_level(int n) { return std::int64_t{1} << n; }

/// The extreme subinvariant probability vector with peak at index j:
/// (v^n_j)_i = c q^{(i-j) mod 2^n} with q = e^{-r/2^n}, c = (1-q)/(1-e^{-r}).
std::vector<double> extreme_vector(int n, double r, std::int64_t j);

/// All 2^n extreme vectors; quadratic storage, so capped at n <= 12.
std::vector<std::vector<double>> extreme_vectors(int n, double r);

/// (I - qA)x, i.e. eps_i = x_i - q x_{(i-1) mod 2^n}.
std::vector<double> resolvent_apply(const std::vector<double>& x, int n, double r);

/// Weights lambda with x = sum_j lambda_j v^n_j, from lambda_j = eps_j / (1-q).
/// Throws NotSubinvariantError (with the offending index) if some eps_j < -1e-8;
/// clamps microscopically negative weights to 0 and renormalizes.
std::vector<double> decompose_subinvariant(const std::vector<double>& x, int n, double r);

/// Randomized extremality confirmation: attempts to split each v^n_j as a
/// proper convex combination t x + (1-t) y of subinvariant probability
/// vectors; returns true iff every valid split collapses to x = y = v^n_j.
bool verify_extremality_bruteforce(int n, double r, int trials, std::uint64_t seed = 99);

/// Arc-mass vector (m(U^n_0), ..., m(U^n_{2^n - 1})) on the dyadic partition.
std::vector<double> measure_to_vector(const CircleMeasure& m, int n);

/// true iff x is a probability vector with (Ax)_i <= e^{r/2^n} x_i + tol.
bool is_subinvariant_vector(const std::vector<double>& x, int n, double r,
                            double tol = 1e-12);

}  // namespace solkms::cycle
