#include "solkms/circle.hpp"

#include <algorithm>
#include <stdexcept>

namespace solkms {

Arc::Arc(CirclePoint start, double length) : start_(start), length_(length) {
    if (!(length > 0.0) || length > 1.0) {
        throw std::invalid_argument("Arc length must lie in (0,1]");
    }
}

bool Arc::contains(CirclePoint t) const {
    for (const auto& f : fragments()) {
        if (t.value() >= f.lo && t.value() < f.hi) return true;
    }
    return false;
}

std::vector<Arc::Fragment> Arc::fragments() const {
    double lo = start_.value();
    double hi = lo + length_;
    if (hi <= 1.0) return {{lo, hi}};
    if (lo == 0.0) return {{0.0, 1.0}};  // full circle started at 0
    return {{lo, 1.0}, {0.0, hi - 1.0}};
}

CirclePoint rotate(CirclePoint t, double gamma) {
    return CirclePoint(t.value() - gamma);
}

Arc rotate_arc(const Arc& a, double gamma) {
    return Arc(rotate(a.start(), gamma), a.length());
}

CirclePoint cover(CirclePoint t, int N) {
    if (N < 2) throw std::invalid_argument("cover requires N >= 2");
    return CirclePoint(static_cast<double>(N) * t.value());
}

std::vector<Arc> cover_preimage_arcs(const Arc& a, int N) {
    if (N < 2) throw std::invalid_argument("cover_preimage_arcs requires N >= 2");
    std::vector<Arc> out;
    out.reserve(static_cast<std::size_t>(N));
    const double s = a.start().value();
    const double len = a.length() / N;
    for (int i = 0; i < N; ++i) {
        out.emplace_back(CirclePoint((s + i) / N), len);
    }
    return out;
}

std::vector<Arc> dyadic_partition(int n) {
    if (n < 0) throw std::invalid_argument("dyadic_partition requires n >= 0");
    const std::int64_t k = std::int64_t{1} << n;
    std::vector<Arc> out;
    out.reserve(static_cast<std::size_t>(k));
    const double len = 1.0 / static_cast<double>(k);
    for (std::int64_t j = 0; j < k; ++j) {
        out.emplace_back(CirclePoint(static_cast<double>(j) * len), len);
    }
    return out;
}

std::vector<int> baseN_digits(CirclePoint t, int N, int K) {
    if (N < 2) throw std::invalid_argument("baseN_digits requires N >= 2");
    if (K < 1) throw std::invalid_argument("baseN_digits requires K >= 1");
    std::vector<int> digits(static_cast<std::size_t>(K));
    double rem = t.value();
    for (int i = 0; i < K; ++i) {
        double scaled = rem * N;
        int d = static_cast<int>(std::floor(scaled));
        d = std::clamp(d, 0, N - 1);
        digits[static_cast<std::size_t>(i)] = d;
        rem = scaled - d;
        if (rem < 0.0) rem = 0.0;
    }
    return digits;
}

SimpleFunction::SimpleFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() || breakpoints_.front() != 0.0) {
        throw std::invalid_argument("SimpleFunction breakpoints must start at 0");
    }
    if (breakpoints_.size() != values_.size()) {
        throw std::invalid_argument("SimpleFunction needs one value per piece");
    }
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1])) {
            throw std::invalid_argument("SimpleFunction breakpoints must increase");
        }
    }
    if (breakpoints_.back() >= 1.0) {
        throw std::invalid_argument("SimpleFunction breakpoints must stay below 1");
    }
}

double SimpleFunction::eval(CirclePoint t) const {
    // last breakpoint <= t
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t.value());
    std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return values_[idx];
}

}  // namespace solkms
