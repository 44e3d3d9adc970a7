#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace solkms {

/// A point of the circle R/Z, stored as its representative in [0,1).
class CirclePoint {
  public:
    CirclePoint() : v_(0.0) {}
    explicit CirclePoint(double x) : v_(wrap(x)) {}

    double value() const { return v_; }

    // x mod 1, result guaranteed in [0,1).
    static double wrap(double x) {
        double v = x - std::floor(x);
        if (v >= 1.0) v -= 1.0;
        if (v < 0.0) v = 0.0;
        return v;
    }

    friend bool operator==(CirclePoint a, CirclePoint b) { return a.v_ == b.v_; }

  private:
    double v_;
};

/// Half-open arc [start, start+length) mod 1 with length in (0,1].
///
/// Wrapping arcs are legal; fragments() yields the one or two non-wrapping
/// [lo,hi) intervals inside [0,1] that make up the arc.
class Arc {
  public:
    Arc(CirclePoint start, double length);

    CirclePoint start() const { return start_; }
    double length() const { return length_; }

    bool contains(CirclePoint t) const;

    struct Fragment {
        double lo, hi;  // 0 <= lo < hi <= 1
    };
    std::vector<Fragment> fragments() const;

  private:
    CirclePoint start_;
    double length_;
};

/// R_gamma(t) = t - gamma (mod 1).
CirclePoint rotate(CirclePoint t, double gamma);

/// Image of an arc under R_gamma (start shifts by -gamma; length is preserved).
Arc rotate_arc(const Arc& a, double gamma);

/// p_N(t) = N t (mod 1). Requires N >= 2.
CirclePoint cover(CirclePoint t, int N);

/// The N disjoint arcs [(s+i)/N, (s+i+len)/N), i = 0..N-1, whose union is
/// the full preimage of `a` under p_N. Total length equals a.length().
std::vector<Arc> cover_preimage_arcs(const Arc& a, int N);

/// The 2^n arcs [j/2^n, (j+1)/2^n), in order of j.
std::vector<Arc> dyadic_partition(int n);

/// First K base-N digits a_1..a_K of t, greedy (terminating expansions get the
/// all-zero tail). The truncation sum_{i<=K} a_i/N^i sits within N^-K below t.
std::vector<int> baseN_digits(CirclePoint t, int N, int K);

/// Piecewise-constant function on [0,1); piece i is [breakpoints[i], breakpoints[i+1])
/// with breakpoints[0] == 0 and an implicit final breakpoint at 1.
class SimpleFunction {
  public:
    SimpleFunction(std::vector<double> breakpoints, std::vector<double> values);

    double eval(CirclePoint t) const;
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t pieces() const { return values_.size(); }

  private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

}  // namespace solkms
