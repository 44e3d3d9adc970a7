#pragma once

#include <map>
#include <string>
#include <utility>

#include "solkms/trig.hpp"

namespace solkms {

/// One level of the inductive system: rotation angle theta (nonzero) and the
/// covering degree N shared by the whole tower.
struct AlgebraLevel {
    int j;
    double theta;
    int N;

    friend bool operator==(const AlgebraLevel& a, const AlgebraLevel& b) {
        return a.j == b.j && a.theta == b.theta && a.N == b.N;
    }
};

AlgebraLevel make_level(int j, double theta, int N);

/// Finite sum of spanning terms s^m i(f) s^{*n} at a fixed level, in normal
/// form: one TrigPoly per (m, n) pair, zero polys pruned.
///
/// Multiplication follows the rewriting
///   s^m i(f) s^{*n} s^p i(g) s^{*q} =
///     s^m i(f (g . R^{-(n-p)})) s^{*(n-p+q)}     if n >= p
///     s^{m+p-n} i((f . R^{-(p-n)}) g) s^{*q}     if n < p
/// with R = R_theta, i.e. i(f) s = s i(f . R) read through the isometry s.
class ToeplitzElement {
  public:
    using Terms = std::map<std::pair<int, int>, TrigPoly>;

    ToeplitzElement(AlgebraLevel level, Terms terms);

    const AlgebraLevel& level() const { return level_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const ToeplitzElement& a, const ToeplitzElement& b) {
        return a.level_ == b.level_ && a.terms_ == b.terms_;
    }

  private:
    AlgebraLevel level_;
    Terms terms_;
};

ToeplitzElement elem_zero(const AlgebraLevel& level);
ToeplitzElement elem_identity(const AlgebraLevel& level);
/// The generating isometry s (term (1, 0) with f = 1).
ToeplitzElement elem_isometry(const AlgebraLevel& level);
/// i(f), the function-algebra copy.
ToeplitzElement elem_function(const AlgebraLevel& level, const TrigPoly& f);
ToeplitzElement elem_term(const AlgebraLevel& level, int m, const TrigPoly& f, int n);
/// The defect projection 1 - s s*.
ToeplitzElement gap_element(const AlgebraLevel& level);

ToeplitzElement elem_add(const ToeplitzElement& x, const ToeplitzElement& y);
ToeplitzElement elem_scale(const ToeplitzElement& x, std::complex<double> c);
ToeplitzElement elem_mul(const ToeplitzElement& x, const ToeplitzElement& y);
ToeplitzElement elem_adjoint(const ToeplitzElement& x);

/// Gauge dynamics at time t: term (m, n) picks up e^{i t (m-n) / N^j}.
ToeplitzElement apply_dynamics(const ToeplitzElement& x, double t);

/// Analytic continuation to t = i beta: term (m, n) scales by e^{-beta (m-n) / N^j}.
ToeplitzElement apply_dynamics_imaginary(const ToeplitzElement& x, double beta);

/// Level-raising embedding: (m, f, n) -> (N m, f . p_N, N n). `next` must be
/// the level above x's (N^2 next.theta = theta).
ToeplitzElement embed(const ToeplitzElement& x, const AlgebraLevel& next);

/// Level-j slice of the solenoid action: every f becomes f . R_{s_j}.
ToeplitzElement solenoid_act(const ToeplitzElement& x, double s_j);

/// max coefficient deviation between two elements over all shared term slots
double elem_distance(const ToeplitzElement& x, const ToeplitzElement& y);

/// Textual form: `+`-joined terms `S^m [k1:re,im; k2:re,im] S*^n`; `[]` is the
/// constant-1 function. print/parse round-trip bit-exactly on normal forms.
std::string print_element(const ToeplitzElement& x);
ToeplitzElement parse_element(const std::string& text, const AlgebraLevel& level);

}  // namespace solkms
