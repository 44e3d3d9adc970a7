#pragma once

#include <complex>
#include <map>

#include "solkms/circle.hpp"

namespace solkms {

/// Finite Fourier series f(t) = sum_k c_k e^{2 pi i k t}, k in [-K, K].
///
/// Coefficients are held sparsely and exact-zero entries are pruned, so two
/// polys built along different routes compare coefficient-by-coefficient.
/// Products grow the degree; crossing the cap throws DegreeCapError rather
/// than truncating.
class TrigPoly {
  public:
    using Coeffs = std::map<int, std::complex<double>>;

    TrigPoly() = default;
    explicit TrigPoly(Coeffs coeffs);

    static TrigPoly zero() { return TrigPoly(); }
    static TrigPoly constant(std::complex<double> c);
    static TrigPoly one() { return constant(1.0); }
    /// e^{2 pi i k t}
    static TrigPoly harmonic(int k, std::complex<double> c = 1.0);

    static int degree_cap();
    static void set_degree_cap(int cap);

    const Coeffs& coeffs() const { return coeffs_; }
    std::complex<double> coeff(int k) const;
    int degree() const;  // max |k| with c_k != 0; 0 for the zero poly
    bool is_zero() const { return coeffs_.empty(); }

    std::complex<double> eval(CirclePoint t) const;

    friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

  private:
    Coeffs coeffs_;
};

TrigPoly trig_add(const TrigPoly& f, const TrigPoly& g);
TrigPoly trig_scale(const TrigPoly& f, std::complex<double> c);
TrigPoly trig_mul(const TrigPoly& f, const TrigPoly& g);
TrigPoly trig_conj(const TrigPoly& f);
inline std::complex<double> trig_eval(const TrigPoly& f, CirclePoint t) { return f.eval(t); }

/// f compose R_gamma; coefficient transform c_k -> c_k e^{-2 pi i k gamma}.
TrigPoly trig_compose_rotation(const TrigPoly& f, double gamma);

/// f compose p_N; coefficient at frequency k moves to frequency N k.
TrigPoly trig_compose_cover(const TrigPoly& f, int N);

/// max_k |a_k - b_k| over the union of supports
double trig_distance(const TrigPoly& a, const TrigPoly& b);

}  // namespace solkms
