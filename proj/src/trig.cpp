#include "solkms/trig.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "solkms/errors.hpp"

namespace solkms {

namespace {
int g_degree_cap = 64;

void check_cap(int k) {
    if (std::abs(k) > g_degree_cap) {
        throw DegreeCapError("TrigPoly frequency " + std::to_string(k) +
                             " exceeds degree cap " + std::to_string(g_degree_cap));
    }
}
}  // namespace

int TrigPoly::degree_cap() { return g_degree_cap; }

void TrigPoly::set_degree_cap(int cap) {
    if (cap < 1) throw std::invalid_argument("degree cap must be positive");
    g_degree_cap = cap;
}

TrigPoly::TrigPoly(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        check_cap(it->first);
        if (it->second == std::complex<double>(0.0, 0.0)) {
            it = coeffs_.erase(it);
        } else {
            ++it;
        }
    }
}

TrigPoly TrigPoly::constant(std::complex<double> c) {
    Coeffs m;
    if (c != std::complex<double>(0.0, 0.0)) m[0] = c;
    return TrigPoly(std::move(m));
}

TrigPoly TrigPoly::harmonic(int k, std::complex<double> c) {
    Coeffs m;
    if (c != std::complex<double>(0.0, 0.0)) m[k] = c;
    return TrigPoly(std::move(m));
}

std::complex<double> TrigPoly::coeff(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

int TrigPoly::degree() const {
    int d = 0;
    for (const auto& [k, c] : coeffs_) d = std::max(d, std::abs(k));
    return d;
}

std::complex<double> TrigPoly::eval(CirclePoint t) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [k, c] : coeffs_) {
        double arg = 2.0 * std::numbers::pi * k * t.value();
        acc += c * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return acc;
}

TrigPoly trig_add(const TrigPoly& f, const TrigPoly& g) {
    TrigPoly::Coeffs m = f.coeffs();
    for (const auto& [k, c] : g.coeffs()) m[k] += c;
    return TrigPoly(std::move(m));
}

TrigPoly trig_scale(const TrigPoly& f, std::complex<double> c) {
    TrigPoly::Coeffs m;
    for (const auto& [k, a] : f.coeffs()) m[k] = a * c;
    return TrigPoly(std::move(m));
}

TrigPoly trig_mul(const TrigPoly& f, const TrigPoly& g) {
    TrigPoly::Coeffs m;
    for (const auto& [k1, c1] : f.coeffs()) {
        for (const auto& [k2, c2] : g.coeffs()) {
            check_cap(k1 + k2);
            m[k1 + k2] += c1 * c2;
        }
    }
    return TrigPoly(std::move(m));
}

TrigPoly trig_conj(const TrigPoly& f) {
    TrigPoly::Coeffs m;
    for (const auto& [k, c] : f.coeffs()) m[-k] = std::conj(c);
    return TrigPoly(std::move(m));
}

TrigPoly trig_compose_rotation(const TrigPoly& f, double gamma) {
    TrigPoly::Coeffs m;
    for (const auto& [k, c] : f.coeffs()) {
        double arg = -2.0 * std::numbers::pi * k * gamma;
        m[k] = c * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return TrigPoly(std::move(m));
}

TrigPoly trig_compose_cover(const TrigPoly& f, int N) {
    if (N < 2) throw std::invalid_argument("trig_compose_cover requires N >= 2");
    TrigPoly::Coeffs m;
    for (const auto& [k, c] : f.coeffs()) {
        check_cap(N * k);
        m[N * k] = c;
    }
    return TrigPoly(std::move(m));
}

double trig_distance(const TrigPoly& a, const TrigPoly& b) {
    double d = 0.0;
    for (const auto& [k, c] : a.coeffs()) d = std::max(d, std::abs(c - b.coeff(k)));
    for (const auto& [k, c] : b.coeffs()) d = std::max(d, std::abs(c - a.coeff(k)));
    return d;
}

}  // namespace solkms
