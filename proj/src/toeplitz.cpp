#include "solkms/toeplitz.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "solkms/errors.hpp"

namespace solkms {

AlgebraLevel make_level(int j, double theta, int N) {
    if (j < 0) throw std::invalid_argument("level index must be nonnegative");
    if (N < 2) throw std::invalid_argument("level requires N >= 2");
    if (theta == 0.0) {
        throw DegenerateThetaError("theta = 0 is the degenerate regime; levels require theta != 0");
    }
    return AlgebraLevel{j, theta, N};
}

ToeplitzElement::ToeplitzElement(AlgebraLevel level, Terms terms)
    : level_(level), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.first < 0 || it->first.second < 0) {
            throw std::invalid_argument("spanning-term powers must be nonnegative");
        }
        if (it->second.is_zero()) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

ToeplitzElement elem_zero(const AlgebraLevel& level) { return {level, {}}; }

ToeplitzElement elem_identity(const AlgebraLevel& level) {
    return {level, {{{0, 0}, TrigPoly::one()}}};
}

ToeplitzElement elem_isometry(const AlgebraLevel& level) {
    return {level, {{{1, 0}, TrigPoly::one()}}};
}

ToeplitzElement elem_function(const AlgebraLevel& level, const TrigPoly& f) {
    return {level, {{{0, 0}, f}}};
}

ToeplitzElement elem_term(const AlgebraLevel& level, int m, const TrigPoly& f, int n) {
    return {level, {{{m, n}, f}}};
}

ToeplitzElement gap_element(const AlgebraLevel& level) {
    return {level, {{{0, 0}, TrigPoly::one()}, {{1, 1}, TrigPoly::constant(-1.0)}}};
}

namespace {

void require_same_level(const ToeplitzElement& x, const ToeplitzElement& y, const char* op) {
    if (!(x.level() == y.level())) {
        throw LevelMismatchError(std::string(op) + ": operands live at different levels");
    }
}

}  // namespace

ToeplitzElement elem_add(const ToeplitzElement& x, const ToeplitzElement& y) {
    require_same_level(x, y, "elem_add");
    ToeplitzElement::Terms terms = x.terms();
    for (const auto& [key, f] : y.terms()) {
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms[key] = f;
        } else {
            it->second = trig_add(it->second, f);
        }
    }
    return {x.level(), std::move(terms)};
}

ToeplitzElement elem_scale(const ToeplitzElement& x, std::complex<double> c) {
    ToeplitzElement::Terms terms;
    for (const auto& [key, f] : x.terms()) terms[key] = trig_scale(f, c);
    return {x.level(), std::move(terms)};
}

ToeplitzElement elem_mul(const ToeplitzElement& x, const ToeplitzElement& y) {
    require_same_level(x, y, "elem_mul");
    const double gamma = x.level().theta;
    ToeplitzElement::Terms terms;
    for (const auto& [kx, f] : x.terms()) {
        const auto [m, n] = kx;
        for (const auto& [ky, g] : y.terms()) {
            const auto [p, q] = ky;
            std::pair<int, int> key;
            TrigPoly h;
            if (n >= p) {
                key = {m, n - p + q};
                h = trig_mul(f, trig_compose_rotation(g, -static_cast<double>(n - p) * gamma));
            } else {
                key = {m + p - n, q};
                h = trig_mul(trig_compose_rotation(f, -static_cast<double>(p - n) * gamma), g);
            }
            auto it = terms.find(key);
            if (it == terms.end()) {
                terms[key] = h;
            } else {
                it->second = trig_add(it->second, h);
            }
        }
    }
    return {x.level(), std::move(terms)};
}

ToeplitzElement elem_adjoint(const ToeplitzElement& x) {
    ToeplitzElement::Terms terms;
    for (const auto& [key, f] : x.terms()) {
        terms[{key.second, key.first}] = trig_conj(f);
    }
    return {x.level(), std::move(terms)};
}

namespace {

double level_weight(const AlgebraLevel& level) {
    return std::pow(static_cast<double>(level.N), level.j);
}

}  // namespace

ToeplitzElement apply_dynamics(const ToeplitzElement& x, double t) {
    const double w = t / level_weight(x.level());
    ToeplitzElement::Terms terms;
    for (const auto& [key, f] : x.terms()) {
        const double arg = w * (key.first - key.second);
        terms[key] = trig_scale(f, std::complex<double>(std::cos(arg), std::sin(arg)));
    }
    return {x.level(), std::move(terms)};
}

ToeplitzElement apply_dynamics_imaginary(const ToeplitzElement& x, double beta) {
    const double w = beta / level_weight(x.level());
    ToeplitzElement::Terms terms;
    for (const auto& [key, f] : x.terms()) {
        terms[key] = trig_scale(f, std::exp(-w * (key.first - key.second)));
    }
    return {x.level(), std::move(terms)};
}

ToeplitzElement embed(const ToeplitzElement& x, const AlgebraLevel& next) {
    const AlgebraLevel& cur = x.level();
    if (next.j != cur.j + 1 || next.N != cur.N) {
        throw LevelMismatchError("embed: target must be the level directly above");
    }
    const double n2 = static_cast<double>(next.N) * static_cast<double>(next.N);
    if (std::abs(n2 * next.theta - cur.theta) > 1e-12 * (1.0 + std::abs(cur.theta))) {
        throw LevelMismatchError("embed: target angle is not theta / N^2");
    }
    ToeplitzElement::Terms terms;
    for (const auto& [key, f] : x.terms()) {
        terms[{cur.N * key.first, cur.N * key.second}] = trig_compose_cover(f, cur.N);
    }
    return {next, std::move(terms)};
}

ToeplitzElement solenoid_act(const ToeplitzElement& x, double s_j) {
    ToeplitzElement::Terms terms;
    for (const auto& [key, f] : x.terms()) terms[key] = trig_compose_rotation(f, s_j);
    return {x.level(), std::move(terms)};
}

double elem_distance(const ToeplitzElement& x, const ToeplitzElement& y) {
    double d = 0.0;
    const TrigPoly zero;
    for (const auto& [key, f] : x.terms()) {
        auto it = y.terms().find(key);
        d = std::max(d, trig_distance(f, it == y.terms().end() ? zero : it->second));
    }
    for (const auto& [key, g] : y.terms()) {
        if (x.terms().find(key) == x.terms().end()) d = std::max(d, trig_distance(g, zero));
    }
    return d;
}

// ---- textual format ----

namespace {

void print_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string print_element(const ToeplitzElement& x) {
    if (x.terms().empty()) return "S^0 [0:0,0] S*^0";  // the zero element
    std::string out;
    bool first_term = true;
    for (const auto& [key, f] : x.terms()) {
        if (!first_term) out += " + ";
        first_term = false;
        out += "S^" + std::to_string(key.first) + " [";
        if (!(f == TrigPoly::one())) {
            bool first_coeff = true;
            for (const auto& [k, c] : f.coeffs()) {
                if (!first_coeff) out += "; ";
                first_coeff = false;
                out += std::to_string(k) + ":";
                print_double(out, c.real());
                out += ",";
                print_double(out, c.imag());
            }
        }
        out += "] S*^" + std::to_string(key.second);
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool eat(const char* token) {
        skip_ws();
        std::size_t len = std::char_traits<char>::length(token);
        if (text.compare(pos, len, token) == 0) {
            pos += len;
            return true;
        }
        return false;
    }
    void expect(const char* token) {
        if (!eat(token)) {
            throw ParseError("expected '" + std::string(token) + "' at offset " +
                             std::to_string(pos) + " in element text");
        }
    }
    int parse_int() {
        skip_ws();
        const char* start = text.c_str() + pos;
        char* end = nullptr;
        long v = std::strtol(start, &end, 10);
        if (end == start) throw ParseError("expected integer at offset " + std::to_string(pos));
        pos += static_cast<std::size_t>(end - start);
        return static_cast<int>(v);
    }
    double parse_double() {
        skip_ws();
        const char* start = text.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start) throw ParseError("expected number at offset " + std::to_string(pos));
        pos += static_cast<std::size_t>(end - start);
        return v;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
};

}  // namespace

ToeplitzElement parse_element(const std::string& text, const AlgebraLevel& level) {
    Cursor cur{text};
    ToeplitzElement::Terms terms;
    while (true) {
        cur.expect("S^");
        const int m = cur.parse_int();
        cur.expect("[");
        TrigPoly::Coeffs coeffs;
        cur.skip_ws();
        if (!cur.eat("]")) {
            while (true) {
                const int k = cur.parse_int();
                cur.expect(":");
                const double re = cur.parse_double();
                cur.expect(",");
                const double im = cur.parse_double();
                coeffs[k] += std::complex<double>(re, im);
                if (cur.eat("]")) break;
                cur.expect(";");
            }
        } else {
            coeffs[0] = 1.0;  // `[]` denotes the constant-1 function
        }
        cur.expect("S*^");
        const int n = cur.parse_int();
        if (m < 0 || n < 0) throw ParseError("spanning-term powers must be nonnegative");
        TrigPoly f{std::move(coeffs)};
        auto it = terms.find({m, n});
        if (it == terms.end()) {
            terms[{m, n}] = f;
        } else {
            it->second = trig_add(it->second, f);
        }
        if (cur.done()) break;
        cur.expect("+");
    }
    return {level, std::move(terms)};
}

}  // namespace solkms
