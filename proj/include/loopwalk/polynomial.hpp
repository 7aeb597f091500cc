#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "loopwalk/rational.hpp"

namespace loopwalk {

// Univariate polynomial in t over exact rationals, coefficients stored in
// ascending degree. The zero polynomial is the empty coefficient list; a
// nonzero polynomial always has a nonzero last coefficient.
class Poly {
public:
    Poly() = default;

    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const Rational& value) {
        return value == 0 ? Poly() : Poly({value});
    }

    static Poly variable() { return Poly({Rational(0), Rational(1)}); }

    bool is_zero() const { return c_.empty(); }

    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const std::vector<Rational>& coefficients() const { return c_; }

    Rational coefficient(std::size_t k) const {
        return k < c_.size() ? c_[k] : Rational(0);
    }

    const Rational& leading() const { return c_.back(); }

    // Horner evaluation.
    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& coeff : r.c_) coeff = -coeff;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coefficient(i) + b.coefficient(i);
        return Poly(std::move(out));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(out));
    }

    friend Poly operator*(const Poly& a, const Rational& s) {
        if (s == 0) return Poly();
        Poly r(a);
        for (auto& coeff : r.c_) coeff *= s;
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) = default;

    // Exact long division: a = q*b + r with deg(r) < deg(b). b must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZeroFunction("polynomial division by zero");
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo;
        if (rem.size() >= b.c_.size()) quo.assign(rem.size() - b.c_.size() + 1, Rational(0));
        while (rem.size() >= b.c_.size() && !rem.empty()) {
            Rational factor = rem.back() / b.leading();
            std::size_t shift = rem.size() - b.c_.size();
            quo[shift] = factor;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                rem[shift + i] -= factor * b.c_[i];
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    Poly monic() const {
        if (is_zero()) return Poly();
        return *this * (Rational(1) / leading());
    }

    // Ascending-power rendering, e.g. "1/2 - t + 3*t^2".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            Rational coeff = c_[i];
            if (out.empty()) {
                if (coeff < 0) { out += "-"; coeff = -coeff; }
            } else {
                out += coeff < 0 ? " - " : " + ";
                if (coeff < 0) coeff = -coeff;
            }
            bool unit = coeff == 1 && i > 0;
            if (!unit) out += rational_str(coeff);
            if (i > 0) {
                if (!unit) out += "*";
                out += "t";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

// Monic Euclidean gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = Poly::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

} // namespace loopwalk
