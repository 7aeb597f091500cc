#pragma once

#include <string>
#include <utility>

#include "loopwalk/polynomial.hpp"

namespace loopwalk {

// Exact rational function of the single variable t. Canonical form:
// gcd(num, den) = 1 and den monic, so structural equality is semantic
// equality. The zero function is 0/1.
class RatFunc {
public:
    RatFunc() : den_(Poly::constant(Rational(1))) {}

    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero())
            throw DivisionByZeroFunction("rational function with zero denominator");
        normalize();
    }

    static RatFunc constant(const Rational& value) {
        RatFunc f;
        f.num_ = Poly::constant(value);
        return f;
    }

    static RatFunc variable() {
        RatFunc f;
        f.num_ = Poly::variable();
        return f;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    RatFunc operator-() const {
        RatFunc r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& f, const RatFunc& g) {
        return RatFunc(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
    }

    friend RatFunc operator-(const RatFunc& f, const RatFunc& g) { return f + (-g); }

    friend RatFunc operator*(const RatFunc& f, const RatFunc& g) {
        return RatFunc(f.num_ * g.num_, f.den_ * g.den_);
    }

    friend RatFunc operator/(const RatFunc& f, const RatFunc& g) {
        if (g.is_zero())
            throw DivisionByZeroFunction("division by the zero function");
        return RatFunc(f.num_ * g.den_, f.den_ * g.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& f, const RatFunc& g) = default;

    // Evaluation at a rational point outside the poles.
    Rational operator()(const Rational& x) const {
        Rational d = den_(x);
        if (d == 0) throw PoleAtZero("evaluation at a pole: t = " + rational_str(x));
        return num_(x) / d;
    }

    std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(Rational(1));
            return;
        }
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::divmod(num_, g).first;
            den_ = Poly::divmod(den_, g).first;
        }
        Rational lead = den_.leading();
        if (lead != 1) {
            Rational inv = Rational(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_;
    Poly den_;
};

// Geometric-series closure 1/(1 - f) of the weight f.
inline RatFunc star(const RatFunc& f) {
    RatFunc denom = RatFunc::constant(Rational(1)) - f;
    if (denom.is_zero())
        throw StarDiverges("star of a function identically equal to 1");
    return RatFunc::constant(Rational(1)) / denom;
}

// lim_{t -> 0} f(t) for finite limits; after full cancellation this is just
// num(0)/den(0), and den(0) = 0 means a genuine pole.
inline Rational limit_at_zero(const RatFunc& f) {
    Rational d = f.den().coefficient(0);
    if (d == 0) throw PoleAtZero("pole at t = 0: " + f.str());
    return f.num().coefficient(0) / d;
}

} // namespace loopwalk
