#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "errors.hpp"
#include "numutil.hpp"

namespace quadlog {

enum class Signature { imaginary, real };

/*
 * Maximal order of Q(sqrt(d)), d = m (real) or -m (imaginary), m squarefree.
 * Integral basis (1, omega) with
 *   omega = (1+sqrt(d))/2  if d = 1 mod 4   (D = d),
 *   omega = sqrt(d)        otherwise        (D = 4d).
 * omega satisfies x^2 - om_tr*x + om_nm = 0.
 */
struct QuadField {
    i64 m = 0;
    Signature sig = Signature::imaginary;
    i64 d = 0;       /* signed radicand: -m or m */
    i64 D = 0;       /* fundamental discriminant */
    bool half = false; /* omega = (1+sqrt d)/2 */
    i64 om_tr = 0;
    i64 om_nm = 0;

    bool imaginary() const { return sig == Signature::imaginary; }

    bool operator==(const QuadField& o) const { return D == o.D; }
};

inline QuadField make_field(i64 m, Signature sig) {
    if (!is_squarefree(m)) throw NotSquarefree(m);
    QuadField F;
    F.m = m;
    F.sig = sig;
    F.d = sig == Signature::imaginary ? -m : m;
    bool one_mod4 = ((F.d % 4) + 4) % 4 == 1;
    F.half = one_mod4;
    F.D = one_mod4 ? F.d : 4 * F.d;
    F.om_tr = one_mod4 ? 1 : 0;
    F.om_nm = one_mod4 ? (1 - F.d) / 4 : -F.d;
    return F;
}

/* Element a + b*omega of the maximal order (or its fraction field when den=2
   vectors are produced by trace formulas; the stored coords are always exact). */
struct QuadElement {
    QuadField F;
    mpz_class a, b;

    QuadElement() = default;
    QuadElement(const QuadField& f, mpz_class a_, mpz_class b_)
        : F(f), a(std::move(a_)), b(std::move(b_)) {}

    static QuadElement one(const QuadField& f) { return {f, 1, 0}; }
    static QuadElement omega(const QuadField& f) { return {f, 0, 1}; }

    bool is_zero() const { return a == 0 && b == 0; }

    mpz_class trace() const { return 2 * a + F.om_tr * b; }

    mpz_class norm() const {
        return a * a + F.om_tr * a * b + F.om_nm * b * b;
    }

    QuadElement conj() const {
        /* conj(omega) = om_tr - omega */
        return {F, a + F.om_tr * b, -b};
    }

    QuadElement operator-() const { return {F, -a, -b}; }

    QuadElement operator+(const QuadElement& o) const { return {F, a + o.a, b + o.b}; }
    QuadElement operator-(const QuadElement& o) const { return {F, a - o.a, b - o.b}; }

    QuadElement operator*(const QuadElement& o) const {
        /* omega^2 = om_tr*omega - om_nm */
        mpz_class bb = b * o.b;
        return {F, a * o.a - F.om_nm * bb, a * o.b + b * o.a + F.om_tr * bb};
    }

    QuadElement pow(unsigned long e) const {
        QuadElement r = one(F), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const QuadElement& o) const { return a == o.a && b == o.b; }

    /* Coordinates (u, v, den) with element = (u + v*sqrt(d))/den, den in {1,2}. */
    void sqrt_coords(mpz_class& u, mpz_class& v, int& den) const {
        if (F.half) {
            u = 2 * a + b;
            v = b;
            den = 2;
        } else {
            u = a;
            v = b;
            den = 1;
        }
    }

    std::string str() const {
        mpz_class u, v;
        int den;
        sqrt_coords(u, v, den);
        std::string rad = "sqrt(" + std::to_string(F.d) + ")";
        std::string s;
        if (den == 1) {
            s = u.get_str();
            if (v != 0) s += (v > 0 ? "+" : "") + v.get_str() + "*" + rad;
        } else {
            s = "(" + u.get_str();
            if (v != 0) s += (v > 0 ? "+" : "") + v.get_str() + "*" + rad;
            s += ")/2";
        }
        return s;
    }
};

inline std::ostream& operator<<(std::ostream& os, const QuadElement& z) {
    return os << z.str();
}

enum class SplitKind { Split, Inert, Ramified };

inline SplitKind split_kind(const QuadField& F, u64 p) {
    if (p == 2) throw EvenPrime{};
    int k = kronecker(F.D, (i64)p);
    if (k == 1) return SplitKind::Split;
    if (k == 0) return SplitKind::Ramified;
    return SplitKind::Inert;
}

} // namespace quadlog
