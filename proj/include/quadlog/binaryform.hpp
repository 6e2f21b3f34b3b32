#pragma once

#include <cassert>
#include <functional>
#include <tuple>
#include <vector>

#include "quadfield.hpp"

namespace quadlog {

/*
 * Positive definite binary quadratic forms (a,b,c) of fundamental
 * discriminant D = b^2 - 4ac < 0.  Forms of fundamental discriminant are
 * automatically primitive.  64-bit coefficients with 128-bit intermediates;
 * fine for the |D| <= 1e8 desk range this library targets.
 */
struct BinaryForm {
    i64 a = 1, b = 0, c = 0;
    i64 D = 0;

    bool is_identity() const { return a == 1; }

    bool operator==(const BinaryForm& o) const { return a == o.a && b == o.b; }
    bool operator<(const BinaryForm& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
};

inline i64 form_c(i64 a, i64 b, i64 D) {
    i128 num = (i128)b * b - D;
    assert(num % (4 * (i128)a) == 0);
    return (i64)(num / (4 * (i128)a));
}

inline BinaryForm identity_form(i64 D) {
    i64 b0 = (((D % 2) + 2) % 2 == 0) ? 0 : 1;
    return {1, b0, form_c(1, b0, D), D};
}

inline void normalize(BinaryForm& f) {
    /* bring b into (-a, a] */
    i64 twoa = 2 * f.a;
    i64 r = ((f.b % twoa) + twoa) % twoa; /* [0, 2a) */
    if (r > f.a) r -= twoa;
    f.b = r;
    f.c = form_c(f.a, f.b, f.D);
}

inline void reduce(BinaryForm& f) {
    normalize(f);
    while (f.a > f.c || (f.a == f.c && f.b < 0)) {
        /* rho step */
        i64 a2 = f.c;
        i64 twoa = 2 * a2;
        i64 r = ((-f.b % twoa) + twoa) % twoa;
        if (r > a2) r -= twoa;
        f.a = a2;
        f.b = r;
        f.c = form_c(f.a, f.b, f.D);
    }
}

inline BinaryForm inverse(const BinaryForm& f) {
    BinaryForm g{f.a, -f.b, f.c, f.D};
    reduce(g);
    return g;
}

namespace detail {
inline i64 xgcd(i64 a, i64 b, i64& u, i64& v) {
    i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b; a = b; b = t;
        t = u0 - q * u1; u0 = u1; u1 = t;
        t = v0 - q * v1; v0 = v1; v1 = t;
    }
    if (a < 0) { a = -a; u0 = -u0; v0 = -v0; }
    u = u0; v = v0;
    return a;
}
inline i64 mod_pos(i128 x, i64 m) {
    i128 r = x % m;
    if (r < 0) r += m;
    return (i64)r;
}
} // namespace detail

/* Gauss composition (Cohen, Alg. 5.4.7), followed by reduction. */
inline BinaryForm compose(BinaryForm f1, BinaryForm f2) {
    assert(f1.D == f2.D);
    if (f1.a > f2.a) std::swap(f1, f2);
    i64 s = (f1.b + f2.b) / 2;
    i64 n = f2.b - s;
    i64 y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        i64 u, v;
        d = detail::xgcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (d != 0 && s % d == 0) {
        x2 = 0;
        y2 = -1;
        d1 = d;
    } else {
        i64 u, v;
        d1 = detail::xgcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    i64 v1 = f1.a / d1;
    i64 v2 = f2.a / d1;
    i64 r = detail::mod_pos((i128)detail::mod_pos((i128)y1 * y2, v1) * detail::mod_pos(n, v1)
                            - (i128)detail::mod_pos(x2, v1) * detail::mod_pos(f2.c, v1),
                            v1);
    BinaryForm f3;
    f3.D = f1.D;
    f3.a = v1 * v2;
    f3.b = f2.b + 2 * v2 * r;
    i128 num = (i128)f2.c * d1 + (i128)r * (f2.b + (i128)v2 * r);
    assert(num % v1 == 0);
    f3.c = (i64)(num / v1);
    reduce(f3);
    return f3;
}

inline BinaryForm form_pow(const BinaryForm& f, u64 e) {
    BinaryForm r = identity_form(f.D), base = f;
    reduce(base);
    while (e) {
        if (e & 1) r = compose(r, base);
        base = compose(base, base);
        e >>= 1;
    }
    return r;
}

/*
 * Count (and optionally collect) the reduced forms of discriminant D < 0:
 * |b| <= a <= c, b = D mod 2, with b >= 0 when |b| = a or a = c.
 * The inner loop tracks (b^2 - D) mod 4a incrementally, no division.
 */
inline u64 enumerate_reduced_forms(i64 D,
                                   const std::function<void(i64, i64, i64)>* sink = nullptr) {
    assert(D < 0);
    i64 n = -D;
    u64 count = 0;
    i64 b0 = (n & 1) ? 1 : 0;
    for (i64 a = 1; 3 * a * a <= n; ++a) {
        i64 m4 = 4 * a;
        i64 r = (i64)(((i128)b0 * b0 + n) % m4);
        for (i64 b = b0; b <= a; b += 2) {
            if (r == 0) {
                i64 c = (i64)((((i128)b * b + n)) / m4);
                if (c >= a) {
                    bool ambig = (b == 0 || b == a || a == c);
                    count += ambig ? 1 : 2;
                    if (sink) {
                        (*sink)(a, b, c);
                        if (!ambig) (*sink)(a, -b, c);
                    }
                }
            }
            r += 4 * b + 4; /* (b+2)^2 - b^2 */
            while (r >= m4) r -= m4;
        }
    }
    return count;
}

} // namespace quadlog
