#pragma once

#include <set>

#include "ideals.hpp"

namespace quadlog {

struct UnitData {
    QuadElement eps;     /* fundamental unit, > 1 under the real embedding */
    int norm_sign = 1;   /* N(eps) = +-1 */
    unsigned period = 0; /* continued-fraction period length */
};

/*
 * Fundamental unit by the continued fraction of omega = (P0 + sqrt D)/2.
 * The first convergent h/k with |N(h - k*conj(omega))| = 1 is fundamental
 * for the maximal order; it is > 1 since conj(omega) < 0 < h, k.
 */
inline UnitData fundamental_unit(const QuadField& F, unsigned max_steps = 4000000) {
    if (F.imaginary()) throw Error("fundamental_unit: real fields only");
    const i64 D = F.D;
    const i64 s = isqrt(D);
    i64 P = F.om_tr, Q = 2;
    mpz_class h0 = 1, h1, k0 = 0, k1;
    i64 a0 = (P + s) / Q;
    h1 = a0;
    k1 = 1;
    for (unsigned i = 0; i < max_steps; ++i) {
        /* candidate u = h1 - k1*conj(omega) = (h1 - t*k1) + k1*omega */
        QuadElement u{F, h1 - F.om_tr * k1, k1};
        mpz_class N = u.norm();
        if (N == 1 || N == -1) {
            UnitData ud;
            ud.eps = u;
            ud.norm_sign = N == 1 ? 1 : -1;
            ud.period = i + 1;
            return ud;
        }
        P = a0 * Q - P;
        Q = (i64)((D - (i128)P * P) / Q);
        a0 = (P + s) / Q;
        mpz_class h2 = a0 * h1 + h0, k2 = a0 * k1 + k0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    }
    throw BoundExceeded("fundamental_unit: period exceeds step limit");
}

inline QuadElement unit_inverse(const UnitData& ud) {
    QuadElement c = ud.eps.conj();
    return ud.norm_sign == 1 ? c : -c;
}

/*
 * Narrow class number: reduced indefinite forms (|sqrt(D)-2|a|| < b < sqrt(D))
 * partitioned into rho-cycles.
 */
namespace detail {

struct IForm {
    i64 a, b, c;
    bool operator<(const IForm& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
};

inline i64 iform_c(i64 a, i64 b, i64 D) {
    i128 num = (i128)b * b - D;
    assert(num % (4 * (i128)a) == 0);
    return (i64)(num / (4 * (i128)a));
}

/* rho for reduced indefinite forms */
inline IForm iform_rho(const IForm& f, i64 D, i64 sD) {
    i64 C = f.c;
    i64 ac = C < 0 ? -C : C;
    /* b' = -b mod 2|c|, shifted into (sqrt(D)-2|c|, sqrt(D)) */
    i64 two = 2 * ac;
    i64 r = ((-f.b) % two + two) % two;
    i64 lo = sD - two; /* want lo < b' <= sD */
    i64 bp = r + two * ((lo - r) / two);
    while (bp <= lo) bp += two;
    while (bp > sD) bp -= two;
    return {C, bp, iform_c(C, bp, D)};
}

} // namespace detail

inline u64 narrow_class_number(const QuadField& F) {
    if (F.imaginary()) throw Error("narrow_class_number: real fields only");
    const i64 D = F.D;
    const i64 sD = isqrt(D);
    std::set<detail::IForm> forms;
    i64 b0 = (D % 2 == 0) ? 2 : 1;
    for (i64 b = b0; b <= sD; b += 2) {
        i64 M4 = D - b * b;
        if (M4 % 4 != 0) continue;
        i64 M = M4 / 4; /* = |a| |c| */
        for (i64 al = 1; al * al <= M; ++al) {
            if (M % al != 0) continue;
            i64 cl = M / al;
            for (i64 aa : {al, cl}) {
                i64 cc = M / aa;
                /* |sqrt(D) - 2|a|| < b, decided against floor(sqrt(D)) */
                bool red = (2 * aa - b <= sD) && (sD < 2 * aa + b);
                if (red) {
                    forms.insert({aa, b, -cc});
                    forms.insert({-aa, b, cc});
                }
                if (al == cl) break;
            }
        }
    }
    u64 cycles = 0;
    std::set<detail::IForm> seen;
    for (const auto& f : forms) {
        if (seen.count(f)) continue;
        ++cycles;
        detail::IForm g = f;
        do {
            seen.insert(g);
            g = detail::iform_rho(g, D, sD);
        } while (!(g.a == f.a && g.b == f.b));
    }
    return cycles;
}

inline u64 wide_class_number(const QuadField& F, const UnitData& ud) {
    u64 hn = narrow_class_number(F);
    return ud.norm_sign == -1 ? hn : hn / 2;
}

/*
 * Reduction walk on a real-quadratic ideal with element tracking.  The pair
 * (e1, e2) spans the ideal throughout (SL2 column ops only); once the
 * attached form has |A| = 1, e1 is a generator.  Returns false when the
 * reduced cycle closes without hitting the unit ideal.
 */
inline bool real_reduce_walk(const QuadIdeal& I, QuadElement* gen_out,
                             unsigned max_steps = 200000) {
    const QuadField& F = I.F;
    const i64 D = F.D;
    const i64 sD = isqrt(D);
    mpz_class NI = I.a; /* primitive part norm */
    QuadElement e1{F, I.a, 0}, e2{F, I.b, 1};
    auto formA = [&](const QuadElement& x) { return mpz_class(x.norm() / NI); };
    auto formB = [&](const QuadElement& x, const QuadElement& y) {
        /* Tr(x * conj(y)) / NI */
        QuadElement m = x * y.conj();
        return mpz_class(m.trace() / NI);
    };
    std::set<std::pair<i64, i64>> seen;
    for (unsigned step = 0; step < max_steps; ++step) {
        mpz_class A = formA(e1), B = formB(e1, e2), C = formA(e2);
        if (A == 1 || A == -1) {
            /* N(e1) = +-N(I), so e1 generates the primitive part */
            if (gen_out) *gen_out = e1 * QuadElement{F, I.content, 0};
            return true;
        }
        mpz_class absA = abs(A);
        bool is_red = B > 0 && B <= sD && 2 * absA - B <= sD && sD < 2 * absA + B;
        if (is_red) {
            auto key = std::make_pair(mpz_get_si(A.get_mpz_t()), mpz_get_si(B.get_mpz_t()));
            if (seen.count(key)) return false; /* cycle closed, not principal */
            seen.insert(key);
        }
        mpz_class absC = abs(C);
        /* choose B' = -B + 2|C| k in the target window: the reduced window
           (sqrt(D)-2|C|, sqrt(D)] once |C| is small, else (-|C|, |C|] */
        mpz_class two = 2 * absC;
        mpz_class hi = absC < sD ? mpz_class(sD) : absC;
        mpz_class k, num = hi + B;
        mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), two.get_mpz_t());
        mpz_class Bp = -B + two * k;
        while (Bp > hi) { Bp -= two; --k; }
        while (Bp <= hi - two) { Bp += two; ++k; }
        /* q with sign of C: B' = 2qC - B; basis op (e1,e2) <- (e2, q e2 - e1) */
        mpz_class q = C < 0 ? mpz_class(-k) : k;
        QuadElement next{F, q * e2.a - e1.a, q * e2.b - e1.b};
        e1 = e2;
        e2 = next;
    }
    throw BoundExceeded("real_reduce_walk: step limit");
}

inline bool is_wide_principal(const QuadIdeal& I) { return real_reduce_walk(I, nullptr); }

/* order of the ideal class in the (wide) class group */
inline u64 wide_class_order(const QuadIdeal& P, u64 h) {
    for (u64 d : divisors_sorted(h))
        if (is_wide_principal(ideal_pow(P, d))) return d;
    throw Error("wide_class_order: order does not divide h");
}

/* Reduce |trace| over the eps-orbit; canonical sign: trace >= 0 (omega
   coefficient > 0 when the trace vanishes). */
inline QuadElement reduce_by_units(QuadElement g, const UnitData& ud) {
    QuadElement einv = unit_inverse(ud);
    auto tr_abs = [](const QuadElement& x) { return mpz_class(abs(x.trace())); };
    bool moved = true;
    while (moved) {
        moved = false;
        QuadElement g1 = g * ud.eps;
        QuadElement g2 = g * einv;
        if (tr_abs(g1) < tr_abs(g)) { g = g1; moved = true; }
        else if (tr_abs(g2) < tr_abs(g)) { g = g2; moved = true; }
    }
    if (g.trace() < 0 || (g.trace() == 0 && g.b < 0)) g = -g;
    return g;
}

/* Generator of a principal ideal of a real quadratic field, normalized to
   the minimal-|trace| representative of its unit orbit. */
inline QuadElement real_generator(const QuadIdeal& I, const UnitData& ud) {
    QuadElement g;
    if (!real_reduce_walk(I, &g)) throw NonPrincipal{};
    return reduce_by_units(g, ud);
}

} // namespace quadlog
