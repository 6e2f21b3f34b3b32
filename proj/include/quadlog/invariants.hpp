#pragma once

#include "ideals.hpp"
#include "padic.hpp"

namespace quadlog {

/*
 * The fundamental p-unit bundle of a totally p-adic imaginary quadratic
 * field: h = order of cl(p-frak), x with p-frak^h = (x), h_k, and
 * X = x^{h_k/h} with p-frak^{h_k} = (X).
 */
struct PUnitRecord {
    QuadField F;
    u64 p = 3;
    u64 h = 1;
    u64 h_k = 1;
    QuadIdeal frak_p;   /* the chosen split prime above p */
    QuadElement x;      /* generator of frak_p^h, omega-coefficient >= 0 */
    QuadElement X;      /* = x^{h_k/h} */
};

inline u64 order_of_class(const QuadIdeal& P, u64 h_k) {
    BinaryForm f = P.to_form();
    reduce(f);
    if (f.is_identity()) return 1;
    for (u64 d : divisors_sorted(h_k))
        if (d > 1 && form_pow(f, d).is_identity()) return d;
    throw Error("order_of_class: no divisor of h_k is principal");
}

/* generator of frak_p^k via Hensel lifting plus lattice reduction */
inline QuadElement prime_power_generator(const QuadIdeal& P, u64 p, unsigned long k) {
    QuadIdeal I = prime_power_ideal(P.F, p, P.b, k);
    return principal_generator(I);
}

inline PUnitRecord fundamental_p_unit(const QuadField& F, u64 p, u64 h_k = 0) {
    if (split_kind(F, p) != SplitKind::Split) throw NotSplit(F.m, p);
    PUnitRecord rec;
    rec.F = F;
    rec.p = p;
    rec.h_k = h_k ? h_k : class_number(F);
    rec.frak_p = primes_above(F, p).first;
    rec.h = order_of_class(rec.frak_p, rec.h_k);
    rec.x = prime_power_generator(rec.frak_p, p, rec.h);
    rec.X = rec.x.pow(rec.h_k / rec.h);
    return rec;
}

/* conjugate record (frak_p replaced by its conjugate) for invariance checks */
inline PUnitRecord conjugate_record(const PUnitRecord& rec) {
    PUnitRecord c = rec;
    c.frak_p = rec.frak_p.conj();
    c.x = prime_power_generator(c.frak_p, rec.p, rec.h);
    c.X = c.x.pow(rec.h_k / rec.h);
    return c;
}

/*
 * delta_p(k) = v_p(N(xbar^{p-1} - 1)) - 1.  The norm absorbs exactly the
 * p-frak-valuation because x^{p-1}-1 is a p-frak-unit.
 */
inline unsigned delta_p(const PUnitRecord& rec) {
    QuadElement y = rec.x.conj().pow(rec.p - 1);
    mpz_class z = (y - QuadElement::one(rec.F)).norm();
    return vp(z, rec.p) - 1;
}

inline unsigned delta_tilde(const PUnitRecord& rec, unsigned delta) {
    return delta + vp_u64(rec.h_k, rec.p) - vp_u64(rec.h, rec.p);
}

inline unsigned delta_tilde(const PUnitRecord& rec) { return delta_tilde(rec, delta_p(rec)); }

/*
 * Same invariant through the p-adic logarithm: delta = v_p((1/p) log(xbar))
 * with the Iwasawa convention log(p) = 0.  Doubles precision until the
 * valuation is well inside the window.
 */
inline unsigned delta_p_via_log(const PUnitRecord& rec,
                                PrecisionPolicy policy = {}) {
    for (unsigned N = policy.initial; N <= policy.max; N = policy.grow(N)) {
        PAdicInt s = hensel_sqrt(mpz_class(rec.F.d), rec.p, N);
        PAdicInt xb = embed_at_p(rec.x.conj(), s);
        if (!xb.is_unit()) {
            /* wrong completion: this root makes x the unit instead */
            xb = embed_at_p(rec.x, s);
        }
        PAdicInt lg = iwasawa_log_unit(xb);
        if (lg.r == 0) continue; /* precision exhausted, retry bigger */
        unsigned v = lg.val();
        if (v + 2 <= N) return v - 1; /* v_p((1/p) log) = v - 1 */
    }
    throw PrecisionExhausted{};
}

struct LogClassOrder {
    unsigned delta = 0, delta_tilde = 0;
    mpz_class order = 1;   /* p^{delta_tilde} = #H~ */
    bool trivial = true;   /* H~ = 1  <=>  H_k = <cl(p-frak)> and delta = 0 */
};

/* "H_k = <cl(p-frak)>" in the precise sense needed here: v_p(h) = v_p(h_k)
   and the p-part of the class group is cyclic. */
inline bool p_class_generated_by_p(const PUnitRecord& rec, const ClassGroupData& G) {
    return vp_u64(rec.h, rec.p) == vp_u64(rec.h_k, rec.p) && G.p_part_cyclic(rec.p);
}

inline LogClassOrder log_class_order(const PUnitRecord& rec, const ClassGroupData& G) {
    LogClassOrder L;
    L.delta = delta_p(rec);
    L.delta_tilde = delta_tilde(rec, L.delta);
    L.order = pow_u64(rec.p, L.delta_tilde);
    L.trivial = (L.delta == 0) && p_class_generated_by_p(rec, G);
    return L;
}

enum class Verdict { Holds, Fails, NotApplicable };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        default: return "not-applicable";
    }
}

/* Gold: when H_k = 1, (lambda = 1 and nu = 0) <=> delta = 0. */
inline Verdict gold_criterion(const PUnitRecord& rec, unsigned delta) {
    if (vp_u64(rec.h_k, rec.p) != 0) return Verdict::NotApplicable;
    return delta == 0 ? Verdict::Holds : Verdict::Fails;
}

/* Variant for any totally ramified Z_p-extension, assuming
   H_k = <cl(p-frak)>: #H_{K_n} = p^{n+v_p(h)} for all n  <=>  delta = 0. */
inline Verdict gold_plus(const PUnitRecord& rec, const ClassGroupData& G, unsigned delta) {
    if (!p_class_generated_by_p(rec, G)) return Verdict::NotApplicable;
    return delta == 0 ? Verdict::Holds : Verdict::Fails;
}

/* Gold-Sands: when v_p(h) = 0, lambda >= 2 <=> p | h_k or delta >= 1.
   Holds = "lambda >= 2 is certified". */
inline Verdict gold_sands(const PUnitRecord& rec, unsigned delta) {
    if (vp_u64(rec.h, rec.p) != 0) return Verdict::NotApplicable;
    return (vp_u64(rec.h_k, rec.p) >= 1 || delta >= 1) ? Verdict::Holds : Verdict::Fails;
}

/* order of the Hasse norm-residue symbol (x, K_n/k / p-frak):
   p^{max(0, n - e - delta)} */
inline mpz_class symbol_order(u64 p, unsigned n, unsigned layer_e, unsigned delta) {
    unsigned ex = n > layer_e + delta ? n - layer_e - delta : 0;
    return pow_u64(p, ex);
}

/* Chevalley-Herbrand fixed points: #H^{G_n} = h_k_p * p^{n-e-ebar}, n >= e */
inline mpz_class chevalley_fixed_points(u64 p, unsigned n, unsigned e, unsigned ebar,
                                        const mpz_class& h_k_p) {
    if (!(n >= e && e >= ebar)) throw InvalidLayers{};
    return h_k_p * pow_u64(p, n - e - ebar);
}

struct FiltrationPrediction {
    unsigned n = 0, e = 0, ebar = 0;
    unsigned n0 = 0;          /* validity threshold */
    bool valid = false;       /* n >= n0 */
    mpz_class order_H1 = 1;   /* #H^1_n */
    mpz_class ratio_H2_H1 = 1; /* #(H^2_n / H^1_n) = #H~ for n >= n0 */
    mpz_class order_H2 = 1;
    bool iwasawa_stable = false; /* H~ = 1: #H_{K_n} = p^{n+v_p(h_k)-e-ebar} */
};

/*
 * Orders of the first two filtration steps of H_{K_n}:
 *   #H^1 = (h_k_p / p^ebar) * p^{n-e},     #H^2/#H^1 = p^{delta_tilde},
 * valid from n0 = exp(H_k) + e + delta + max(0, ebar - v_p(h)).
 */
inline FiltrationPrediction filtration_prediction(const PUnitRecord& rec,
                                                  const ClassGroupData& G,
                                                  unsigned n, unsigned e, unsigned ebar) {
    if (!(e >= ebar)) throw InvalidLayers{};
    FiltrationPrediction P;
    P.n = n; P.e = e; P.ebar = ebar;
    unsigned delta = delta_p(rec);
    unsigned dt = delta_tilde(rec, delta);
    unsigned vh = vp_u64(rec.h, rec.p);
    unsigned vhk = vp_u64(rec.h_k, rec.p);
    P.n0 = (unsigned)G.p_exponent(rec.p) + e + delta + (ebar > vh ? ebar - vh : 0);
    P.valid = n >= P.n0;
    if (n + vhk < e + ebar) throw InvalidLayers{};
    P.order_H1 = pow_u64(rec.p, n + vhk - e - ebar);
    P.ratio_H2_H1 = pow_u64(rec.p, dt);
    P.order_H2 = P.order_H1 * P.ratio_H2_H1;
    P.iwasawa_stable = (dt == 0);
    return P;
}

/* lambda-stability: #H_{K_n} = #H_k p^{lambda n} for all n iff it holds at n=1 */
inline bool lambda_stability(const mpz_class& h_k_ord, const mpz_class& h_K1_ord,
                             u64 p, unsigned lambda) {
    return h_K1_ord == h_k_ord * pow_u64(p, lambda);
}

/*
 * Smooth-complexity capitulation test for a totally ramified cyclic
 * p-extension of degree p^N: with b(L) in [p^s, p^{s+1}-1], capitulation is
 * guaranteed when e(L) in [1, N - s].
 */
inline bool smooth_capitulation_check(unsigned e_L, const mpz_class& b_L,
                                      unsigned Ndeg, u64 p) {
    if (Ndeg < 1 || b_L < 1) throw OutOfRange("smooth_capitulation_check: bad input");
    if (b_L >= pow_u64(p, Ndeg)) throw OutOfRange("b(L) >= p^N");
    unsigned s = 0;
    while (b_L >= pow_u64(p, s + 1)) ++s;
    return e_L >= 1 && e_L <= Ndeg - s;
}

/* Non-cyclicity of H_{k^ac_n} for n >= n0+1 under the stated hypotheses. */
inline bool noncyclic_prediction(bool hypotheses_hold, unsigned n0, unsigned n) {
    return hypotheses_hold && n >= n0 + 1;
}

/* full single-field report used by the CLI */
struct InvariantReport {
    i64 m = 0;
    u64 p = 3;
    u64 h_k = 1, h = 1;
    unsigned delta = 0, delta_tilde = 0;
    mpz_class log_class_order = 1;
    bool log_trivial = true;
    Verdict gold = Verdict::NotApplicable;
    Verdict goldplus = Verdict::NotApplicable;
    Verdict goldsands = Verdict::NotApplicable;
};

inline InvariantReport invariant_report(const QuadField& F, u64 p) {
    auto G = class_group(F);
    PUnitRecord rec = fundamental_p_unit(F, p, G->h);
    InvariantReport R;
    R.m = F.m;
    R.p = p;
    R.h_k = rec.h_k;
    R.h = rec.h;
    R.delta = delta_p(rec);
    R.delta_tilde = delta_tilde(rec, R.delta);
    LogClassOrder L = log_class_order(rec, *G);
    R.log_class_order = L.order;
    R.log_trivial = L.trivial;
    R.gold = gold_criterion(rec, R.delta);
    R.goldplus = gold_plus(rec, *G, R.delta);
    R.goldsands = gold_sands(rec, R.delta);
    return R;
}

} // namespace quadlog
