#pragma once

#include <array>
#include <numeric>

#include "invariants.hpp"
#include "realquad.hpp"

namespace quadlog {

/*
 * First layer of the anti-cyclotomic Z_3-extension of k = Q(sqrt(-m)),
 * through the Kummer radical living in the mirror field
 * k* = Q(sqrt(3m)) (3 not dividing m) or Q(sqrt(m/3)) (3 | m).
 */
struct MirrorField {
    i64 m = 0;           /* source field radicand */
    QuadField kstar;
    UnitData unit;
    u64 h_star = 1;      /* wide class number of k* */
    int v3_h_star = 0;
};

inline MirrorField mirror(i64 m) {
    if (!is_squarefree(m)) throw NotSquarefree(m);
    MirrorField M;
    M.m = m;
    i64 dstar = (m % 3 == 0) ? m / 3 : 3 * m;
    M.kstar = make_field(dstar, Signature::real);
    M.unit = fundamental_unit(M.kstar);
    M.h_star = wide_class_number(M.kstar, M.unit);
    M.v3_h_star = vp_u64(M.h_star, 3);
    return M;
}

struct RadicalCandidate {
    int j = 0;            /* 1-based index in the candidate list */
    QuadElement w;        /* element of k* */
    mpz_class a;          /* a^3 = N(w) */
    mpz_class t;          /* = Tr(w);  Q = x^3 - 3a x - t */
    bool alive = true;
    u64 eliminated_at = 0;
};

struct SieveConfig {
    u64 q_bound = 100000;
    mpz_class pp = 9; /* 3^{e_k + 2}; set by first_layer from the class group of k */
};

enum class LayerVerdict { Unique, Inconclusive, NoSurvivorError, NotApplicable };

struct LayerResult {
    LayerVerdict verdict = LayerVerdict::NotApplicable;
    i64 m = 0;
    std::vector<RadicalCandidate> candidates;
    int selected = 0;                 /* 1-based j of the survivor */
    mpz_class Q_a = 0, Q_t = 0;       /* Q_ac = x^3 - 3a x - t */
    QuadElement t_layer, t_layer_conj; /* traces of the two non-Galois cubics */
    std::vector<std::pair<u64, int>> audit; /* (q, eliminated j) */
    std::string note;
};

namespace detail {

/* exponent of the wide class group, as the lcm of the orders of the first
   few prime ideal classes */
inline u64 wide_exponent(const MirrorField& M) {
    u64 E = 1;
    int sampled = 0;
    for (u64 ell = 2; ell < 20000 && sampled < 16; ell = next_prime_u64(ell)) {
        int kr = kronecker(M.kstar.D, (i64)ell);
        if (kr == -1) continue;
        if (ell == 2) {
            for (i64 b : {0, 1}) {
                mpz_class nb = mpz_class(b) * b + M.kstar.om_tr * b + M.kstar.om_nm;
                if (nb % 2 != 0) continue;
                u64 o = wide_class_order(QuadIdeal{M.kstar, 2, b, 1}, M.h_star);
                E = std::lcm(E, o);
                ++sampled;
            }
            continue;
        }
        u64 o = wide_class_order(primes_above(M.kstar, ell).first, M.h_star);
        E = std::lcm(E, o);
        ++sampled;
    }
    return E;
}

/*
 * Prime ideal whose class generates the full cyclic factor that carries the
 * 3-part: smallest norm with class order equal to the group exponent,
 * skipping primes that divide a norm N(j + sqrt(d*)) with |j| <= 3 (these
 * reduce onto short vectors and are not the representatives the companion
 * tables use), and taking the larger-residue conjugate.
 */
inline QuadIdeal radical_class_ideal(const MirrorField& M) {
    const u64 E = wide_exponent(M);
    const mpz_class ds = M.kstar.d;
    for (u64 ell = 2; ell < 20000; ell = next_prime_u64(ell)) {
        int kr = kronecker(M.kstar.D, (i64)ell);
        if (kr == -1) continue;
        if (ell == 2) {
            for (i64 b : {1, 0}) {
                mpz_class nb = mpz_class(b) * b + M.kstar.om_tr * b + M.kstar.om_nm;
                if (nb % 2 != 0) continue;
                QuadIdeal P{M.kstar, 2, b, 1};
                if (wide_class_order(P, M.h_star) == E) return P;
            }
            continue;
        }
        if (ell > 3) {
            mpz_class avoid = ds * (ds - 1) * (ds - 4) * (ds - 9);
            if (avoid % ell == 0) continue;
        }
        auto [P1, P2] = primes_above(M.kstar, ell);
        if (wide_class_order(P2, M.h_star) == E) return P2;
        if (kr == 1 && wide_class_order(P1, M.h_star) == E) return P1;
    }
    throw Error("radical_class_ideal: no admissible prime generates the exponent");
}

inline mpz_class cbrt_exact(const mpz_class& n) {
    mpz_class r, abs_n = abs(n);
    if (!mpz_root(r.get_mpz_t(), abs_n.get_mpz_t(), 3)) throw NotACube{};
    return n < 0 ? mpz_class(-r) : r;
}

} // namespace detail

/*
 * Kummer radical candidates [w0, w1, w0 w1, w0 w1^2]: the fundamental unit
 * and a generator of a^{h*} for a class-order divisible by 3.  Applicable
 * only when v_3(h*) = 1 (the 3-part of Cl(k*) is then Z/3).
 */
inline std::vector<RadicalCandidate> radical_candidates(const MirrorField& M) {
    if (M.v3_h_star != 1) throw Error("radical_candidates: v3(h*) != 1");
    QuadIdeal A = detail::radical_class_ideal(M);
    QuadElement w1 = real_generator(ideal_pow(A, M.h_star), M.unit);
    /* sign convention: negative trace when 3 splits in Q(sqrt(-m)) */
    if (((M.m % 3) + 3) % 3 == 2) w1 = -w1;
    QuadElement w0 = M.unit.eps;
    std::vector<QuadElement> ws{w0, w1, w0 * w1, w0 * w1 * w1};
    std::vector<RadicalCandidate> out;
    for (int j = 0; j < 4; ++j) {
        RadicalCandidate c;
        c.j = j + 1;
        c.w = ws[j];
        c.t = c.w.trace();
        c.a = detail::cbrt_exact(c.w.norm());
        out.push_back(std::move(c));
    }
    return out;
}

inline mpz_class cubic_disc(const mpz_class& a3, const mpz_class& t) {
    /* disc(x^3 - 3a x - t) = 108 a^3 - 27 t^2 */
    return 108 * a3 * a3 * a3 - 27 * t * t;
}

/* number of roots of x^3 - 3a x - t over F_q via gcd(x^q - x, Q) */
inline int cubic_roots_mod(const mpz_class& a, const mpz_class& t, u64 q) {
    u64 A = mpz_class(((-3 * a) % q + q) % q).get_ui();
    u64 T = mpz_class(((-t) % q + q) % q).get_ui();
    /* Q = x^3 + A x + T over F_q */
    const u64 negA = (q - A) % q, negT = (q - T) % q;
    auto mulpoly = [&](const std::array<u64, 3>& f, const std::array<u64, 3>& g) {
        /* multiply then reduce mod x^3 + A x + T */
        u64 c[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c[i + j] = (c[i + j] + mulmod(f[i], g[j], q)) % q;
        for (int i = 4; i >= 3; --i) {
            if (c[i] == 0) continue;
            /* x^i = x^{i-3} * (-A x - T) */
            u64 v = c[i];
            c[i] = 0;
            c[i - 2] = (c[i - 2] + mulmod(v, negA, q)) % q;
            c[i - 3] = (c[i - 3] + mulmod(v, negT, q)) % q;
        }
        return std::array<u64, 3>{c[0], c[1], c[2]};
    };
    /* x^q mod Q */
    std::array<u64, 3> r{1, 0, 0}, base{0, 1, 0};
    u64 e = q;
    while (e) {
        if (e & 1) r = mulpoly(r, base);
        base = mulpoly(base, base);
        e >>= 1;
    }
    /* gcd(x^q - x, Q): degree of the product of linear factors */
    u64 g2 = r[2], g1 = (r[1] + q - 1) % q, g0 = r[0];
    /* gcd of Q (deg 3) and G = g2 x^2 + g1 x + g0 */
    if (g2 == 0 && g1 == 0 && g0 == 0) return 3;
    /* polynomial gcd over F_q, small degrees */
    std::vector<u64> P{T, A, 0, 1}, G{g0, g1, g2};
    while (!G.empty() && G.back() == 0) G.pop_back();
    while (!G.empty()) {
        /* P mod G */
        std::vector<u64> R = P;
        u64 lead_inv = powmod(G.back(), q - 2, q);
        while (R.size() >= G.size()) {
            u64 f = mulmod(R.back(), lead_inv, q);
            size_t off = R.size() - G.size();
            for (size_t i = 0; i < G.size(); ++i)
                R[off + i] = (R[off + i] + q - mulmod(f, G[i], q)) % q;
            while (!R.empty() && R.back() == 0) R.pop_back();
            if (R.size() < G.size()) break;
        }
        P = G;
        G = R;
    }
    return (int)P.size() - 1; /* degree of gcd */
}

/*
 * Elimination sieve over qualified primes q: q^2 = 1 mod pp, q split in k,
 * and the generator of q-frak^{h_k} rationally trivial to depth pp (the
 * C0/C1 congruences).  A candidate dies when its cubic is irreducible
 * mod q.  Stops at one survivor.
 */
inline LayerResult select_radical(const QuadField& k, u64 h_k,
                                  std::vector<RadicalCandidate> cands,
                                  const SieveConfig& cfg) {
    LayerResult R;
    R.m = k.m;
    int alive = (int)cands.size();
    mpz_class pp3 = 3 * cfg.pp;
    for (u64 q = 5; q <= cfg.q_bound; q = next_prime_u64(q)) {
        mpz_class qz = (unsigned long)q;
        if ((qz * qz) % cfg.pp != 1) continue;
        if (kronecker(-k.m, (i64)q) != 1) continue;
        QuadIdeal Q1 = primes_above(k, q).first;
        QuadElement y = prime_power_generator(Q1, q, h_k);
        /* coordinates over (1, sqrt(-m)) scaled by 2: y = (T + V sqrt(-m))/2 */
        mpz_class T, V;
        int den;
        y.sqrt_coords(T, V, den);
        if (den == 1) { T *= 2; V *= 2; }
        mpz_class C0 = T, C1 = V;
        if (C0 % 3 == 0) std::swap(C0, C1);
        /* (C0/2)^2 = 1 mod 3pp and (C1/2) = 0 mod pp */
        if ((C0 * C0 - 4) % pp3 != 0) continue;
        if (C1 % cfg.pp != 0) continue;
        for (auto& c : cands) {
            if (!c.alive) continue;
            if (cubic_disc(c.a, c.t) % qz == 0) continue;
            if (cubic_roots_mod(c.a, c.t, q) == 0) {
                c.alive = false;
                c.eliminated_at = q;
                R.audit.emplace_back(q, c.j);
                --alive;
            }
        }
        if (alive == 1) break;
    }
    R.candidates = cands;
    if (alive == 0) {
        R.verdict = LayerVerdict::NoSurvivorError;
        return R;
    }
    if (alive > 1) {
        R.verdict = LayerVerdict::Inconclusive;
        return R;
    }
    for (auto& c : cands)
        if (c.alive) {
            R.verdict = LayerVerdict::Unique;
            R.selected = c.j;
            R.Q_a = c.a;
            R.Q_t = c.t;
        }
    return R;
}

/*
 * Traces of the two conjugate non-Galois first layers over k
 * (Q = x^3 - 3a x - t_layer, Q' with the conjugate trace):
 *   3 not | m: w = (u + v sqrt(3m))/2   -> t, t' = -(u +- 3v sqrt(-m))/2
 *   3 | m:     w = (u + v sqrt(m/3))/2  -> t, t' = -(u +- v sqrt(-m))/2
 */
inline void conjugate_layers(const QuadField& k, const RadicalCandidate& c,
                             QuadElement& t_out, QuadElement& t_conj_out) {
    mpz_class u, v;
    int den;
    c.w.sqrt_coords(u, v, den);
    if (den == 1) { u *= 2; v *= 2; }
    mpz_class vv = (k.m % 3 == 0) ? v : 3 * v;
    /* (-u - vv*sqrt(-m))/2 as an element of O_k */
    auto build = [&](const mpz_class& uu, const mpz_class& wcoef) {
        if (k.half) {
            /* sqrt(-m) = 2*omega - 1: (uu + wcoef*(2 omega - 1))/2 */
            mpz_class A2 = uu - wcoef; /* coefficient of 1, doubled */
            if (A2 % 2 != 0) throw Error("conjugate_layers: non-integral trace");
            return QuadElement{k, A2 / 2, wcoef};
        }
        if (uu % 2 != 0 || wcoef % 2 != 0)
            throw Error("conjugate_layers: non-integral trace");
        return QuadElement{k, uu / 2, wcoef / 2};
    };
    t_out = build(-u, -vv);
    t_conj_out = build(-u, vv);
}

/* full pipeline: mirror field, candidates, sieve, conjugate layers */
inline LayerResult first_layer(i64 m, u64 q_bound = 100000) {
    QuadField k = make_field(m, Signature::imaginary);
    auto G = class_group(k);
    LayerResult R;
    R.m = m;
    MirrorField M = mirror(m);
    if (M.v3_h_star != 1) {
        R.verdict = LayerVerdict::NotApplicable;
        R.note = "v3(h*) = " + std::to_string(M.v3_h_star) + " (need 1)";
        return R;
    }
    SieveConfig cfg;
    cfg.q_bound = q_bound;
    cfg.pp = pow_u64(3, (unsigned)G->p_exponent(3) + 2);
    auto cands = radical_candidates(M);
    R = select_radical(k, G->h, std::move(cands), cfg);
    if (R.verdict == LayerVerdict::Unique) {
        for (auto& c : R.candidates)
            if (c.alive) conjugate_layers(k, c, R.t_layer, R.t_layer_conj);
    }
    return R;
}

/* printable cubic x^3 - 3a x - t */
inline std::string cubic_str(const mpz_class& a, const mpz_class& t) {
    std::string s = "x^3";
    mpz_class p = -3 * a;
    if (p != 0) s += (p > 0 ? "+" : "") + p.get_str() + "*x";
    mpz_class c = -t;
    if (c != 0) s += (c > 0 ? "+" : "") + c.get_str();
    return s;
}

} // namespace quadlog
