#pragma once

#include "classgroup.hpp"

namespace quadlog {

/*
 * Integral ideal content * [a, b+omega] of the maximal order, 0 <= b < a.
 * Norm = content^2 * a.  Multiplication runs through the 2x4 module HNF,
 * which keeps it honest for both signatures.
 */
struct QuadIdeal {
    QuadField F;
    mpz_class a = 1, b = 0;
    mpz_class content = 1;

    static QuadIdeal unit(const QuadField& f) { return {f, 1, 0, 1}; }

    mpz_class norm() const { return content * content * a; }

    bool is_unit_ideal() const { return a == 1 && content == 1; }

    void canonicalize() {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
        b = r;
    }

    QuadIdeal conj() const {
        QuadIdeal J{F, a, -b - F.om_tr, content};
        J.canonicalize();
        return J;
    }

    /* associated binary form (a, 2b+t, N(b+omega)/a); requires small entries */
    BinaryForm to_form() const {
        if (!mpz_fits_slong_p(a.get_mpz_t()))
            throw Error("to_form: ideal norm too large for form arithmetic");
        i64 A = mpz_get_si(a.get_mpz_t());
        mpz_class Bz = 2 * b + F.om_tr;
        mpz_class Nz = b * b + F.om_tr * b + F.om_nm;
        mpz_class Cz = Nz / a;
        BinaryForm f{A, mpz_get_si(Bz.get_mpz_t()), mpz_get_si(Cz.get_mpz_t()), F.D};
        return f;
    }
};

inline QuadIdeal ideal_mul(const QuadIdeal& I, const QuadIdeal& J) {
    const QuadField& F = I.F;
    const mpz_class t = F.om_tr, n = F.om_nm;
    /* generators (x, y) of the product module, coordinates on (1, omega) */
    struct Vec { mpz_class x, y; };
    Vec g[4] = {
        {I.a * J.a, 0},
        {I.a * J.b, I.a},
        {J.a * I.b, J.a},
        {I.b * J.b - n, I.b + J.b + t},
    };
    /* y-projection gcd with cofactors via iterated xgcd */
    mpz_class gy = 0, wx = 0;
    for (auto& v : g) {
        if (v.y == 0) continue;
        if (gy == 0) { gy = v.y; wx = v.x; if (gy < 0) { gy = -gy; wx = -wx; } continue; }
        mpz_class s, u;
        mpz_class d;
        mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), gy.get_mpz_t(), v.y.get_mpz_t());
        wx = s * wx + u * v.x;
        gy = d;
    }
    mpz_class A = 0;
    for (auto& v : g) {
        mpz_class xpart = v.x - (v.y / gy) * wx;
        mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), xpart.get_mpz_t());
    }
    /* product of primitive parts = gy * [A/gy, wx/gy + omega] */
    assert(A % gy == 0 && wx % gy == 0);
    QuadIdeal R;
    R.F = F;
    R.content = I.content * J.content * gy;
    mpz_divexact(R.a.get_mpz_t(), A.get_mpz_t(), gy.get_mpz_t());
    mpz_divexact(R.b.get_mpz_t(), wx.get_mpz_t(), gy.get_mpz_t());
    R.canonicalize();
    return R;
}

inline QuadIdeal ideal_pow(const QuadIdeal& I, unsigned long e) {
    QuadIdeal r = QuadIdeal::unit(I.F), base = I;
    while (e) {
        if (e & 1) r = ideal_mul(r, base);
        base = ideal_mul(base, base);
        e >>= 1;
    }
    return r;
}

/* prime ideals above an odd split/ramified p; for split p the pair is ordered
   by the b coordinate, so the choice of p-bar is deterministic */
inline std::pair<QuadIdeal, QuadIdeal> primes_above(const QuadField& F, u64 p) {
    SplitKind k = split_kind(F, p);
    if (k == SplitKind::Inert) throw NotSplit(F.m, p);
    /* roots of x^2 + t x + n mod p give -b */
    u64 t = ((F.om_tr % (i64)p) + p) % p;
    u64 n = ((F.om_nm % (i64)p) + p) % p;
    u64 disc = (mulmod(t, t, p) + 4 * (p - n % p)) % p; /* t^2 - 4n mod p */
    u64 s = sqrt_mod(disc, p);
    u64 inv2 = powmod(2, p - 2, p);
    u64 r1 = mulmod((p - t + s) % p, inv2, p);
    u64 r2 = mulmod((2 * p - t - s) % p, inv2, p);
    if (r1 > r2) std::swap(r1, r2);
    QuadIdeal P1{F, mpz_class((unsigned long)p), mpz_class((unsigned long)r1), 1};
    QuadIdeal P2{F, mpz_class((unsigned long)p), mpz_class((unsigned long)r2), 1};
    if (k == SplitKind::Ramified) return {P1, P1};
    return {P1, P2};
}

/* p-power ideal [p^k, b_k + omega] via Hensel lifting of the simple root;
   this is the fast path replacing k-fold ideal multiplication */
inline QuadIdeal prime_power_ideal(const QuadField& F, u64 p, const mpz_class& b0,
                                   unsigned long k) {
    mpz_class pk = pow_u64(p, k);
    mpz_class b = b0 % p;
    mpz_class prec = (unsigned long)p;
    while (prec < pk) {
        prec = prec * prec;
        if (prec > pk) prec = pk;
        mpz_class f = (b * b + F.om_tr * b + F.om_nm) % prec;
        mpz_class fp = (2 * b + F.om_tr) % prec;
        b = (b - f * mod_inverse(fp, prec)) % prec;
        if (b < 0) b += prec;
    }
    QuadIdeal I{F, pk, b % pk, 1};
    return I;
}

namespace detail {

struct Vec2 {
    mpz_class x, y;
};

inline mpz_class vec_norm(const QuadField& F, const Vec2& v) {
    return v.x * v.x + F.om_tr * v.x * v.y + F.om_nm * v.y * v.y;
}

/* twice the polarization of the norm form (stays integral for odd D) */
inline mpz_class vec_inner2(const QuadField& F, const Vec2& u, const Vec2& v) {
    return 2 * u.x * v.x + F.om_tr * (u.x * v.y + u.y * v.x) + 2 * F.om_nm * u.y * v.y;
}

/* Lagrange-Gauss reduction; returns a shortest nonzero vector of the lattice
   spanned by u, v under the (positive definite) norm form */
inline Vec2 lagrange_gauss_shortest(const QuadField& F, Vec2 u, Vec2 v) {
    mpz_class Nu = vec_norm(F, u), Nv = vec_norm(F, v);
    if (Nu < Nv) { std::swap(u, v); std::swap(Nu, Nv); }
    while (true) {
        /* q = round(inner(u,v)/N(v)) = round(inner2 / (2 Nv)) */
        mpz_class inner2 = vec_inner2(F, u, v);
        mpz_class q, num = inner2 + Nv;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), mpz_class(2 * Nv).get_mpz_t());
        u.x -= q * v.x;
        u.y -= q * v.y;
        Nu = vec_norm(F, u);
        if (Nu >= Nv) break;
        std::swap(u, v);
        std::swap(Nu, Nv);
    }
    return v;
}

} // namespace detail

/*
 * Generator of a principal ideal of an imaginary quadratic field, found as a
 * shortest vector of the ideal lattice.  Sign normalization: omega
 * coefficient >= 0, ties broken by constant part >= 0.  Throws NonPrincipal
 * (with the discrete log when a class group is supplied) otherwise.
 */
inline QuadElement principal_generator(const QuadIdeal& I,
                                       const ClassGroupData* G = nullptr) {
    const QuadField& F = I.F;
    if (!F.imaginary()) throw Error("principal_generator: imaginary side only");
    detail::Vec2 u{I.a, 0}, v{I.b, 1};
    detail::Vec2 s = detail::lagrange_gauss_shortest(F, u, v);
    mpz_class Ns = detail::vec_norm(F, s);
    if (Ns != I.a) {
        std::vector<i64> dl;
        if (G) dl = G->discrete_log(I.to_form());
        throw NonPrincipal(dl);
    }
    QuadElement g{F, s.x * I.content, s.y * I.content};
    if (g.b < 0 || (g.b == 0 && g.a < 0)) g = -g;
    return g;
}

} // namespace quadlog
