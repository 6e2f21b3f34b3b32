#pragma once

#include "quadfield.hpp"

namespace quadlog {

/* Z/p^N with explicit precision; enough of Z_p for this library. */
struct PAdicInt {
    u64 p = 3;
    unsigned N = 1;       /* precision exponent */
    mpz_class modulus = 3; /* p^N */
    mpz_class r = 0;       /* residue in [0, p^N) */

    PAdicInt() = default;
    PAdicInt(u64 p_, unsigned N_, mpz_class v) : p(p_), N(N_) {
        modulus = pow_u64(p_, N_);
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
    }

    PAdicInt with_value(mpz_class v) const { return PAdicInt(p, N, std::move(v)); }

    PAdicInt operator+(const PAdicInt& o) const { return with_value(r + o.r); }
    PAdicInt operator-(const PAdicInt& o) const { return with_value(r - o.r); }
    PAdicInt operator*(const PAdicInt& o) const { return with_value(r * o.r); }

    bool is_unit() const { return r % p != 0; }

    /* valuation, capped at the precision */
    unsigned val() const {
        if (r == 0) return N;
        return (unsigned)vp_mpz(r, p);
    }
};

struct PrecisionPolicy {
    unsigned initial = 8;
    unsigned max = 4096;
    unsigned grow(unsigned n) const { return n * 2; }
};

/* exact p-adic valuation of a nonzero integer */
inline unsigned vp(const mpz_class& z, u64 p) {
    if (z == 0) throw Error("vp: valuation of zero is infinite");
    return (unsigned)vp_mpz(z, p);
}

/*
 * Square root of a mod p^N by Newton lifting of the base root, normalized so
 * the level-p root lies in [1, (p-1)/2].
 */
inline PAdicInt hensel_sqrt(const mpz_class& a, u64 p, unsigned N) {
    if (p == 2) throw EvenPrime{};
    mpz_class pz = (unsigned long)p;
    mpz_class a0 = a % pz;
    if (a0 < 0) a0 += pz;
    if (a0 == 0) throw NonResidue("hensel_sqrt: p divides argument");
    u64 au = mpz_get_ui(a0.get_mpz_t());
    if (powmod(au, (p - 1) / 2, p) != 1) throw NonResidue{};
    u64 root = sqrt_mod(au, p);
    if (root > (p - 1) / 2) root = p - root;
    if (root == 0) root = p; /* unreachable for units */
    mpz_class cur = (unsigned long)root;
    mpz_class prec = pz, target = pow_u64(p, N);
    while (prec < target) {
        prec = prec * prec;
        if (prec > target) prec = target;
        /* r <- (r + a/r)/2 */
        mpz_class inv_r = mod_inverse(cur, prec);
        mpz_class inv_2 = mod_inverse(mpz_class(2), prec);
        cur = ((cur + a * inv_r) * inv_2) % prec;
        if (cur < 0) cur += prec;
    }
    return PAdicInt(p, N, cur);
}

/*
 * Embedding of an integral element into Q_p via a chosen square root of d.
 * The root picks which of the two split primes plays p-frak.
 */
inline PAdicInt embed_at_p(const QuadElement& z, const PAdicInt& sqrt_d) {
    u64 p = sqrt_d.p;
    unsigned N = sqrt_d.N;
    mpz_class om = z.F.half
        ? mpz_class((1 + sqrt_d.r) * mod_inverse(mpz_class(2), sqrt_d.modulus))
        : sqrt_d.r;
    return PAdicInt(p, N, z.a + z.b * om);
}

/*
 * Iwasawa logarithm of a unit u: (1/(p-1)) * log(1+t) with t = u^{p-1}-1,
 * the series truncated so every dropped term vanishes mod p^N.  Internally
 * carries guard digits to absorb the divisions by k.
 */
inline PAdicInt iwasawa_log_unit(const PAdicInt& u) {
    if (!u.is_unit()) throw NotIntegralAtP{};
    const u64 p = u.p;
    const unsigned N = u.N;
    /* guard: v_p(k) <= log_p(K) for the truncation length K used below */
    unsigned guard = 2;
    {
        unsigned K = N + 4;
        u64 pk = p;
        while (pk < K) { pk *= p; ++guard; }
    }
    unsigned Nw = N + guard;
    mpz_class mod_w = pow_u64(p, Nw);
    mpz_class up = 1, base = u.r % mod_w;
    /* u^{p-1} mod p^{Nw} */
    {
        u64 e = p - 1;
        mpz_class acc = base;
        while (e) {
            if (e & 1) up = up * acc % mod_w;
            acc = acc * acc % mod_w;
            e >>= 1;
        }
    }
    mpz_class t = (up - 1) % mod_w;
    if (t < 0) t += mod_w;
    if (t == 0) return PAdicInt(p, N, 0);
    unsigned vt = (unsigned)vp_mpz(t, p);
    /* dropped terms have v_p(t^k/k) >= k*vt - guard >= N once k*vt >= Nw */
    mpz_class sum = 0;
    for (unsigned k = 1; k * vt < Nw; ++k) {
        unsigned vk = vp_u64(k, p);
        /* term = (-1)^{k+1} t^k / k; divide out p^{vk} exactly by computing
           t^k with vk extra digits */
        mpz_class full = pow_u64(p, Nw + vk);
        mpz_class tk = 1, tmod = t % full;
        for (unsigned i = 0; i < k; ++i) tk = tk * tmod % full;
        mpz_class term = tk / pow_u64(p, vk);
        u64 kunit = k;
        for (unsigned i = 0; i < vk; ++i) kunit /= p;
        term = term * mod_inverse(mpz_class((unsigned long)kunit), mod_w) % mod_w;
        if (k % 2 == 0) term = -term;
        sum = (sum + term) % mod_w;
    }
    if (sum < 0) sum += mod_w;
    sum = sum * mod_inverse(mpz_class((unsigned long)(p - 1)), mod_w) % mod_w;
    return PAdicInt(p, N, sum);
}

} // namespace quadlog
