#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>
#include <algorithm>
#include <gmpxx.h>

namespace quadlog {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 n) { return (u128)a * b % n; }

inline u64 powmod(u64 a, u64 e, u64 n) {
    u64 r = n > 1 ? 1 : 0;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        e >>= 1;
    }
    return r;
}

inline i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    i64 r = (i64)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/* Deterministic Miller-Rabin, valid for all 64-bit inputs. */
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline u64 next_prime_u64(u64 n) {
    ++n;
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime_u64(n)) n += 2;
    return n;
}

/* Kronecker symbol (a|n), full generality. */
inline int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    int k = 1;
    if (v & 1) {
        i64 am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) k = -1;
    }
    if (n < 0) { n = -n; if (a < 0) k = -k; }
    while (true) {
        if (a == 0) return n > 1 ? 0 : k;
        v = 0;
        while ((a & 1) == 0) { a >>= 1; ++v; }
        if (v & 1) {
            i64 nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) k = -k;
        }
        if ((a & n & 2) != 0) k = -k; /* quadratic reciprocity */
        i64 r = a < 0 ? -a : a;
        a = n % r;
        n = r;
    }
}

inline int kronecker(const mpz_class& a, const mpz_class& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline bool is_squarefree(i64 m) {
    if (m < 1) return false;
    if (m % 4 == 0) return false;
    for (i64 d = 2; d * d <= m; ++d) {
        if (m % (d * d) == 0) return false;
        while (m % d == 0) m /= d;
    }
    return true;
}

/* Trial division + Pollard rho; enough for the 64-bit cofactors we meet. */
inline void factor_u64(u64 n, std::vector<std::pair<u64, int>>& out) {
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    std::vector<u64> primes;
    while (!stack.empty()) {
        u64 v = stack.back();
        stack.pop_back();
        if (v == 1) continue;
        if (is_prime_u64(v)) { primes.push_back(v); continue; }
        u64 d = v;
        for (u64 c = 1; d == v; ++c) {
            u64 x = 2, y = 2, g = 1;
            auto f = [&](u64 z) { return (mulmod(z, z, v) + c) % v; };
            while (g == 1) {
                x = f(x);
                y = f(f(y));
                u64 diff = x > y ? x - y : y - x;
                g = std::__gcd(diff == 0 ? v : diff, v);
            }
            if (g != v) d = g;
        }
        stack.push_back(d);
        stack.push_back(v / d);
    }
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
        size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.emplace_back(primes[i], (int)(j - i));
        i = j;
    }
    std::sort(out.begin(), out.end());
}

inline std::vector<u64> divisors_sorted(u64 n) {
    std::vector<std::pair<u64, int>> fac;
    factor_u64(n, fac);
    std::vector<u64> divs{1};
    for (auto& [p, e] : fac) {
        size_t sz = divs.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

inline int vp_u64(u64 n, u64 p) {
    int v = 0;
    while (n && n % p == 0) { n /= p; ++v; }
    return v;
}

inline int vp_mpz(const mpz_class& n, u64 p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    mpz_class q, r, cur = n;
    mpz_class P = (unsigned long)p;
    int v = 0;
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cur.get_mpz_t(), P.get_mpz_t());
        if (r != 0) return v;
        cur = q;
        ++v;
    }
}

inline mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline mpz_class pow_u64(u64 b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)b, e);
    return r;
}

/* Tonelli-Shanks square root mod odd prime p; requires (a|p) = 1. */
inline u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 x = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        u64 tt = t;
        int i = 0;
        while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
        u64 b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        x = mulmod(x, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return x;
}

inline mpz_class mod_inverse(const mpz_class& a, const mpz_class& n) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()))
        throw std::domain_error("mod_inverse: not invertible");
    return r;
}

/* simple sieve of primes up to n */
inline std::vector<u64> primes_up_to(u64 n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (u64 j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return out;
}

} // namespace quadlog
