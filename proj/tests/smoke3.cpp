#include <iostream>
#include "quadlog/anticyclotomic.hpp"

using namespace quadlog;

int main() {
    for (long m : {107, 237, 262, 362, 586, 426, 974, 6789}) {
        MirrorField M = mirror(m);
        std::cout << "m=" << m << " dstar=" << M.kstar.d << " h*=" << M.h_star << " orders:";
        for (u64 ell = 2; ell < 60; ell = next_prime_u64(ell)) {
            int kr = kronecker(M.kstar.D, (i64)ell);
            if (kr == -1) continue;
            if (ell == 2) {
                for (i64 b : {0, 1}) {
                    mpz_class nb = mpz_class(b) * b + M.kstar.om_tr * b + M.kstar.om_nm;
                    if (nb % 2 != 0) continue;
                    QuadIdeal P{M.kstar, 2, b, 1};
                    std::cout << " [2,b=" << b << "]:" << wide_class_order(P, M.h_star);
                    if (kr == 0) break;
                }
                continue;
            }
            auto [P1, P2] = primes_above(M.kstar, ell);
            std::cout << " [" << ell << ",b=" << P1.b.get_str() << "]:"
                      << wide_class_order(P1, M.h_star);
            if (kr == 1)
                std::cout << "/[b=" << P2.b.get_str() << "]:"
                          << wide_class_order(P2, M.h_star);
        }
        std::cout << "\n";
    }
    return 0;
}
