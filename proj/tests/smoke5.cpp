#include <iostream>
#include "quadlog/scans.hpp"

using namespace quadlog;

int main(int argc, char** argv) {
    i64 bound = argc > 1 ? atol(argv[1]) : 40000;
    for (u64 p : {3ull, 5ull}) {
        std::cout << "p=" << p << " maxima up to " << bound << ":";
        MaximaRecord r = scan_maxima(p, bound, 2);
        MaximaRecord rt = scan_maxima(p, bound, 2, MaximaStatistic::delta_tilde);
        for (auto& [m, d] : r.maxima) std::cout << " (" << m << "," << d << ")";
        std::cout << "\n";
    }
    std::cout << "P5 m=3 p<=1e5: ";
    for (auto& h : scan_primes(3, 100000, 2))
        std::cout << h.p << "(h=" << h.h << ") ";
    std::cout << "\nP5 m=47 p<=1e4: ";
    for (auto& h : scan_primes(47, 10000, 2))
        std::cout << h.p << "(h=" << h.h << ") ";
    std::cout << "\nP5 m=5 p<=1e4: ";
    for (auto& h : scan_primes(5, 10000, 2))
        std::cout << h.p << "(h=" << h.h << ") ";
    std::cout << "\n";
    return 0;
}
