#include <iostream>
#include "quadlog/invariants.hpp"

using namespace quadlog;

int main() {
    struct Row { long m; unsigned long hk, h; unsigned dx, dX; };
    Row rows[] = {
        {107, 3, 3, 2, 2},       {302, 12, 12, 1, 1},
        {362, 18, 9, 1, 1},      {413, 20, 10, 2, 2},
        {1238, 42, 14, 1, 2},    {1319, 45, 45, 2, 2},
        {1967, 36, 12, 1, 2},    {2351, 63, 63, 6, 6},
        {2915, 24, 6, 5, 5},     {78731, 108, 9, 8, 9},
        {4996655, 2916, 324, 1, 3}, {8596733, 2664, 74, 4, 6},
        {9098093, 2160, 20, 4, 7},  {14729261, 4158, 462, 1, 3},
        {15163271, 4050, 225, 3, 5},
    };
    bool ok = true;
    for (auto& r : rows) {
        auto F = make_field(r.m, Signature::imaginary);
        PUnitRecord rec = fundamental_p_unit(F, 3);
        unsigned d = delta_p(rec), dt = delta_tilde(rec, d);
        bool good = rec.h_k == r.hk && rec.h == r.h && d == r.dx && dt == r.dX;
        ok &= good;
        std::cout << "m=" << r.m << " hk=" << rec.h_k << "/" << r.hk
                  << " h=" << rec.h << "/" << r.h << " d=" << d << "/" << r.dx
                  << " dt=" << dt << "/" << r.dX << (good ? "  OK" : "  MISMATCH") << "\n";
    }
    std::cout << (ok ? "ALL OK" : "FAILURES") << "\n";
    return ok ? 0 : 1;
}
