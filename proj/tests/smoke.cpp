#include <iostream>
#include "quadlog/anticyclotomic.hpp"

using namespace quadlog;

int main() {
    /* class numbers */
    auto F107 = make_field(107, Signature::imaginary);
    std::cout << "h(-107) = " << class_number(F107) << " (want 3)\n";
    auto F1238 = make_field(1238, Signature::imaginary);
    std::cout << "h(-1238) = " << class_number(F1238) << " (want 42)\n";

    /* p-unit for m=107, p=3 */
    PUnitRecord r = fundamental_p_unit(F107, 3);
    std::cout << "m=107 p=3: h=" << r.h << " x=" << r.x.str()
              << " N(x)=" << r.x.norm().get_str() << "\n";
    std::cout << "delta=" << delta_p(r) << " (want 2), dt=" << delta_tilde(r)
              << " deltalog=" << delta_p_via_log(r) << "\n";

    /* m=78731 */
    auto F787 = make_field(78731, Signature::imaginary);
    PUnitRecord r2 = fundamental_p_unit(F787, 3);
    std::cout << "m=78731: hk=" << r2.h_k << " (want 108) h=" << r2.h
              << " (want 9) x=" << r2.x.str() << " (want (1+sqrt(-78731))/2)"
              << " delta=" << delta_p(r2) << " (want 8)\n";

    /* real quadratic units */
    auto K321 = make_field(321, Signature::real);
    UnitData u321 = fundamental_unit(K321);
    std::cout << "eps(321) = " << u321.eps.str() << " N=" << u321.norm_sign
              << " (want 215+12*sqrt(321), +1)\n";
    auto K79 = make_field(79, Signature::real);
    std::cout << "eps(79) = " << fundamental_unit(K79).eps.str() << " (want 80+9*sqrt(79))\n";
    std::cout << "h+(321) = " << narrow_class_number(K321)
              << " hstar(321) = " << wide_class_number(K321, u321) << " (want 3)\n";

    /* mirror + first layer m=107 */
    MirrorField M = mirror(107);
    std::cout << "mirror(107): dstar=" << M.kstar.d << " h*=" << M.h_star << "\n";
    auto cands = radical_candidates(M);
    for (auto& c : cands)
        std::cout << "  j=" << c.j << " w=" << c.w.str() << " a=" << c.a.get_str()
                  << " t=" << c.t.get_str() << " Q=" << cubic_str(c.a, c.t) << "\n";
    LayerResult L = first_layer(107);
    std::cout << "verdict=" << (int)L.verdict << " selected j=" << L.selected
              << " Q_ac=" << cubic_str(L.Q_a, L.Q_t) << " (want x^3+6*x+17)\n";
    for (auto& [q, j] : L.audit) std::cout << "  eliminated j=" << j << " at q=" << q << "\n";
    std::cout << "t_layer = " << L.t_layer.str() << " (want (17+3*sqrt(-107))/2)\n";
    return 0;
}
