#include <iostream>
#include "quadlog/anticyclotomic.hpp"

using namespace quadlog;

int main() {
    struct Want { long m; const char* q; };
    Want wants[] = {
        {107, "x^3+6*x+17"},
        {237, "x^3-3*x-160"},
        {262, "x^3-363*x-270950"},
        {362, "x^3-867*x+29374"},
        {586, "x^3-85683*x-2036305318"},
        {426, "x^3-9*x-26"},
        {974, "(not pinned)"},
        {6789, "iso to x^3-x^2-32*x+156"},
    };
    for (auto& w : wants) {
        try {
            LayerResult L = first_layer(w.m);
            std::string got = L.verdict == LayerVerdict::Unique
                                  ? cubic_str(L.Q_a, L.Q_t)
                                  : std::string("verdict=") + std::to_string((int)L.verdict);
            std::cout << "m=" << w.m << "  got " << got << "   want " << w.q
                      << (got == w.q ? "   MATCH" : "") << "\n";
            MirrorField M = mirror(w.m);
            auto A = detail::radical_class_ideal(M);
            std::cout << "   a-ideal: norm " << A.a.get_str() << " b=" << A.b.get_str()
                      << "  h*=" << M.h_star << " eps=" << M.unit.eps.str() << "\n";
        } catch (std::exception& e) {
            std::cout << "m=" << w.m << "  EXC: " << e.what() << "\n";
        }
    }
    return 0;
}
