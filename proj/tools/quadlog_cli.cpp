#include <iostream>

#include <CLI11.hpp>

#include "quadlog/anticyclotomic.hpp"
#include "quadlog/oracle.hpp"
#include "quadlog/scans.hpp"

using namespace quadlog;

namespace {

constexpr int EXIT_NOT_SPLIT = 2;
constexpr int EXIT_NOT_SQUAREFREE = 3;
constexpr int EXIT_INCONCLUSIVE = 4;
constexpr int EXIT_WORKER = 5;

struct Options {
    i64 m = 0;
    i64 m_max = 0;
    std::vector<i64> m_list;
    u64 p = 3;
    u64 p_max = 0;
    int n = -1;
    unsigned e = 0, ebar = 0;
    u64 q_bound = 100000;
    std::string format = "pretty";
    std::string stat = "table";
    bool oracle = false;
    unsigned workers = 1;
    std::string artifacts_dir = "oracle-artifacts";
};

void print_invariants(const Options& opt) {
    QuadField F = make_field(opt.m, Signature::imaginary);
    InvariantReport R = invariant_report(F, opt.p);
    if (opt.format == "json") {
        std::cout << "{\"m\":" << R.m << ",\"p\":" << R.p << ",\"hk\":" << R.h_k
                  << ",\"h\":" << R.h << ",\"delta\":" << R.delta
                  << ",\"delta_tilde\":" << R.delta_tilde << ",\"hlog\":"
                  << R.log_class_order.get_str() << ",\"hlog_trivial\":"
                  << (R.log_trivial ? "true" : "false") << ",\"gold\":\""
                  << verdict_str(R.gold) << "\",\"gold_plus\":\""
                  << verdict_str(R.goldplus) << "\",\"gold_sands\":\""
                  << verdict_str(R.goldsands) << "\"}\n";
    } else {
        std::cout << "m=" << R.m << " p=" << R.p << " hk=" << R.h_k << " h=" << R.h
                  << " d(x)=" << R.delta << " d(X)=" << R.delta_tilde
                  << " #Hlog=" << R.log_class_order.get_str()
                  << (R.log_trivial ? " (trivial)" : "") << "\n";
        std::cout << "gold: " << verdict_str(R.gold)
                  << "   gold_plus: " << verdict_str(R.goldplus)
                  << "   gold_sands(lambda>=2): " << verdict_str(R.goldsands) << "\n";
    }
    if (opt.n >= 0) {
        auto G = class_group(F);
        PUnitRecord rec = fundamental_p_unit(F, opt.p, G->h);
        FiltrationPrediction P =
            filtration_prediction(rec, *G, (unsigned)opt.n, opt.e, opt.ebar);
        std::cout << "filtration n=" << P.n << " e=" << P.e << " ebar=" << P.ebar
                  << ": #H1=" << P.order_H1.get_str() << " #H2/H1="
                  << P.ratio_H2_H1.get_str() << " n0=" << P.n0
                  << (P.valid ? " (valid)" : " (below threshold)") << "\n";
    }
    if (opt.oracle) {
        OracleConfig cfg;
        cfg.artifacts_dir = opt.artifacts_dir;
        Availability av = probe(cfg);
        if (!av.available) {
            std::cerr << "oracle unavailable: " << av.diagnostic << "\n";
        } else {
            OracleReport rep = check_invariants(cfg, opt.m, opt.p);
            std::cout << "oracle #Clog[1]=" << rep.clog_order
                      << (mpz_class(rep.clog_order) == R.log_class_order
                              ? " agrees"
                              : " DISAGREES")
                      << "\n";
        }
    }
}

std::string element_pretty(const QuadElement& z) { return z.str(); }

int print_layer(const Options& opt) {
    LayerResult L = first_layer(opt.m, opt.q_bound);
    if (L.verdict == LayerVerdict::NotApplicable) {
        std::cerr << "not applicable: " << L.note << "\n";
        return EXIT_INCONCLUSIVE;
    }
    if (L.verdict == LayerVerdict::NoSurvivorError) {
        std::cerr << "internal inconsistency: every candidate eliminated\n";
        for (auto& [q, j] : L.audit)
            std::cerr << "  j=" << j << " eliminated at q=" << q << "\n";
        return EXIT_WORKER;
    }
    for (auto& [q, j] : L.audit)
        std::cout << "j=" << j << " q=" << q << " cubic irreducible\n";
    if (L.verdict == LayerVerdict::Inconclusive) {
        std::cout << "inconclusive at q-bound " << opt.q_bound << "; survivors:";
        for (auto& c : L.candidates)
            if (c.alive) std::cout << " j=" << c.j;
        std::cout << "\n";
        return EXIT_INCONCLUSIVE;
    }
    if (opt.format == "json") {
        std::cout << "{\"m\":" << L.m << ",\"j\":" << L.selected << ",\"Q_ac\":\""
                  << cubic_str(L.Q_a, L.Q_t) << "\",\"t\":\""
                  << element_pretty(L.t_layer) << "\",\"t_conj\":\""
                  << element_pretty(L.t_layer_conj) << "\"}\n";
    } else {
        std::cout << "solution: j=" << L.selected << "  Q_ac=" << cubic_str(L.Q_a, L.Q_t)
                  << "\n";
        std::cout << "non-Galois layers: x^3-" << (3 * L.Q_a).get_str() << "*x-t with t="
                  << element_pretty(L.t_layer) << " and t'="
                  << element_pretty(L.t_layer_conj) << "\n";
    }
    if (opt.oracle) {
        OracleConfig cfg;
        cfg.artifacts_dir = opt.artifacts_dir;
        Availability av = probe(cfg);
        if (!av.available) {
            std::cerr << "oracle unavailable: " << av.diagnostic << "\n";
        } else {
            CapitulationReport rep =
                check_capitulation(cfg, opt.m, cubic_str(L.Q_a, L.Q_t));
            std::cout << "oracle capitulation: "
                      << (rep.verdict == Capitulation::Total
                              ? "total"
                              : rep.verdict == Capitulation::Partial ? "partial" : "none")
                      << "\n";
        }
    }
    return 0;
}

int run_scan(const std::string& kind, const Options& opt) {
    if (kind == "table") {
        ScanSummary sum;
        auto rows = table_check(opt.m_list, opt.p, &sum, opt.workers);
        for (auto& r : rows) {
            if (opt.format == "json") std::cout << row_json(r) << "\n";
            else if (opt.format == "tsv") std::cout << row_tsv(r) << "\n";
            else if (!r.skipped)
                std::cout << "m=" << r.m << " hk=" << r.hk << " h=" << r.h
                          << " d(x)=" << r.delta << " d(X)=" << r.delta_tilde << "\n";
        }
        std::cerr << "rows=" << sum.rows << " skipped_nonsquarefree="
                  << sum.skipped_nonsquarefree << " skipped_nonsplit="
                  << sum.skipped_nonsplit << "\n";
        return 0;
    }
    if (kind == "maxima") {
        MaximaStatistic st =
            opt.stat == "delta-tilde" ? MaximaStatistic::delta_tilde : MaximaStatistic::table;
        MaximaRecord rec = scan_maxima(opt.p, opt.m_max, opt.workers, st);
        for (auto& [m, d] : rec.maxima) {
            if (opt.format == "json")
                std::cout << "{\"m\":" << m << ",\"d\":" << d << "}\n";
            else
                std::cout << "m=" << m << " d(X)=" << d << "\n";
        }
        return 0;
    }
    if (kind == "primes") {
        auto hits = scan_primes(opt.m, opt.p_max, opt.workers);
        for (auto& h : hits) {
            if (opt.format == "json")
                std::cout << "{\"m\":" << opt.m << ",\"p\":" << h.p << ",\"hkp\":" << h.hkp
                          << ",\"h\":" << h.h << "}\n";
            else
                std::cout << "m=" << opt.m << " hkp=" << h.hkp << " h=" << h.h
                          << " p=" << h.p << "\n";
        }
        return 0;
    }
    std::cerr << "unknown scan kind\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic invariants of totally p-adic imaginary quadratic fields"};
    app.require_subcommand(1);
    Options opt;

    auto* inv = app.add_subcommand("invariants", "single-field invariant report");
    inv->add_option("-m", opt.m, "squarefree m for Q(sqrt(-m))")->required();
    inv->add_option("-p", opt.p, "odd split prime")->required();
    inv->add_option("-n", opt.n, "layer for filtration prediction");
    inv->add_option("-e", opt.e, "ramification layer of p-frak");
    inv->add_option("--ebar", opt.ebar, "ramification layer of p-frak-bar");

    auto* lay = app.add_subcommand("layer", "first anti-cyclotomic layer (p = 3)");
    lay->add_option("-m", opt.m, "squarefree m")->required();
    lay->add_option("--q-bound", opt.q_bound, "sieve prime bound");

    auto* scan = app.add_subcommand("scan", "batch scans");
    std::string kind;
    scan->add_option("kind", kind, "table | maxima | primes")->required();
    scan->add_option("--list", opt.m_list, "m values for table")->delimiter(',');
    scan->add_option("-m", opt.m, "m for primes scan");
    scan->add_option("--m-max", opt.m_max, "m bound for maxima scan");
    scan->add_option("-p", opt.p, "prime for table/maxima");
    scan->add_option("--p-max", opt.p_max, "prime bound for primes scan");
    scan->add_option("--stat", opt.stat, "maxima statistic: table | delta-tilde");

    auto* orc = app.add_subcommand("oracle", "probe the external CAS");

    for (auto* sc : {inv, lay, scan}) {
        sc->add_option("--format", opt.format, "pretty | json | tsv");
        sc->add_option("--workers", opt.workers, "worker threads");
        sc->add_flag("--oracle", opt.oracle, "cross-check with the CAS oracle");
        sc->add_option("--artifacts-dir", opt.artifacts_dir, "oracle artifacts directory");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed()) {
            print_invariants(opt);
            return 0;
        }
        if (lay->parsed()) return print_layer(opt);
        if (scan->parsed()) return run_scan(kind, opt);
        if (orc->parsed()) {
            Availability av = probe();
            if (av.available) std::cout << "available: " << av.version << "\n";
            else std::cout << "unavailable: " << av.diagnostic << "\n";
            return 0;
        }
    } catch (const NotSplit& e) {
        std::cerr << e.what() << "\n";
        return EXIT_NOT_SPLIT;
    } catch (const NotSquarefree& e) {
        std::cerr << e.what() << "\n";
        return EXIT_NOT_SQUAREFREE;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return EXIT_WORKER;
    }
    return 0;
}
