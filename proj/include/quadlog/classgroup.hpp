#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "binaryform.hpp"

namespace quadlog {

struct FormKey {
    i64 a, b;
    bool operator==(const FormKey& o) const { return a == o.a && b == o.b; }
};
struct FormKeyHash {
    size_t operator()(const FormKey& k) const {
        return std::hash<u64>()((u64)k.a * 0x9e3779b97f4a7c15ull ^ (u64)k.b);
    }
};

/*
 * Class group of an imaginary quadratic field by exhaustive reduced-form
 * enumeration.  Generators are chosen deterministically: scanning reduced
 * forms in lexicographic (a,b,c) order, each form independent of the
 * subgroup generated so far opens a new polycyclic generator.  A full
 * form -> exponent-vector map provides discrete logs.
 */
struct ClassGroupData {
    QuadField F;
    u64 h = 1;
    std::vector<BinaryForm> reduced;          /* sorted lex */
    std::vector<BinaryForm> generators;        /* polycyclic, lex-first */
    std::vector<u64> rel_orders;               /* order of g_i modulo <g_1..g_{i-1}> */
    std::vector<u64> elementary_divisors;      /* d_1 | d_2 | ... , product = h */
    std::unordered_map<FormKey, std::vector<i64>, FormKeyHash> dlog;

    u64 order_of(const BinaryForm& f) const {
        BinaryForm g = f;
        reduce(g);
        if (g.is_identity()) return 1;
        for (u64 d : divisors_sorted(h))
            if (d > 1 && form_pow(g, d).is_identity()) return d;
        throw Error("order_of: element order does not divide group order");
    }

    std::vector<i64> discrete_log(const BinaryForm& f) const {
        BinaryForm g = f;
        reduce(g);
        auto it = dlog.find({g.a, g.b});
        if (it == dlog.end()) throw Error("discrete_log: form not in table");
        return it->second;
    }

    /* p-part: elementary divisors restricted to their p-power parts */
    std::vector<u64> p_part(u64 p) const {
        std::vector<u64> out;
        for (u64 d : elementary_divisors) {
            u64 q = 1;
            while (d % p == 0) { d /= p; q *= p; }
            if (q > 1) out.push_back(q);
        }
        return out;
    }

    bool p_part_cyclic(u64 p) const { return p_part(p).size() <= 1; }

    int p_exponent(u64 p) const {
        /* exponent of the p-class group as a power of p, i.e. v_p of the
           largest elementary divisor */
        int e = 0;
        for (u64 d : elementary_divisors) e = std::max(e, vp_u64(d, p));
        return e;
    }
};

/* class number only; the cheap path used by batch scans */
inline u64 class_number(const QuadField& F) {
    if (!F.imaginary()) throw Error("class_number: imaginary fields only here");
    return enumerate_reduced_forms(F.D);
}

namespace detail {

inline void build_structure(ClassGroupData& G) {
    const i64 D = G.F.D;
    G.dlog.clear();
    G.generators.clear();
    G.rel_orders.clear();
    BinaryForm id = identity_form(D);
    G.dlog[{id.a, id.b}] = {};

    /* polycyclic generators in lex order */
    std::vector<std::pair<BinaryForm, std::vector<i64>>> elems{{id, {}}};
    for (const BinaryForm& f : G.reduced) {
        if (G.dlog.size() == G.h) break;
        if (G.dlog.count({f.a, f.b})) continue;
        /* order of f modulo current subgroup */
        u64 k = 1;
        BinaryForm fk = f;
        while (!G.dlog.count({fk.a, fk.b})) {
            fk = compose(fk, f);
            ++k;
        }
        size_t gi = G.generators.size();
        G.generators.push_back(f);
        G.rel_orders.push_back(k);
        std::vector<std::pair<BinaryForm, std::vector<i64>>> next;
        next.reserve(elems.size() * k);
        BinaryForm fp = id;
        for (u64 e = 0; e < k; ++e) {
            for (auto& [g, vec] : elems) {
                BinaryForm prod = e == 0 ? g : compose(g, fp);
                auto v = vec;
                v.resize(gi + 1, 0);
                v[gi] = (i64)e;
                if (e > 0) G.dlog[{prod.a, prod.b}] = v;
                next.emplace_back(prod, v);
            }
            if (e + 1 < k) fp = compose(fp, f);
        }
        elems = std::move(next);
    }

    /* elementary divisors from torsion counts, prime by prime: for an
       abelian p-group with partition lambda, #{g : g^{p^k} = 1} =
       p^{sum_i min(lambda_i, k)}, which pins the partition */
    std::map<u64, std::vector<int>> partitions; /* p -> lambda_1 >= lambda_2 >= ... */
    std::vector<std::pair<u64, int>> hfac;
    factor_u64(G.h, hfac);
    for (auto& [p, e] : hfac) {
        u64 cop = G.h;
        while (cop % p == 0) cop /= p;
        /* g -> g^cop projects onto the Sylow subgroup with prime-to-p fibers,
           so v_p of the raw count is the torsion exponent we want */
        std::vector<BinaryForm> sylow_img;
        sylow_img.reserve(G.reduced.size());
        for (const BinaryForm& f : G.reduced) sylow_img.push_back(form_pow(f, cop));
        std::vector<int> cnt_log{0};
        for (int k = 1;; ++k) {
            u64 pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            u64 n = 0;
            for (const BinaryForm& s : sylow_img)
                if (form_pow(s, pk).is_identity()) ++n;
            cnt_log.push_back(vp_u64(n, p));
            if (cnt_log.back() == e) break;
        }
        std::vector<int> lambda((size_t)(cnt_log[1] - cnt_log[0]), 0);
        for (size_t k = 1; k < cnt_log.size(); ++k) {
            int parts_ge_k = cnt_log[k] - cnt_log[k - 1];
            for (int i = 0; i < parts_ge_k; ++i) lambda[i] = (int)k;
        }
        partitions[p] = lambda;
    }
    size_t rank = 0;
    for (auto& [p, lam] : partitions) rank = std::max(rank, lam.size());
    std::vector<u64> divs(rank, 1);
    for (auto& [p, lam] : partitions) {
        for (size_t i = 0; i < lam.size(); ++i) {
            u64 pk = 1;
            for (int j = 0; j < lam[i]; ++j) pk *= p;
            /* largest divisor gets the largest p-part */
            divs[rank - 1 - i] *= pk;
        }
    }
    G.elementary_divisors = divs;
}

} // namespace detail

inline std::shared_ptr<const ClassGroupData> class_group(const QuadField& F) {
    if (!F.imaginary()) throw Error("class_group: imaginary fields only here");
    static std::mutex mtx;
    static std::map<i64, std::shared_ptr<const ClassGroupData>> memo;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = memo.find(F.D);
        if (it != memo.end()) return it->second;
    }
    auto G = std::make_shared<ClassGroupData>();
    G->F = F;
    std::function<void(i64, i64, i64)> sink = [&](i64 a, i64 b, i64 c) {
        G->reduced.push_back({a, b, c, F.D});
    };
    G->h = enumerate_reduced_forms(F.D, &sink);
    std::sort(G->reduced.begin(), G->reduced.end());
    detail::build_structure(*G);
    std::lock_guard<std::mutex> lk(mtx);
    auto [it, _] = memo.emplace(F.D, std::move(G));
    return it->second;
}

} // namespace quadlog
