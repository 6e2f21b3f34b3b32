#pragma once

#include <atomic>
#include <condition_variable>
#include <functional>
#include <sstream>
#include <thread>

#include "invariants.hpp"

namespace quadlog {

struct ScanRow {
    i64 m = 0;
    u64 p = 3;
    u64 hk = 1, h = 1;
    unsigned delta = 0, delta_tilde = 0;
    mpz_class hlog = 1;
    Verdict goldsands = Verdict::NotApplicable;
    bool skipped = false;
    std::string skip_reason;
};

struct ScanSummary {
    u64 rows = 0, skipped_nonsquarefree = 0, skipped_nonsplit = 0, errors = 0;
};

inline ScanRow scan_row(i64 m, u64 p) {
    ScanRow r;
    r.m = m;
    r.p = p;
    QuadField F = make_field(m, Signature::imaginary);
    PUnitRecord rec = fundamental_p_unit(F, p);
    r.hk = rec.h_k;
    r.h = rec.h;
    r.delta = delta_p(rec);
    r.delta_tilde = delta_tilde(rec, r.delta);
    r.hlog = pow_u64(p, r.delta_tilde);
    r.goldsands = gold_sands(rec, r.delta);
    return r;
}

/*
 * Deterministic parallel map: tasks are processed in chunks by a small pool
 * and emitted strictly in input order, so worker count never changes output.
 */
template <typename Task, typename Out>
inline void parallel_map_ordered(const std::vector<Task>& tasks,
                                 const std::function<Out(const Task&)>& fn,
                                 const std::function<void(const Out&)>& emit,
                                 unsigned workers) {
    if (workers <= 1 || tasks.size() < 2) {
        for (const auto& t : tasks) emit(fn(t));
        return;
    }
    std::mutex mtx;
    std::condition_variable cv;
    std::map<size_t, Out> pending;
    std::atomic<size_t> next{0};
    size_t emit_at = 0;
    std::exception_ptr err;
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                Out o = fn(tasks[i]);
                std::lock_guard<std::mutex> lk(mtx);
                pending.emplace(i, std::move(o));
                cv.notify_all();
            } catch (...) {
                std::lock_guard<std::mutex> lk(mtx);
                if (!err) err = std::current_exception();
                cv.notify_all();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    {
        std::unique_lock<std::mutex> lk(mtx);
        while (emit_at < tasks.size()) {
            cv.wait(lk, [&] { return err || pending.count(emit_at); });
            if (err) break;
            emit(pending.at(emit_at));
            pending.erase(emit_at);
            ++emit_at;
        }
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

/* P3-style check over an explicit list of m */
inline std::vector<ScanRow> table_check(const std::vector<i64>& ms, u64 p,
                                        ScanSummary* summary = nullptr,
                                        unsigned workers = 1) {
    std::vector<ScanRow> rows;
    ScanSummary sum;
    std::function<ScanRow(const i64&)> fn = [&](const i64& m) -> ScanRow {
        ScanRow r;
        r.m = m;
        r.p = p;
        if (!is_squarefree(m)) {
            r.skipped = true;
            r.skip_reason = "not squarefree";
            return r;
        }
        QuadField F = make_field(m, Signature::imaginary);
        if (split_kind(F, p) != SplitKind::Split) {
            r.skipped = true;
            r.skip_reason = "p not split";
            return r;
        }
        return scan_row(m, p);
    };
    std::function<void(const ScanRow&)> emit = [&](const ScanRow& r) {
        if (r.skipped) {
            if (r.skip_reason == "not squarefree") ++sum.skipped_nonsquarefree;
            else ++sum.skipped_nonsplit;
        } else {
            ++sum.rows;
        }
        rows.push_back(r);
    };
    parallel_map_ordered<i64, ScanRow>(ms, fn, emit, workers);
    if (summary) *summary = sum;
    return rows;
}

enum class MaximaStatistic {
    /* the companion table's quantity: the Fermat-quotient valuation of
       X = gen(p-frak^{h_k}) (which already equals delta_tilde) with the
       class-number correction added once more, i.e.
       delta_tilde + [v_p(h_k) - v_p(h)].  This is what the published
       successive-maxima table records. */
    table,
    /* the invariant itself */
    delta_tilde,
};

struct MaximaRecord {
    u64 p = 3;
    MaximaStatistic stat = MaximaStatistic::table;
    std::vector<std::pair<i64, unsigned>> maxima; /* strictly rising */
};

/* P4-style successive maxima over squarefree m with p split */
inline MaximaRecord scan_maxima(u64 p, i64 m_bound, unsigned workers = 1,
                                MaximaStatistic stat = MaximaStatistic::table,
                                const std::function<void(i64, unsigned)>* on_new = nullptr) {
    MaximaRecord rec;
    rec.p = p;
    rec.stat = stat;
    std::vector<i64> ms;
    for (i64 m = 2; m <= m_bound; ++m) {
        if (!is_squarefree(m)) continue;
        if (kronecker(-m, (i64)p) != 1) continue;
        ms.push_back(m);
    }
    unsigned cur = 0; /* running maximum; only strict increases are recorded */
    std::function<std::pair<i64, unsigned>(const i64&)> fn2 =
        [&](const i64& m) -> std::pair<i64, unsigned> {
            QuadField F = make_field(m, Signature::imaginary);
            PUnitRecord r = fundamental_p_unit(F, p);
            unsigned dt = delta_tilde(r);
            if (stat == MaximaStatistic::table)
                dt += vp_u64(r.h_k, p) - vp_u64(r.h, p);
            return {m, dt};
        };
    std::function<void(const std::pair<i64, unsigned>&)> emit2 =
        [&](const std::pair<i64, unsigned>& pr) {
            if (pr.second > cur) {
                cur = pr.second;
                rec.maxima.emplace_back(pr.first, cur);
                if (on_new) (*on_new)(pr.first, cur);
            }
        };
    parallel_map_ordered<i64, std::pair<i64, unsigned>>(ms, fn2, emit2, workers);
    return rec;
}

struct PrimeHit {
    u64 p = 0;
    u64 hkp = 1; /* p-part of h_k */
    u64 h = 1;   /* order of cl(p-frak) */
};

/*
 * P5: split primes p <= bound with delta_p(k) >= 1, decided by the Fermat
 * quotient of the trace T = Tr(x) mod p^2:
 *   h >= 2:  delta >= 1  <=>  T^{p-1} = 1 mod p^2
 *   h  = 1:  delta >= 1  <=>  T^2 q + 1 = 0 mod p,  q = (T^{p-1}-1)/p
 */
inline bool delta_positive_shortcut(const PUnitRecord& rec) {
    u64 p = rec.p;
    mpz_class T = rec.x.trace();
    mpz_class p2 = (unsigned long)(p * p);
    mpz_class Tm = T % p2;
    if (Tm < 0) Tm += p2;
    if (Tm % p == 0) throw Error("delta_positive_shortcut: p | Tr(x)");
    mpz_class tp;
    mpz_powm_ui(tp.get_mpz_t(), Tm.get_mpz_t(), p - 1, p2.get_mpz_t());
    mpz_class q = (tp - 1) / p; /* exact by Fermat */
    if (rec.h != 1) return q % p == 0;
    mpz_class z = (Tm * Tm % p2) * q + 1;
    return z % p == 0;
}

inline bool delta_positive_norm_method(const PUnitRecord& rec) {
    return delta_p(rec) >= 1;
}

inline std::vector<PrimeHit> scan_primes(i64 m, u64 p_bound, unsigned workers = 1) {
    QuadField F = make_field(m, Signature::imaginary);
    u64 hk = class_number(F);
    std::vector<i64> ps;
    for (u64 p = 3; p <= p_bound; p = next_prime_u64(p))
        if (kronecker(F.D, (i64)p) == 1) ps.push_back((i64)p);
    std::vector<PrimeHit> hits;
    std::function<PrimeHit(const i64&)> fn = [&](const i64& pz) -> PrimeHit {
        u64 p = (u64)pz;
        PUnitRecord rec = fundamental_p_unit(F, p, hk);
        PrimeHit h;
        if (delta_positive_shortcut(rec)) {
            h.p = p;
            h.hkp = 1;
            for (unsigned i = 0; i < (unsigned)vp_u64(hk, p); ++i) h.hkp *= p;
            h.h = rec.h;
        }
        return h;
    };
    std::function<void(const PrimeHit&)> emit = [&](const PrimeHit& h) {
        if (h.p) hits.push_back(h);
    };
    parallel_map_ordered<i64, PrimeHit>(ps, fn, emit, workers);
    return hits;
}

/* ---- output formatting (JSON lines and aligned TSV) ---- */

inline std::string row_json(const ScanRow& r) {
    std::ostringstream os;
    os << "{\"m\":" << r.m << ",\"p\":" << r.p;
    if (r.skipped) {
        os << ",\"skipped\":\"" << r.skip_reason << "\"}";
        return os.str();
    }
    os << ",\"hk\":" << r.hk << ",\"h\":" << r.h << ",\"delta\":" << r.delta
       << ",\"delta_tilde\":" << r.delta_tilde << ",\"hlog\":" << r.hlog.get_str()
       << ",\"flags\":\"gold_sands=" << verdict_str(r.goldsands) << "\"}";
    return os.str();
}

inline std::string row_tsv(const ScanRow& r) {
    std::ostringstream os;
    if (r.skipped) {
        os << r.m << "\t" << r.p << "\t-\t-\t-\t-\t-\tskipped:" << r.skip_reason;
        return os.str();
    }
    os << r.m << "\t" << r.p << "\t" << r.hk << "\t" << r.h << "\t" << r.delta
       << "\t" << r.delta_tilde << "\t" << r.hlog.get_str() << "\t"
       << "gold_sands=" << verdict_str(r.goldsands);
    return os.str();
}

} // namespace quadlog
