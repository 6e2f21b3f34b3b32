#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "quadfield.hpp"

namespace quadlog {

/*
 * Adapter around an external PARI/GP interpreter.  One subprocess per query,
 * scripts generated from the checked-in templates, transcripts persisted for
 * audit.  Everything here is optional: probe() decides, callers skip.
 */
struct OracleConfig {
    std::string gp_path;           /* empty: $QUADLOG_GP, then "gp" */
    std::string artifacts_dir = "oracle-artifacts";
    std::string template_dir = "scripts/gp";
    int timeout_sec = 300;

    std::string interpreter() const {
        if (!gp_path.empty()) return gp_path;
        if (const char* env = std::getenv("QUADLOG_GP")) return env;
        return "gp";
    }
};

struct Availability {
    bool available = false;
    std::string version;
    std::string diagnostic;
};

namespace detail {

inline std::string shell_capture(const std::string& cmd, int* exit_code) {
    std::string out;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) {
        if (exit_code) *exit_code = -1;
        return out;
    }
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int rc = pclose(p);
    if (exit_code) *exit_code = rc;
    return out;
}

} // namespace detail

inline Availability probe(const OracleConfig& cfg = {}) {
    Availability av;
    int rc = 0;
    std::string out = detail::shell_capture(
        "command -v " + cfg.interpreter() + " >/dev/null 2>&1 && " +
            cfg.interpreter() + " --version-short",
        &rc);
    if (rc != 0 || out.empty()) {
        av.diagnostic = out.empty() ? "interpreter not on path" : out;
        return av;
    }
    av.available = true;
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    av.version = out;
    return av;
}

inline std::string load_template(const OracleConfig& cfg, const std::string& name) {
    std::ifstream in(cfg.template_dir + "/" + name);
    if (!in) throw ScriptFailure("missing script template: " + name);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

inline void substitute(std::string& s, const std::string& key, const std::string& val) {
    size_t pos = 0;
    while ((pos = s.find(key, pos)) != std::string::npos) {
        s.replace(pos, key.size(), val);
        pos += val.size();
    }
}

/* run a generated script, persist script + transcript, return the transcript */
inline std::string run_script(const OracleConfig& cfg, const std::string& tag,
                              const std::string& script) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.artifacts_dir);
    std::string spath = cfg.artifacts_dir + "/" + tag + ".gp";
    {
        std::ofstream out(spath);
        out << script;
    }
    int rc = 0;
    std::string transcript = detail::shell_capture(
        "timeout " + std::to_string(cfg.timeout_sec) + " " + cfg.interpreter() +
            " -q " + spath,
        &rc);
    {
        std::ofstream out(cfg.artifacts_dir + "/" + tag + ".out");
        out << transcript;
    }
    if (rc != 0)
        throw ScriptFailure("gp exited with status " + std::to_string(rc) + " on " + tag);
    return transcript;
}

/* ---- transcript parsing ---- */

/* parse "[[9,3],[6561],[]]" style nested integer lists; unparseable entries
   (e.g. "[rationals, too big]") become empty groups rather than errors */
inline std::vector<std::vector<long>> parse_nested_list(const std::string& s) {
    std::vector<std::vector<long>> out;
    size_t i = 0;
    auto skip = [&] { while (i < s.size() && isspace((unsigned char)s[i])) ++i; };
    skip();
    if (i >= s.size() || s[i] != '[') throw ParseFailure("expected [ in " + s);
    ++i;
    while (true) {
        skip();
        if (i >= s.size()) throw ParseFailure("unterminated list: " + s);
        if (s[i] == ']') { ++i; break; }
        if (s[i] == ',') { ++i; continue; }
        if (s[i] != '[') throw ParseFailure("expected inner [ in " + s);
        size_t close = s.find(']', i);
        if (close == std::string::npos) throw ParseFailure("unterminated inner list");
        std::string inner = s.substr(i + 1, close - i - 1);
        i = close + 1;
        std::vector<long> group;
        bool opaque = false;
        size_t j = 0;
        while (j < inner.size()) {
            while (j < inner.size() && (isspace((unsigned char)inner[j]) || inner[j] == ',')) ++j;
            if (j >= inner.size()) break;
            char* end = nullptr;
            long v = strtol(inner.c_str() + j, &end, 10);
            if (end == inner.c_str() + j) { opaque = true; break; }
            group.push_back(v);
            j = (size_t)(end - inner.c_str());
        }
        out.push_back(opaque ? std::vector<long>{} : group);
    }
    return out;
}

inline std::optional<std::string> find_field(const std::string& transcript,
                                             const std::string& key) {
    size_t pos = transcript.find(key);
    if (pos == std::string::npos) return std::nullopt;
    pos += key.size();
    size_t end = pos;
    int depth = 0;
    while (end < transcript.size()) {
        char c = transcript[end];
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (depth == 0 && (c == ' ' || c == '\n' || c == '\r') && end > pos) break;
        ++end;
    }
    return transcript.substr(pos, end - pos);
}

struct OracleReport {
    bool parsed = false;
    std::vector<std::vector<long>> clog; /* three groups, first = structure of H~ */
    std::vector<long> tp, hp;
    long clog_order = 1;                 /* product of the first group */
    std::string raw;
};

inline OracleReport parse_clog_report(const std::string& transcript) {
    OracleReport rep;
    rep.raw = transcript;
    auto clog = find_field(transcript, "Clog=");
    if (!clog) throw ParseFailure("no Clog= line in transcript");
    rep.clog = parse_nested_list(*clog);
    if (rep.clog.empty()) throw ParseFailure("empty Clog structure");
    rep.clog_order = 1;
    for (long d : rep.clog[0]) rep.clog_order *= d;
    auto one_level = [&](const char* key, std::vector<long>& dst) {
        auto f = find_field(transcript, key);
        if (!f) return;
        std::string wrapped = *f;
        /* Tp=[3,3] or Tp=List([...]) */
        size_t lb = wrapped.find('[');
        size_t rb = wrapped.rfind(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb) return;
        std::string inner = wrapped.substr(lb + 1, rb - lb - 1);
        size_t j = 0;
        while (j < inner.size()) {
            while (j < inner.size() && !isdigit((unsigned char)inner[j])) ++j;
            if (j >= inner.size()) break;
            char* end = nullptr;
            long v = strtol(inner.c_str() + j, &end, 10);
            dst.push_back(v);
            j = (size_t)(end - inner.c_str());
        }
    };
    one_level("Tp=", rep.tp);
    one_level("Hp=", rep.hp);
    rep.parsed = true;
    return rep;
}

/* compare #Clog[1] against the native p^{delta_tilde} */
inline OracleReport check_invariants(const OracleConfig& cfg, i64 m, u64 p, unsigned n = 8) {
    std::string script = load_template(cfg, "clog_check.gp.in");
    substitute(script, "@M@", std::to_string(m));
    substitute(script, "@P@", std::to_string(p));
    substitute(script, "@N@", std::to_string(n));
    std::string tag = "clog_m" + std::to_string(m) + "_p" + std::to_string(p);
    return parse_clog_report(run_script(cfg, tag, script));
}

enum class Capitulation { Total, Partial, None };

struct CapitulationReport {
    Capitulation verdict = Capitulation::None;
    std::vector<std::vector<long>> nu_images; /* exponent vectors of nu(H_K1) generators */
    std::string raw;
};

inline CapitulationReport parse_capitulation(const std::string& transcript) {
    CapitulationReport rep;
    rep.raw = transcript;
    size_t pos = 0;
    while ((pos = transcript.find("nu=[", pos)) != std::string::npos) {
        size_t close = transcript.find(']', pos + 3);
        if (close == std::string::npos) break;
        std::string inner = transcript.substr(pos + 4, close - pos - 4);
        std::vector<long> v;
        size_t j = 0;
        while (j < inner.size()) {
            while (j < inner.size() && !isdigit((unsigned char)inner[j]) && inner[j] != '-') ++j;
            if (j >= inner.size()) break;
            char* end = nullptr;
            long x = strtol(inner.c_str() + j, &end, 10);
            if (end == inner.c_str() + j) break;
            v.push_back(x);
            j = (size_t)(end - inner.c_str());
        }
        rep.nu_images.push_back(v);
        pos = close;
    }
    if (rep.nu_images.empty()) throw ParseFailure("no nu=[...] vectors in transcript");
    bool all_zero = true, any_zero = false;
    for (auto& v : rep.nu_images) {
        bool z = true;
        for (long x : v)
            if (x != 0) z = false;
        all_zero &= z;
        any_zero |= z;
    }
    rep.verdict = all_zero ? Capitulation::Total
                           : (any_zero ? Capitulation::Partial : Capitulation::None);
    return rep;
}

inline CapitulationReport check_capitulation(const OracleConfig& cfg, i64 m,
                                             const std::string& cubic) {
    std::string script = load_template(cfg, "capitulation.gp.in");
    substitute(script, "@M@", std::to_string(m));
    substitute(script, "@Q@", cubic);
    std::string tag = "capitulation_m" + std::to_string(m);
    return parse_capitulation(run_script(cfg, tag, script));
}

} // namespace quadlog
