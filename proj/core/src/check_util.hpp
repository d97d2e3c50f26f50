#pragma once

// Shared plumbing for the relation suites: truncation-guarded comparisons,
// per-check counters, and optional wall-clock timing on stderr. Internal to
// the library sources.

#include "qgl/fock.hpp"
#include "qgl/report.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

namespace qgl {
namespace check_util {

inline RatVec neg(const RatVec& v) { return scale(Rat(-1), v); }

inline bool is_origin(const RatVec& v) {
    for (const auto& x : v)
        if (!(x == Rat(0))) return false;
    return true;
}

inline std::vector<char> and_mask(std::vector<char> a, const std::vector<char>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        a[i] = (a[i] && i < b.size() && b[i]) ? 1 : 0;
    return a;
}

// Identity restricted to the columns sitting over the zero lattice point.
// Right-multiplying by this keeps long compositions thin.
inline OpMatrix origin_selector(const FockBasis& b, std::vector<char>& mask) {
    mask.assign(static_cast<size_t>(b.size()), 0);
    OpMatrix s(&b);
    for (long i = 0; i < b.size(); ++i) {
        if (is_origin(b.point(b.state(i).lattice).chg)) {
            mask[static_cast<size_t>(i)] = 1;
            s.add_entry(i, i, QScalar(1));
        }
    }
    return s;
}

struct Tally {
    long ids = 0;
    long cols = 0;
};

// Relation check guarded by the truncation taint: compare P with s * identity
// on the clean columns (optionally intersected with an extra mask). A check
// with no clean columns is a failure, never a vacuous pass.
inline bool guarded_expect(CheckResult& c, Tally& t, const OpMatrix& P,
                           const QScalar& s, const std::vector<char>* mask,
                           const std::string& what) {
    std::vector<char> keep = P.clean_keep();
    if (mask) keep = and_mask(std::move(keep), *mask);
    long n = 0;
    for (char k : keep) n += k;
    ++t.ids;
    if (n == 0) {
        if (c.detail.empty()) c.detail = what + ": no clean columns";
        return false;
    }
    t.cols += n;
    if (!P.equals_scaled_identity_on(s, keep)) {
        if (c.detail.empty()) c.detail = what;
        return false;
    }
    return true;
}

// Exact matrix identity; valid even on truncated columns when both sides
// truncate identically (conjugations, gradings, scalar multiples).
inline bool full_expect(CheckResult& c, Tally& t, const OpMatrix& lhs,
                        const OpMatrix& rhs, const std::string& what) {
    ++t.ids;
    t.cols += static_cast<long>(lhs.entries().size());
    if (!(lhs == rhs)) {
        if (c.detail.empty()) c.detail = what;
        return false;
    }
    return true;
}

// wall-clock per check on stderr when QGLNN_TIMING is set; kept out of the
// stats so serialized reports stay byte-stable
struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

inline void seal(CheckResult& c, bool ok, const Tally& t) {
    c.pass = ok;
    c.stats["identities"] = t.ids;
    c.stats["columns"] = t.cols;
}

inline void seal(CheckResult& c, bool ok, const Tally& t, const Stopwatch& sw) {
    seal(c, ok, t);
    static const bool timing = std::getenv("QGLNN_TIMING") != nullptr;
    if (timing) std::fprintf(stderr, "[time] %6ld ms  %s\n", sw.ms(), c.name.c_str());
}

inline std::string istr(long v) { return std::to_string(v); }

} // namespace check_util
} // namespace qgl
