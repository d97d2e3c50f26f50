#include "qgl/fock.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qgl {

long occupation_degree(const Occupation& occ) {
    long d = 0;
    for (const auto& [sm, k] : occ) d += sm.second * k;
    return d;
}

std::string occupation_key(const Occupation& occ) {
    std::ostringstream os;
    for (const auto& [sm, k] : occ)
        os << sm.first << ':' << sm.second << 'x' << k << ';';
    return os.str();
}

namespace {

// All occupations of total degree exactly d over ns species, canonical
// order: species ascending, modes ascending within a species.
void gen_occ(int ns, long d, int s, long min_mode, Occupation& cur,
             std::vector<Occupation>& out) {
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    if (s >= ns) return;
    // advance to the next species
    gen_occ(ns, d, s + 1, 1, cur, out);
    for (long m = min_mode; m <= d; ++m)
        for (long k = 1; m * k <= d; ++k) {
            cur.emplace_back(std::make_pair(s, m), k);
            gen_occ(ns, d - m * k, s, m + 1, cur, out);
            cur.pop_back();
        }
}

} // namespace

FockBasis::FockBasis(int N, std::vector<LatticePoint> window, long max_degree)
    : n_(N), d_(max_degree), window_(std::move(window)) {
    if (N < 1) throw std::invalid_argument("FockBasis: N must be positive");
    if (d_ < 0) throw std::invalid_argument("FockBasis: negative degree cap");
    for (const auto& p : window_)
        if (static_cast<int>(p.chg.size()) != 3 * n_)
            throw std::invalid_argument("FockBasis: charge vector length mismatch");
    std::sort(window_.begin(), window_.end());
    window_.erase(std::unique(window_.begin(), window_.end()), window_.end());

    std::vector<std::pair<long, Occupation>> occs; // (degree, occupation)
    for (long d = 0; d <= d_; ++d) {
        std::vector<Occupation> at;
        Occupation cur;
        gen_occ(3 * n_, d, 0, 1, cur, at);
        for (auto& o : at) {
            std::sort(o.begin(), o.end());
            occs.emplace_back(d, std::move(o));
        }
    }
    std::sort(occs.begin(), occs.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return occupation_key(x.second) < occupation_key(y.second);
    });

    for (long li = 0; li < static_cast<long>(window_.size()); ++li)
        for (const auto& [d, o] : occs) {
            FockState st;
            st.lattice = li;
            st.occ = o;
            st.degree = d;
            index_[{li, occupation_key(o)}] = static_cast<long>(states_.size());
            states_.push_back(std::move(st));
        }
}

long FockBasis::index_of(long lattice_idx, const Occupation& occ) const {
    auto it = index_.find({lattice_idx, occupation_key(occ)});
    return it == index_.end() ? -1 : it->second;
}

long FockBasis::lattice_index(const LatticePoint& p) const {
    auto it = std::lower_bound(window_.begin(), window_.end(), p);
    if (it == window_.end() || !(*it == p)) return -1;
    return static_cast<long>(it - window_.begin());
}

QScalar FockBasis::kappa(int species, long mode) const {
    if (mode <= 0) throw std::invalid_argument("kappa: mode must be positive");
    QScalar base = QScalar(Rat(1, mode)) * qnum(mode) * qnum(mode);
    if (species < 2 * n_ && species % 2 == 1) return QScalar(-1) * base;
    return base;
}

std::uint64_t FockBasis::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& p : window_)
        for (const auto& r : p.chg) mix(rat_str(r) + ",");
    for (const auto& st : states_) {
        mix(std::to_string(st.lattice) + "|");
        mix(occupation_key(st.occ));
    }
    return h;
}

void OpMatrix::add_entry(long row, long col, const QScalar& v, const Rat& phase) {
    if (v.zero()) return;
    Rat ph = mod2(phase);
    QScalar val = v;
    if (ph >= Rat(1)) {
        val = QScalar(-1) * val;
        ph -= 1;
    }
    auto key = std::make_pair(row, col);
    auto it = e_.find(key);
    if (it == e_.end()) {
        e_.emplace(key, OpEntry{val, ph});
        return;
    }
    if (!(it->second.ph == ph))
        throw std::runtime_error("OpMatrix: residual uncancelled phase in entry sum");
    it->second.v = it->second.v + val;
    if (it->second.v.zero()) e_.erase(it);
}

QScalar OpMatrix::coeff(long row, long col) const {
    auto it = e_.find({row, col});
    if (it == e_.end()) return QScalar();
    if (!(it->second.ph == Rat(0)))
        throw std::runtime_error("OpMatrix: fractional phase where scalar expected");
    return it->second.v;
}

bool OpMatrix::has_fractional_phase() const {
    for (const auto& [rc, en] : e_)
        if (!(en.ph == Rat(0))) return true;
    return false;
}

OpMatrix operator*(const OpMatrix& a, const OpMatrix& b) {
    OpMatrix r;
    r.src_ = b.src_;
    r.tgt_ = a.tgt_;
    r.degree_shift = a.degree_shift + b.degree_shift;
    r.exp_offset = a.exp_offset;
    for (const auto& [k, v] : b.exp_offset.entries()) r.exp_offset.add(k, v);
    r.truncated = a.truncated + b.truncated;
    r.max_rise = a.max_rise + b.max_rise;
    r.dirty = b.dirty;
    if (!a.dirty.empty())
        for (const auto& [rc, en] : b.e_)
            if (a.dirty.count(rc.first)) r.dirty.insert(rc.second);
    // group a's entries by column for the join
    std::map<long, std::vector<std::pair<long, const OpEntry*>>> acol;
    for (const auto& [rc, en] : a.e_) acol[rc.second].emplace_back(rc.first, &en);
    for (const auto& [rc, en] : b.e_) {
        auto it = acol.find(rc.first);
        if (it == acol.end()) continue;
        for (const auto& [row, aen] : it->second)
            r.add_entry(row, rc.second, aen->v * en.v, aen->ph + en.ph);
    }
    return r;
}

OpMatrix operator+(const OpMatrix& a, const OpMatrix& b) {
    OpMatrix r = a;
    r.truncated = a.truncated + b.truncated;
    r.max_rise = std::max(a.max_rise, b.max_rise);
    r.dirty.insert(b.dirty.begin(), b.dirty.end());
    for (const auto& [rc, en] : b.e_) r.add_entry(rc.first, rc.second, en.v, en.ph);
    return r;
}

OpMatrix operator-(const OpMatrix& a, const OpMatrix& b) {
    OpMatrix r = a;
    r.truncated = a.truncated + b.truncated;
    r.max_rise = std::max(a.max_rise, b.max_rise);
    r.dirty.insert(b.dirty.begin(), b.dirty.end());
    for (const auto& [rc, en] : b.e_)
        r.add_entry(rc.first, rc.second, QScalar(-1) * en.v, en.ph);
    return r;
}

OpMatrix operator*(const QScalar& s, const OpMatrix& a) {
    OpMatrix r(a.src_ ? a.src_ : a.tgt_);
    r.src_ = a.src_;
    r.tgt_ = a.tgt_;
    r.degree_shift = a.degree_shift;
    r.exp_offset = a.exp_offset;
    r.truncated = a.truncated;
    r.max_rise = a.max_rise;
    r.dirty = a.dirty;
    if (s.zero()) return r;
    for (const auto& [rc, en] : a.e_) r.add_entry(rc.first, rc.second, s * en.v, en.ph);
    return r;
}

OpMatrix OpMatrix::bracket(const OpMatrix& a, const OpMatrix& b, const QScalar& x,
                           int sign) {
    OpMatrix ab = a * b;
    OpMatrix ba = b * a;
    return ab - (QScalar(sign) * x) * ba;
}

bool OpMatrix::equals_scaled_identity_on(const QScalar& s,
                                         const std::vector<char>& keep) const {
    for (const auto& [rc, en] : e_) {
        if (rc.second < 0 || rc.second >= static_cast<long>(keep.size())) return false;
        if (!keep[static_cast<size_t>(rc.second)]) continue;
        if (!(en.ph == Rat(0))) return false;
        if (rc.first != rc.second) return false;
        if (!(en.v == s)) return false;
    }
    if (s.zero()) return true;
    // every kept column must actually carry the diagonal value
    for (long c = 0; c < static_cast<long>(keep.size()); ++c) {
        if (!keep[static_cast<size_t>(c)]) continue;
        auto it = e_.find({c, c});
        if (it == e_.end() || !(it->second.v == s)) return false;
    }
    return true;
}

OpMatrix OpMatrix::restrict_columns(const std::vector<char>& keep) const {
    OpMatrix r;
    r.src_ = src_;
    r.tgt_ = tgt_;
    r.degree_shift = degree_shift;
    r.exp_offset = exp_offset;
    r.truncated = truncated;
    r.max_rise = max_rise;
    for (long d : dirty)
        if (d >= 0 && d < static_cast<long>(keep.size()) && keep[static_cast<size_t>(d)])
            r.dirty.insert(d);
    for (const auto& [rc, en] : e_)
        if (rc.second >= 0 && rc.second < static_cast<long>(keep.size()) &&
            keep[static_cast<size_t>(rc.second)])
            r.e_.emplace(rc, en);
    return r;
}

OpMatrix oscillator_action(int species, long n, const FockBasis& basis) {
    OpMatrix M(&basis);
    M.degree_shift = -n;
    if (n < 0) M.max_rise = -n;
    for (long c = 0; c < basis.size(); ++c) {
        const FockState& st = basis.state(c);
        if (n == 0) {
            // diagonal charge eigenvalue
            const Rat& lam = basis.point(st.lattice).chg.at(static_cast<size_t>(species));
            M.add_entry(c, c, QScalar(lam));
            continue;
        }
        Occupation occ = st.occ;
        long m = n < 0 ? -n : n;
        auto key = std::make_pair(species, m);
        auto it = std::lower_bound(occ.begin(), occ.end(), key,
                                   [](const auto& e, const auto& k) { return e.first < k; });
        if (n < 0) {
            // creation: one more quantum of mode m
            if (st.degree + m > basis.max_degree()) {
                ++M.truncated;
                M.dirty.insert(c);
                continue;
            }
            if (it != occ.end() && it->first == key)
                it->second += 1;
            else
                occ.insert(it, {key, 1});
            long r = basis.index_of(st.lattice, occ);
            if (r < 0) {
                ++M.truncated;
                M.dirty.insert(c);
                continue;
            }
            M.add_entry(r, c, QScalar(1));
        } else {
            // annihilation: contract against one quantum, weight kappa * k
            if (it == occ.end() || !(it->first == key)) continue;
            long k = it->second;
            if (k == 1)
                occ.erase(it);
            else
                it->second -= 1;
            long r = basis.index_of(st.lattice, occ);
            if (r < 0) continue;
            M.add_entry(r, c, QScalar(Rat(k)) * basis.kappa(species, m));
        }
    }
    return M;
}

OpMatrix diagonal_qpow(const RatVec& w, const FockBasis& basis) {
    OpMatrix M(&basis);
    for (long c = 0; c < basis.size(); ++c) {
        const FockState& st = basis.state(c);
        Rat e = dot(w, basis.point(st.lattice).chg);
        M.add_entry(c, c, QScalar::qpow(e));
    }
    return M;
}

OpMatrix diagonal_of(const std::vector<QScalar>& per_point, const FockBasis& basis) {
    OpMatrix M(&basis);
    for (long c = 0; c < basis.size(); ++c) {
        const FockState& st = basis.state(c);
        M.add_entry(c, c, per_point.at(static_cast<size_t>(st.lattice)));
    }
    return M;
}

std::vector<char> OpMatrix::clean_keep() const {
    if (!src_) throw std::logic_error("OpMatrix: clean_keep needs a source basis");
    std::vector<char> keep(static_cast<size_t>(src_->size()), 1);
    for (long d : dirty)
        if (d >= 0 && d < src_->size()) keep[static_cast<size_t>(d)] = 0;
    return keep;
}

std::vector<char> degree_guard(const FockBasis& basis, long limit) {
    std::vector<char> keep(static_cast<size_t>(basis.size()), 0);
    for (long c = 0; c < basis.size(); ++c)
        if (basis.state(c).degree <= limit) keep[static_cast<size_t>(c)] = 1;
    return keep;
}

} // namespace qgl
