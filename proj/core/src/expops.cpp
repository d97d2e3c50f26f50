#include "qgl/expops.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qgl {

QScalar osc_eval(const std::vector<OscTerm>& terms, long m) {
    if (m <= 0) throw std::invalid_argument("osc_eval: mode must be positive");
    QScalar s;
    for (const auto& t : terms) {
        QScalar v = t.r;
        if (!t.rp.zero()) v = v + t.rp * (upow(2 * m) + upow(-2 * m));
        if (t.k != 0) v = v * upow(t.k * m);
        if (t.inv) v = v / qnum(m);
        s = s + v;
    }
    return s;
}

QScalar combo_eval(const OscCombo& combo, int species, long m) {
    auto it = combo.find(species);
    if (it == combo.end()) return QScalar();
    return osc_eval(it->second, m);
}

namespace {

// [b_n, b_{-n}] for the elementary species, any n != 0.
QScalar mode_kappa(int N, int species, long n) {
    long m = n < 0 ? -n : n;
    QScalar v = QScalar(Rat(1, m)) * qnum(m) * qnum(m);
    if (species < 2 * N && species % 2 == 1) v = QScalar(-1) * v;
    if (n < 0) v = QScalar(-1) * v;
    return v;
}

void combo_add(OscCombo& dst, int species, const OscTerm& t) {
    if (t.r.zero() && t.rp.zero()) return;
    dst[species].push_back(t);
}

// Scale all terms of a combo by a rational and merge into dst.
void combo_axpy(OscCombo& dst, const OscCombo& src, const Rat& f) {
    if (f == Rat(0)) return;
    for (const auto& [s, terms] : src)
        for (const auto& t : terms)
            combo_add(dst, s, {QScalar(f) * t.r, QScalar(f) * t.rp, t.k, t.inv});
}

int alt_sign(int l) { return (l % 2 == 1) ? 1 : -1; } // (-1)^{l+1}, l 1-based

} // namespace

OscCombo combo_A(const Cartan& C, int j) {
    const int m = C.size();
    OscCombo r;
    if (j < m) {
        OscTerm t{QScalar(alt_sign(j)), QScalar(), 0, 0};
        combo_add(r, j - 1, t);
        combo_add(r, j, t);
    } else {
        for (int l = 1; l <= m; ++l)
            combo_add(r, l - 1, {QScalar(), QScalar(rat(alt_sign(l), 2)), 0, 0});
    }
    return r;
}

RatVec eig_A0(const Cartan& C, int j) {
    const int m = C.size();
    RatVec v(static_cast<size_t>(3 * C.N()), Rat(0));
    if (j < m) {
        v[static_cast<size_t>(j - 1)] = alt_sign(j);
        v[static_cast<size_t>(j)] = alt_sign(j);
    } else {
        for (int l = 1; l <= m; ++l) v[static_cast<size_t>(l - 1)] = alt_sign(l);
    }
    return v;
}

RatVec disp_QA(const Cartan& C, int j) {
    const int m = C.size();
    RatVec v(static_cast<size_t>(3 * C.N()), Rat(0));
    if (j < m) {
        v[static_cast<size_t>(j - 1)] = 1;
        v[static_cast<size_t>(j)] = -1;
    } else {
        for (int l = 1; l <= m; ++l) v[static_cast<size_t>(l - 1)] = 1;
    }
    return v;
}

OscCombo combo_Astar(const Cartan& C, int j) {
    const int m = C.size();
    OscCombo r;
    if (j < m) {
        for (int l = 1; l < m; ++l) combo_axpy(r, combo_A(C, l), C.ainv(j, l));
        // the 2N-th contribution loses its mode-dependent factor against
        // the compensating normalization in the starred definition
        for (int l = 1; l <= m; ++l)
            combo_add(r, l - 1, {QScalar(C.ainv(j, m) * Rat(alt_sign(l))), QScalar(), 0, 0});
    } else {
        for (int l = 1; l < m; ++l) combo_axpy(r, combo_A(C, l), Rat(m) * C.ainv(m, l));
        combo_axpy(r, combo_A(C, m), Rat(m) * C.ainv(m, m));
    }
    return r;
}

RatVec eig_Astar0(const Cartan& C, int j) {
    const int m = C.size();
    RatVec v(static_cast<size_t>(3 * C.N()), Rat(0));
    for (int l = 1; l <= m; ++l) v = add(v, scale(C.ainv(j, l), eig_A0(C, l)));
    return v;
}

RatVec disp_QAstar(const Cartan& C, int j) {
    const int m = C.size();
    RatVec v(static_cast<size_t>(3 * C.N()), Rat(0));
    for (int l = 1; l <= m; ++l) v = add(v, scale(C.ainv(j, l), disp_QA(C, l)));
    return v;
}

QScalar combo_pairing(const Cartan& C, const OscCombo& x, const OscCombo& y, long n) {
    if (n == 0) throw std::invalid_argument("combo_pairing: n must be nonzero");
    long m = n < 0 ? -n : n;
    QScalar s;
    for (const auto& [sp, terms] : x) {
        auto it = y.find(sp);
        if (it == y.end()) continue;
        s = s + osc_eval(terms, m) * osc_eval(it->second, m) * mode_kappa(C.N(), sp, n);
    }
    return s;
}

namespace {

long half_to_long(const Rat& twice) {
    if (!is_integer(twice))
        throw std::runtime_error("field argument scale must be a half-integer power");
    return to_long(twice);
}

// Shared oscillator shape of the ln-type fields: the exponent carries
// - creation coefficient  +sign combo(m) u^{2(kappa+beta) m} / [m]
// - annihilation coeff.   -sign combo(m) u^{2(kappa-beta) m} / [m]
void add_ln_field(ExpAtom& a, const OscCombo& combo, const RatVec& eig,
                  const RatVec& disp, const Rat& beta, const Rat& kappa, int sign,
                  int osc_sign, const Rat& osc_scale) {
    a.dl = add(a.dl, scale(Rat(sign), disp));
    a.w = add(a.w, scale(Rat(sign), eig));
    a.qw = add(a.qw, scale(Rat(sign) * beta, eig));
    long kc = half_to_long(Rat(2) * (kappa + beta));
    long ka = half_to_long(Rat(2) * (kappa - beta));
    for (const auto& [sp, terms] : combo)
        for (const auto& t : terms) {
            QScalar f = QScalar(Rat(sign * osc_sign) * osc_scale);
            a.cre[sp].push_back({f * t.r, f * t.rp, t.k + kc, t.inv + 1});
            a.ann[sp].push_back({QScalar(-1) * f * t.r, QScalar(-1) * f * t.rp,
                                 t.k + ka, t.inv + 1});
        }
}

} // namespace

void add_H(ExpAtom& a, const Cartan& C, int j, const Rat& beta, const Rat& kappa,
           int sign) {
    add_ln_field(a, combo_A(C, j), eig_A0(C, j), disp_QA(C, j), beta, kappa, sign, 1,
                 Rat(1));
}

void add_Hstar(ExpAtom& a, const Cartan& C, int j, const Rat& beta, const Rat& kappa,
               int sign) {
    if (j >= C.size()) throw std::invalid_argument("add_Hstar: index out of range");
    add_ln_field(a, combo_Astar(C, j), eig_Astar0(C, j), disp_QAstar(C, j), beta,
                 kappa, sign, 1, Rat(1));
}

void add_B2N(ExpAtom& a, const Cartan& C, const Rat& beta, const Rat& kappa, int sign) {
    const int m = C.size();
    add_ln_field(a, combo_Astar(C, m), eig_Astar0(C, m), disp_QAstar(C, m), beta,
                 kappa, sign, 1, Rat(1));
}

void add_B1(ExpAtom& a, const Cartan& C, const Rat& beta, const Rat& kappa, int sign) {
    const int m = C.size();
    // identical charge and zero mode, oscillator tail flipped and rescaled
    add_ln_field(a, combo_Astar(C, m), eig_Astar0(C, m), disp_QAstar(C, m), beta,
                 kappa, sign, -1, Rat(C.N() - 1, C.N()));
}

void add_c(ExpAtom& a, const Cartan& C, int l, const Rat& beta, int sign) {
    const int sp = 2 * C.N() + l - 1;
    OscCombo combo;
    combo[sp].push_back({QScalar(1), QScalar(), 0, 0});
    RatVec unit(static_cast<size_t>(3 * C.N()), Rat(0));
    unit[static_cast<size_t>(sp)] = 1;
    add_ln_field(a, combo, unit, unit, beta, Rat(0), sign, 1, Rat(1));
}

void add_Hpm(ExpAtom& a, const Cartan& C, int j, int pm) {
    OscCombo combo = combo_A(C, j);
    QScalar qd = upow(2) - upow(-2);
    for (const auto& [sp, terms] : combo)
        for (const auto& t : terms) {
            if (pm > 0)
                a.ann[sp].push_back({qd * t.r, qd * t.rp, t.k, t.inv});
            else
                a.cre[sp].push_back({QScalar(-1) * qd * t.r, QScalar(-1) * qd * t.rp,
                                     t.k, t.inv});
        }
    a.qw = add(a.qw, scale(Rat(pm > 0 ? 1 : -1), eig_A0(C, j)));
}

namespace {

struct Slot {
    int species;
    long mode;
    long have;      // source multiplicity
    QScalar annk;   // annihilation coefficient times kappa
    QScalar cre;    // creation coefficient
};

// DFS over per-slot (remove j, add t) choices; emits occupation deltas
// with their amplitudes once the net degree change hits the target.
void slot_dfs(const std::vector<Slot>& slots, size_t i, long net_needed,
              const std::vector<long>& rem_lo, const std::vector<long>& rem_hi,
              QScalar amp, std::vector<long>& counts,
              const std::function<void(const std::vector<long>&, const QScalar&)>& emit) {
    if (i == slots.size()) {
        if (net_needed == 0) emit(counts, amp);
        return;
    }
    if (net_needed < rem_lo[i] || net_needed > rem_hi[i]) return;
    const Slot& sl = slots[i];
    long jmax = (sl.annk.zero()) ? 0 : sl.have;
    QScalar ann_pow(1);
    Rat choose(1);
    for (long j = 0; j <= jmax; ++j) {
        if (j > 0) {
            ann_pow = ann_pow * sl.annk;
            choose = choose * Rat(sl.have - j + 1) / Rat(j);
        }
        // slot net is m(t - j); the suffix can still absorb rem_lo[i+1]
        long tmax = sl.cre.zero() ? 0
                                  : std::max<long>(0, net_needed + sl.mode * j -
                                                          rem_lo[i + 1]) /
                                        sl.mode;
        QScalar cre_pow(1);
        Rat fact(1);
        for (long t = 0; t <= tmax; ++t) {
            if (t > 0) {
                cre_pow = cre_pow * sl.cre;
                fact = fact * Rat(t);
            }
            long net = sl.mode * (t - j);
            QScalar a2 = amp * QScalar(choose) * ann_pow * cre_pow * QScalar(Rat(1) / fact);
            counts[i] = sl.have - j + t;
            slot_dfs(slots, i + 1, net_needed - net, rem_lo, rem_hi, a2, counts, emit);
        }
    }
    counts[i] = sl.have;
}

} // namespace

OpMatrix exp_vertex_mode(const ExpFieldSpec& spec, long n, const FockBasis& basis,
                         const std::vector<long>& cols) {
    OpMatrix M(&basis);
    M.degree_shift = -n;
    const int ns = basis.species_count();
    const long D = basis.max_degree();
    bool off_known = false;
    Rat off(0);

    for (const auto& atom : spec.atoms) {
        if (static_cast<int>(atom.w.size()) != ns)
            throw std::invalid_argument("exp_vertex_mode: atom rank mismatch");
        for (long c : cols) {
            const FockState& st = basis.state(c);
            const RatVec& lam = basis.point(st.lattice).chg;
            Rat zc = atom.s0 + dot(atom.w, lam);
            if (!off_known) {
                off = zc - rat_floor(zc);
                off_known = true;
                if (!(off == Rat(0))) M.exp_offset.add("z", off);
            }
            Rat delta = off - Rat(n + spec.conv_shift) - zc;
            if (!is_integer(delta))
                throw std::runtime_error(
                    "exp_vertex_mode: mixed fractional z-exponents in window");
            long ddeg = to_long(delta);
            if (ddeg > M.max_rise) M.max_rise = ddeg;
            long dtgt = st.degree + ddeg;
            if (dtgt < 0) continue;
            if (dtgt > D) {
                ++M.truncated;
                M.dirty.insert(c);
                continue;
            }
            LatticePoint tp{add(lam, atom.dl)};
            long tl = basis.lattice_index(tp);
            if (tl < 0) {
                ++M.truncated;
                M.dirty.insert(c);
                continue;
            }

            QScalar scalar0 = atom.pref * QScalar::qpow(dot(atom.qw, lam));
            Rat phase = dot(atom.t, lam);

            // Assemble slots: every occupied (species, mode) plus every mode
            // the creation exponent can populate within the degree budget.
            std::vector<Slot> slots;
            std::map<std::pair<int, long>, long> occm(st.occ.begin(), st.occ.end());
            for (int s = 0; s < ns; ++s) {
                bool can_create = atom.cre.count(s) > 0;
                for (long m = 1; m <= D; ++m) {
                    auto it = occm.find({s, m});
                    long have = it == occm.end() ? 0 : it->second;
                    bool cre_here = can_create && m <= D;
                    if (have == 0 && !cre_here) continue;
                    QScalar creco = cre_here ? combo_eval(atom.cre, s, m) : QScalar();
                    QScalar annco = have > 0 ? combo_eval(atom.ann, s, m) : QScalar();
                    if (have == 0 && creco.zero()) continue;
                    QScalar annk =
                        annco.zero() ? QScalar() : annco * basis.kappa(s, m);
                    slots.push_back({s, m, have, annk, creco});
                }
            }
            // suffix bounds on the achievable net degree change
            size_t L = slots.size();
            std::vector<long> rem_lo(L + 1, 0), rem_hi(L + 1, 0);
            for (size_t i = L; i-- > 0;) {
                const Slot& sl = slots[i];
                long lo = sl.annk.zero() ? 0 : -sl.mode * sl.have;
                long hi = sl.cre.zero() ? 0 : D; // at most D quanta of degree
                rem_lo[i] = rem_lo[i + 1] + lo;
                rem_hi[i] = rem_hi[i + 1] + hi;
            }
            std::vector<long> counts(L);
            for (size_t i = 0; i < L; ++i) counts[i] = slots[i].have;
            auto emit = [&](const std::vector<long>& cnt, const QScalar& amp) {
                Occupation occ;
                for (size_t i = 0; i < L; ++i)
                    if (cnt[i] > 0)
                        occ.emplace_back(std::make_pair(slots[i].species, slots[i].mode),
                                         cnt[i]);
                long r = basis.index_of(tl, occ);
                if (r < 0) {
                    ++M.truncated;
                    M.dirty.insert(c);
                    return;
                }
                M.add_entry(r, c, scalar0 * amp, phase);
            };
            slot_dfs(slots, 0, ddeg, rem_lo, rem_hi, QScalar(1), counts, emit);
        }
    }
    return M;
}

OpMatrix exp_vertex_mode(const ExpFieldSpec& spec, long n, const FockBasis& basis) {
    std::vector<long> cols(basis.size());
    std::iota(cols.begin(), cols.end(), 0);
    return exp_vertex_mode(spec, n, basis, cols);
}

QScalar pair_coeff(const Cartan& C, const ExpAtom& L, const ExpAtom& R, long n) {
    if (n <= 0) throw std::invalid_argument("pair_coeff: n must be positive");
    QScalar s;
    for (const auto& [sp, terms] : L.ann) {
        auto it = R.cre.find(sp);
        if (it == R.cre.end()) continue;
        s = s + osc_eval(terms, n) * osc_eval(it->second, n) * mode_kappa(C.N(), sp, n);
    }
    return s;
}

Rat cross_zpow(const ExpAtom& L, const ExpAtom& R) { return dot(L.w, R.dl); }
Rat cross_qpow(const ExpAtom& L, const ExpAtom& R) { return dot(L.qw, R.dl); }
Rat cross_phase(const ExpAtom& L, const ExpAtom& R) { return dot(L.t, R.dl); }

} // namespace qgl
