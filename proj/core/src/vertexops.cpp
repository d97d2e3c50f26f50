#include "qgl/vertexops.hpp"

#include "check_util.hpp"

#include <stdexcept>

namespace qgl {

using namespace check_util;

VertexOps::VertexOps(const Cartan& C, const FockBasis& basis, CurrentOptions opt)
    : C_(C), b_(&basis), cur_(C, basis, opt) {}

int VertexOps::seed_component(const Cartan& C, VTower t) {
    return (t == VTower::Phi || t == VTower::PsiStar) ? C.size() : 1;
}

ExpFieldSpec vertex_seed(const Cartan& C_, VTower t) {
    const int S = 3 * C_.N();
    const int tn = C_.size();
    RatVec nf(static_cast<size_t>(S), Rat(0)); // fermion-counting phase vector
    for (int l = 1; l <= C_.N(); ++l) nf[static_cast<size_t>(2 * l - 1)] = Rat(1);

    ExpFieldSpec spec;
    spec.conv_shift = 0;
    switch (t) {
        case VTower::Phi: {
            ExpAtom a(S);
            add_Hstar(a, C_, tn - 1, Rat(1), Rat(1, 2), -1);
            add_B2N(a, C_, Rat(2), Rat(1, 2), +1);
            add_c(a, C_, C_.N(), Rat(1), +1);
            a.t = scale(Rat(-1), nf);
            spec.atoms.push_back(std::move(a));
            break;
        }
        case VTower::PhiStar: {
            ExpAtom a(S);
            add_Hstar(a, C_, 1, Rat(1), Rat(1, 2), +1);
            add_B1(a, C_, Rat(1), Rat(1, 2), +1);
            a.t = nf;
            spec.atoms.push_back(std::move(a));
            break;
        }
        case VTower::Psi: {
            ExpAtom a(S);
            add_Hstar(a, C_, 1, Rat(1), Rat(-1, 2), -1);
            add_B1(a, C_, Rat(1), Rat(-1, 2), -1);
            a.t = scale(Rat(-1), nf);
            spec.atoms.push_back(std::move(a));
            break;
        }
        case VTower::PsiStar: {
            // the ghost factor is a discrete z-derivative, a difference of
            // two argument scales over the bare pole
            for (int v = 2; v >= 0; v -= 2) {
                ExpAtom a(S);
                add_Hstar(a, C_, tn - 1, Rat(1), Rat(-1, 2), +1);
                add_B2N(a, C_, Rat(0), Rat(-1, 2), -1);
                add_c(a, C_, C_.N(), Rat(v), -1);
                a.s0 = Rat(-1);
                a.pref = QScalar(v == 2 ? 1 : -1) / qdiff();
                a.t = nf;
                spec.atoms.push_back(std::move(a));
            }
            break;
        }
    }
    return spec;
}

RatVec VertexOps::displacement(VTower t, int k) const {
    const int tn = C_.size();
    if (k < 1 || k > tn)
        throw std::invalid_argument("VertexOps: component index out of range");
    RatVec d = seed(t).atoms.at(0).dl;
    switch (t) {
        case VTower::Phi:
            for (int j = k; j < tn; ++j) d = sub(d, current_displacement(C_, j));
            break;
        case VTower::PhiStar:
            for (int j = 1; j < k; ++j) d = sub(d, current_displacement(C_, j));
            break;
        case VTower::Psi:
            for (int j = 1; j < k; ++j) d = add(d, current_displacement(C_, j));
            break;
        case VTower::PsiStar:
            for (int j = k; j < tn; ++j) d = add(d, current_displacement(C_, j));
            break;
    }
    return d;
}

const OpMatrix& VertexOps::comp(VTower t, int k, long n) const {
    if (k < 1 || k > C_.size())
        throw std::invalid_argument("VertexOps: component index out of range");
    auto key = std::make_tuple(static_cast<int>(t), k, n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, build(t, k, n)).first->second;
}

OpMatrix VertexOps::build(VTower t, int k, long n) const {
    if (k == seed_component(C_, t)) return exp_vertex_mode(seed(t), n, *b_);

    // graded bracket with the neighbouring generator; the grading sign is
    // set by the parity of the component being bracketed
    auto bsign = [](int comp) { return vparity(comp) == 1 ? -1 : +1; };
    switch (t) {
        case VTower::Phi: {
            // comp k from comp k+1 through f_k
            const OpMatrix& A = comp(t, k + 1, n);
            OpMatrix M = OpMatrix::bracket(A, cur_.chevalley_f(k),
                                           qpow(Rat(k % 2 == 0 ? 1 : -1)),
                                           bsign(k + 1));
            return (k % 2 == 0) ? M : QScalar(-1) * M;
        }
        case VTower::PhiStar: {
            // comp k from comp k-1 through f_{k-1}
            const OpMatrix& A = comp(t, k - 1, n);
            OpMatrix M = OpMatrix::bracket(A, cur_.chevalley_f(k - 1),
                                           qpow(Rat(k % 2 == 0 ? 1 : -1)),
                                           bsign(k - 1));
            return qpow(Rat(k % 2 == 0 ? -1 : 1)) * M;
        }
        case VTower::Psi: {
            // comp k from comp k-1 through e_{k-1}
            const OpMatrix& A = comp(t, k - 1, n);
            return OpMatrix::bracket(A, cur_.chevalley_e(k - 1),
                                     qpow(Rat(k % 2 == 0 ? 1 : -1)), bsign(k - 1));
        }
        case VTower::PsiStar: {
            // comp k from comp k+1 through e_k
            const OpMatrix& A = comp(t, k + 1, n);
            OpMatrix M = OpMatrix::bracket(A, cur_.chevalley_e(k),
                                           qpow(Rat(k % 2 == 0 ? 1 : -1)), bsign(k + 1));
            return (QScalar(k % 2 == 0 ? -1 : 1) * qpow(Rat(k % 2 == 0 ? -1 : 1))) * M;
        }
    }
    throw std::logic_error("VertexOps: unreachable tower");
}

namespace {

// Window that keeps every interleaving of one tower descent, one raising and
// one lowering excursion at node l, inside the basis.
FockBasis relation_basis(const Cartan& C, VTower t, int l, long D) {
    std::vector<RatVec> steps;
    steps.push_back(vertex_seed(C, t).atoms.at(0).dl);
    const bool lowering_tower = (t == VTower::Phi || t == VTower::PhiStar);
    for (int j = 1; j < C.size(); ++j) {
        RatVec dj = current_displacement(C, j);
        steps.push_back(lowering_tower ? scale(Rat(-1), dj) : dj);
    }
    RatVec dl = current_displacement(C, l);
    steps.push_back(dl);
    steps.push_back(scale(Rat(-1), dl));
    return FockBasis(C.N(), subset_sum_window(C, steps), D);
}

} // namespace

Report verify_vertex_relations(int N, long D, long nmax, CurrentOptions opt) {
    if (N < 1 || D < 1 || nmax < 0)
        throw std::invalid_argument("verify_vertex_relations: bad parameters");
    Report rep("verify vertex relations");
    Cartan C(N);
    const int tn = C.size();

    struct TowerChecks {
        VTower t;
        const char* label;
    };
    const TowerChecks towers[4] = {{VTower::Phi, "type-one components"},
                                   {VTower::PhiStar, "dual type-one components"},
                                   {VTower::Psi, "type-two components"},
                                   {VTower::PsiStar, "dual type-two components"}};

    for (const auto& tc : towers) {
        CheckResult cl{std::string(tc.label) + " against the lowering generators",
                       false, "", {}};
        CheckResult cr{std::string(tc.label) + " against the raising generators",
                       false, "", {}};
        CheckResult cc{std::string(tc.label) + " under the Cartan conjugations",
                       false, "", {}};
        Tally tl, tr, tcj;
        bool okl = true, okr = true, okc = true;
        Stopwatch sw;

        for (int l = 1; l < tn; ++l) {
            FockBasis b = relation_basis(C, tc.t, l, D);
            VertexOps V(C, b, opt);
            const Currents& cur = V.currents();
            const OpMatrix E = cur.chevalley_e(l);
            const OpMatrix F = cur.chevalley_f(l);
            const OpMatrix qhp = cur.qh(l, +1);
            const OpMatrix qhm = cur.qh(l, -1);
            const QScalar ql = qpow(Rat(l % 2 == 0 ? 1 : -1));   // q^{(-1)^l}
            const QScalar qli = qpow(Rat(l % 2 == 0 ? -1 : 1));  // q^{-(-1)^l}

            for (int k = 1; k <= tn; ++k) {
                const int sgn = vparity(k) == 1 ? -1 : +1;
                for (long n = -nmax; n <= nmax; ++n) {
                    const OpMatrix& Vk = V.comp(tc.t, k, n);
                    std::string at = " [l=" + istr(l) + " k=" + istr(k) +
                                     " n=" + istr(n) + "]";

                    OpMatrix PF = OpMatrix::bracket(Vk, F, QScalar(1), sgn);
                    OpMatrix PE = OpMatrix::bracket(Vk, E, QScalar(1), sgn);

                    switch (tc.t) {
                        case VTower::Phi: {
                            if (k == l) {
                                OpMatrix P = OpMatrix::bracket(Vk, F, ql, sgn);
                                okl &= guarded_expect(cl, tl, P, QScalar(), nullptr,
                                                      "twisted lowering bracket" + at);
                            } else if (k == l + 1) {
                                OpMatrix P = OpMatrix::bracket(Vk, F, ql, sgn) -
                                             QScalar(l % 2 == 0 ? 1 : -1) *
                                                 V.comp(tc.t, l, n);
                                okl &= guarded_expect(cl, tl, P, QScalar(), nullptr,
                                                      "lowering step" + at);
                            } else {
                                okl &= guarded_expect(cl, tl, PF, QScalar(), nullptr,
                                                      "distant lowering bracket" + at);
                            }
                            if (k == l) {
                                OpMatrix P = PE + qhp * V.comp(tc.t, l + 1, n);
                                okr &= guarded_expect(cr, tr, P, QScalar(), nullptr,
                                                      "raising step" + at);
                            } else {
                                okr &= guarded_expect(cr, tr, PE, QScalar(), nullptr,
                                                      "distant raising bracket" + at);
                            }
                            QScalar w = (k == l || k == l + 1) ? ql : QScalar(1);
                            okc &= full_expect(cc, tcj, qhp * Vk * qhm, w * Vk,
                                               "conjugation" + at);
                            break;
                        }
                        case VTower::PhiStar: {
                            const QScalar qlp = qpow(Rat(l % 2 == 0 ? -1 : 1)); // q^{(-1)^{l+1}}
                            if (k == l + 1) {
                                OpMatrix P = OpMatrix::bracket(Vk, F, qlp, sgn);
                                okl &= guarded_expect(cl, tl, P, QScalar(), nullptr,
                                                      "twisted lowering bracket" + at);
                            } else if (k == l) {
                                OpMatrix P = OpMatrix::bracket(Vk, F, qlp, sgn) -
                                             qlp * V.comp(tc.t, l + 1, n);
                                okl &= guarded_expect(cl, tl, P, QScalar(), nullptr,
                                                      "lowering step" + at);
                            } else {
                                okl &= guarded_expect(cl, tl, PF, QScalar(), nullptr,
                                                      "distant lowering bracket" + at);
                            }
                            if (k == l + 1) {
                                OpMatrix P = PE - QScalar(l % 2 == 0 ? 1 : -1) * ql *
                                                      (qhp * V.comp(tc.t, l, n));
                                okr &= guarded_expect(cr, tr, P, QScalar(), nullptr,
                                                      "raising step" + at);
                            } else {
                                okr &= guarded_expect(cr, tr, PE, QScalar(), nullptr,
                                                      "distant raising bracket" + at);
                            }
                            QScalar w = (k == l || k == l + 1) ? qlp : QScalar(1);
                            okc &= full_expect(cc, tcj, qhp * Vk * qhm, w * Vk,
                                               "conjugation" + at);
                            break;
                        }
                        case VTower::Psi: {
                            const QScalar qlp = qpow(Rat(l % 2 == 0 ? -1 : 1));
                            if (k == l + 1) {
                                OpMatrix P = OpMatrix::bracket(Vk, E, qlp, sgn);
                                okr &= guarded_expect(cr, tr, P, QScalar(), nullptr,
                                                      "twisted raising bracket" + at);
                            } else if (k == l) {
                                OpMatrix P = OpMatrix::bracket(Vk, E, qlp, sgn) -
                                             V.comp(tc.t, l + 1, n);
                                okr &= guarded_expect(cr, tr, P, QScalar(), nullptr,
                                                      "raising step" + at);
                            } else {
                                okr &= guarded_expect(cr, tr, PE, QScalar(), nullptr,
                                                      "distant raising bracket" + at);
                            }
                            if (k == l + 1) {
                                OpMatrix P = PF - QScalar(l % 2 == 0 ? -1 : 1) *
                                                      (qhm * V.comp(tc.t, l, n));
                                okl &= guarded_expect(cl, tl, P, QScalar(), nullptr,
                                                      "lowering step" + at);
                            } else {
                                okl &= guarded_expect(cl, tl, PF, QScalar(), nullptr,
                                                      "distant lowering bracket" + at);
                            }
                            QScalar w = (k == l || k == l + 1) ? ql : QScalar(1);
                            okc &= full_expect(cc, tcj, qhp * Vk * qhm, w * Vk,
                                               "conjugation" + at);
                            break;
                        }
                        case VTower::PsiStar: {
                            const QScalar qlp = qpow(Rat(l % 2 == 0 ? -1 : 1));
                            if (k == l) {
                                OpMatrix P = OpMatrix::bracket(Vk, E, ql, sgn);
                                okr &= guarded_expect(cr, tr, P, QScalar(), nullptr,
                                                      "twisted raising bracket" + at);
                            } else if (k == l + 1) {
                                OpMatrix P = OpMatrix::bracket(Vk, E, ql, sgn) -
                                             QScalar(l % 2 == 0 ? -1 : 1) * ql *
                                                 V.comp(tc.t, l, n);
                                okr &= guarded_expect(cr, tr, P, QScalar(), nullptr,
                                                      "raising step" + at);
                            } else {
                                okr &= guarded_expect(cr, tr, PE, QScalar(), nullptr,
                                                      "distant raising bracket" + at);
                            }
                            if (k == l) {
                                OpMatrix P = PF + qli * (qhm * V.comp(tc.t, l + 1, n));
                                okl &= guarded_expect(cl, tl, P, QScalar(), nullptr,
                                                      "lowering step" + at);
                            } else {
                                okl &= guarded_expect(cl, tl, PF, QScalar(), nullptr,
                                                      "distant lowering bracket" + at);
                            }
                            QScalar w = (k == l || k == l + 1) ? qlp : QScalar(1);
                            okc &= full_expect(cc, tcj, qhp * Vk * qhm, w * Vk,
                                               "conjugation" + at);
                            break;
                        }
                    }
                }
            }
        }
        seal(cl, okl, tl, sw);
        seal(cr, okr, tr, sw);
        seal(cc, okc, tcj, sw);
        rep.add(std::move(cl));
        rep.add(std::move(cr));
        rep.add(std::move(cc));
    }
    return rep;
}

} // namespace qgl
