#include <doctest.h>

#include "qgl/expops.hpp"
#include "qgl/fock.hpp"

#include <algorithm>
#include <vector>

using namespace qgl;

namespace {

LatticePoint pt(std::vector<long> v) {
    RatVec c;
    c.reserve(v.size());
    for (long x : v) c.emplace_back(x);
    return LatticePoint{c};
}

// [n] extended to all integers as an odd function.
QScalar qint(long n) {
    if (n == 0) return QScalar();
    if (n > 0) return qnum(n);
    return QScalar(-1) * qnum(-n);
}

std::vector<char> charge_keep(const FockBasis& b, int species, long lo, long hi) {
    std::vector<char> k(static_cast<size_t>(b.size()), 0);
    for (long i = 0; i < b.size(); ++i) {
        const Rat& c = b.point(b.state(i).lattice).chg.at(static_cast<size_t>(species));
        if (c >= lo && c <= hi) k[static_cast<size_t>(i)] = 1;
    }
    return k;
}

std::vector<char> and_mask(const std::vector<char>& a, const std::vector<char>& b) {
    std::vector<char> k(a.size());
    for (size_t i = 0; i < a.size(); ++i) k[i] = a[i] && b[i];
    return k;
}

ExpFieldSpec fermion_spec(const Cartan& C, int l, int sign) {
    ExpFieldSpec s;
    ExpAtom a(3 * C.N());
    add_c(a, C, l, Rat(0), sign);
    s.atoms.push_back(a);
    s.conv_shift = sign > 0 ? 1 : 0; // raising component pairs with z^{-n-1}
    return s;
}

} // namespace

TEST_CASE("single point state counts follow the free boson generating function") {
    // 3N species: coefficients of prod_k (1-t^k)^{-3N}
    FockBasis b21(2, {pt({0, 0, 0, 0, 0, 0})}, 1);
    CHECK(b21.size() == 7);
    FockBasis b22(2, {pt({0, 0, 0, 0, 0, 0})}, 2);
    CHECK(b22.size() == 34);
    FockBasis b12(1, {pt({0, 0, 0})}, 2);
    CHECK(b12.size() == 13); // 1 + 3 + 9
    FockBasis b15(1, {pt({0, 0, 0})}, 5);
    CHECK(b15.size() == 194); // 1+3+9+22+51+108
}

TEST_CASE("enumeration is deterministic and input order independent") {
    std::vector<LatticePoint> w1 = {pt({0, 0, 0}), pt({1, -1, 2}), pt({0, 0, 1})};
    std::vector<LatticePoint> w2 = {pt({0, 0, 1}), pt({1, -1, 2}), pt({0, 0, 0}),
                                    pt({1, -1, 2})}; // shuffled, one duplicate
    FockBasis a(1, w1, 3), b(1, w2, 3);
    CHECK(a.size() == b.size());
    CHECK(a.hash() == b.hash());
    CHECK(a.points() == 3);

    for (long i = 0; i < a.size(); ++i) {
        const FockState& st = a.state(i);
        CHECK(a.index_of(st.lattice, st.occ) == i);
        CHECK(occupation_degree(st.occ) == st.degree);
    }
    CHECK(a.lattice_index(pt({5, 5, 5})) == -1);
    CHECK(a.index_of(0, {{{0, 9}, 1}}) == -1); // degree above the cap
}

TEST_CASE("oscillator ladder matrices close the mode algebra") {
    const long D = 4;
    FockBasis b(2, {pt({0, 0, 0, 0, 0, 0})}, D);

    // species signature: alternating on the 2N charged bosons, plus on the rest
    CHECK(b.kappa(0, 1) == QScalar(1));
    CHECK(b.kappa(1, 2) == QScalar(rat(-1, 2)) * qnum(2) * qnum(2));
    CHECK(b.kappa(2, 3) == QScalar(rat(1, 3)) * qnum(3) * qnum(3));
    CHECK(b.kappa(4, 2) == QScalar(rat(1, 2)) * qnum(2) * qnum(2));

    for (int s : {0, 1, 3, 4}) {
        for (long m : {1L, 2L}) {
            OpMatrix up = oscillator_action(s, -m, b);
            OpMatrix dn = oscillator_action(s, m, b);
            CHECK(up.max_rise == m);
            CHECK(dn.max_rise == 0);
            OpMatrix c = OpMatrix::bracket(dn, up, QScalar(1), 1);
            CHECK(c.equals_scaled_identity_on(b.kappa(s, m), degree_guard(b, D - m)));
        }
    }

    // distinct species and distinct modes commute on guarded columns
    CHECK(OpMatrix::bracket(oscillator_action(0, 1, b), oscillator_action(1, -1, b),
                            QScalar(1), 1)
              .equals_scaled_identity_on(QScalar(), degree_guard(b, D - 1)));
    CHECK(OpMatrix::bracket(oscillator_action(0, 1, b), oscillator_action(0, -2, b),
                            QScalar(1), 1)
              .equals_scaled_identity_on(QScalar(), degree_guard(b, D - 2)));

    OpMatrix two = oscillator_action(0, -2, b) * oscillator_action(0, -1, b);
    CHECK(two.max_rise == 3);
    OpMatrix sum = oscillator_action(0, -2, b) + oscillator_action(0, -1, b);
    CHECK(sum.max_rise == 2);
}

TEST_CASE("zero modes read the lattice charges without signature") {
    RatVec chg = {rat(1, 2), rat(-1, 2), Rat(2)};
    FockBasis b(1, {LatticePoint{chg}}, 2);
    std::vector<char> all(static_cast<size_t>(b.size()), 1);

    CHECK(oscillator_action(0, 0, b).equals_scaled_identity_on(QScalar(rat(1, 2)), all));
    CHECK(oscillator_action(1, 0, b).equals_scaled_identity_on(QScalar(rat(-1, 2)), all));
    CHECK(oscillator_action(2, 0, b).equals_scaled_identity_on(QScalar(2), all));

    // q^{<w, lambda>}: w = (1,1,0) pairs to zero, w = (2,0,1) to 1+2
    CHECK(diagonal_qpow({Rat(1), Rat(1), Rat(0)}, b)
              .equals_scaled_identity_on(QScalar(1), all));
    CHECK(diagonal_qpow({Rat(2), Rat(0), Rat(1)}, b)
              .equals_scaled_identity_on(qpow(Rat(3)), all));
}

TEST_CASE("composite mode pairings reproduce the Cartan data") {
    for (int N : {1, 2}) {
        Cartan C(N);
        const int m = C.size();
        for (int i = 1; i <= m; ++i) {
            for (int j = 1; j <= m; ++j) {
                CHECK(dot(eig_A0(C, i), disp_QA(C, j)) == C.a(i, j));
                CHECK(dot(eig_Astar0(C, i), disp_QA(C, j)) == Rat(i == j ? 1 : 0));
                CHECK(dot(eig_A0(C, i), disp_QAstar(C, j)) == Rat(i == j ? 1 : 0));
            }
        }
        for (long n : {1L, 2L, -1L, 3L}) {
            QScalar base = qint(n) * qint(n) * QScalar(rat(1, n));
            for (int i = 1; i <= m; ++i) {
                for (int j = 1; j <= m; ++j) {
                    long aij = to_long(C.a(i, j));
                    QScalar lhs = combo_pairing(C, combo_A(C, i), combo_A(C, j), n);
                    CHECK(lhs == qint(aij * n) * qint(n) * QScalar(rat(1, n)));

                    QScalar ss = combo_pairing(C, combo_Astar(C, i), combo_Astar(C, j), n);
                    if (i < m && j < m) {
                        CHECK(ss == QScalar(C.ainv(i, j)) * base);
                    } else if (i == m && j == m) {
                        CHECK(ss.zero());
                    } else {
                        int k = i == m ? j : i;
                        CHECK(ss == QScalar(Rat(m) * C.ainv(k, m)) * base);
                    }
                }
                QScalar mixed = combo_pairing(C, combo_A(C, i), combo_Astar(C, i), n);
                if (i < m) {
                    CHECK(mixed == base);
                } else {
                    CHECK(mixed == QScalar(Rat(m / 2)) * (upow(2 * n) + upow(-2 * n)) * base);
                }
                for (int j = 1; j < m; ++j)
                    if (j != i)
                        CHECK(combo_pairing(C, combo_A(C, i), combo_Astar(C, j), n).zero());
            }
        }
    }
}

TEST_CASE("starred combinations at rank two match their expansions") {
    Cartan C(2);
    // fourth starred combination collapses to the sum of the odd-root pair
    for (int s = 0; s < 4; ++s)
        for (long mm : {1L, 2L}) CHECK(combo_eval(combo_Astar(C, 4), s, mm) == QScalar(1));
    // third: (a1 + a2 + a3)/4 - 3 a4 / 4
    for (long mm : {1L, 3L}) {
        CHECK(combo_eval(combo_Astar(C, 3), 0, mm) == QScalar(rat(1, 4)));
        CHECK(combo_eval(combo_Astar(C, 3), 1, mm) == QScalar(rat(1, 4)));
        CHECK(combo_eval(combo_Astar(C, 3), 2, mm) == QScalar(rat(1, 4)));
        CHECK(combo_eval(combo_Astar(C, 3), 3, mm) == QScalar(rat(-3, 4)));
    }
    auto rv = [](std::vector<Rat> v) { return v; };
    CHECK(eig_Astar0(C, 1) ==
          rv({rat(3, 4), rat(-1, 4), rat(-1, 4), rat(-1, 4), Rat(0), Rat(0)}));
    CHECK(eig_Astar0(C, 3) ==
          rv({rat(1, 4), rat(1, 4), rat(1, 4), rat(-3, 4), Rat(0), Rat(0)}));
    CHECK(eig_Astar0(C, 4) ==
          rv({rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4), Rat(0), Rat(0)}));
    CHECK(disp_QAstar(C, 1) ==
          rv({rat(3, 4), rat(1, 4), rat(-1, 4), rat(1, 4), Rat(0), Rat(0)}));
    CHECK(disp_QAstar(C, 3) ==
          rv({rat(1, 4), rat(-1, 4), rat(1, 4), rat(3, 4), Rat(0), Rat(0)}));
    CHECK(disp_QAstar(C, 4) ==
          rv({rat(1, 4), rat(-1, 4), rat(1, 4), rat(-1, 4), Rat(0), Rat(0)}));
}

TEST_CASE("fermion exponentials satisfy the mode anticommutators") {
    Cartan C(1);
    const long D = 5;
    std::vector<LatticePoint> w;
    for (long k = -2; k <= 2; ++k) w.push_back(pt({0, 0, k}));
    FockBasis b(1, w, D);

    ExpFieldSpec etaS = fermion_spec(C, 1, +1);
    ExpFieldSpec xiS = fermion_spec(C, 1, -1);
    auto eta = [&](long n) { return exp_vertex_mode(etaS, n, b); };
    auto xi = [&](long n) { return exp_vertex_mode(xiS, n, b); };

    // lowest raising mode maps vacuum to the shifted vacuum with unit weight
    OpMatrix e1 = eta(-1);
    long src = b.index_of(b.lattice_index(pt({0, 0, 0})), {});
    long dst = b.index_of(b.lattice_index(pt({0, 0, 1})), {});
    REQUIRE(src >= 0);
    REQUIRE(dst >= 0);
    CHECK(e1.coeff(dst, src) == QScalar(1));
    // on the charge one vacuum the same mode has nothing to produce
    long src1 = b.index_of(b.lattice_index(pt({0, 0, 1})), {});
    for (const auto& [rc, en] : e1.entries()) CHECK(rc.second != src1);

    struct Pair {
        long m, n;
        int expect;
    };
    std::vector<Pair> cases = {{0, 0, 1},  {1, -1, 1}, {-1, 1, 1}, {2, -2, 1},
                               {-2, 2, 1}, {1, 0, 0},  {0, -1, 0}, {2, -1, 0},
                               {-1, 2, 0}};
    for (const auto& cse : cases) {
        OpMatrix P = xi(cse.m) * eta(cse.n) + eta(cse.n) * xi(cse.m);
        auto keep = and_mask(degree_guard(b, D - P.max_rise), charge_keep(b, 2, -1, 1));
        CHECK(std::count(keep.begin(), keep.end(), 1) > 0);
        CHECK(P.equals_scaled_identity_on(QScalar(cse.expect), keep));
    }

    // same component square and anticommutators vanish
    for (auto [m, n] : std::vector<std::pair<long, long>>{{0, 0}, {0, -1}, {1, -1}}) {
        OpMatrix P = eta(m) * eta(n) + eta(n) * eta(m);
        auto keep = and_mask(degree_guard(b, D - P.max_rise), charge_keep(b, 2, -2, 0));
        CHECK(std::count(keep.begin(), keep.end(), 1) > 0);
        CHECK(P.equals_scaled_identity_on(QScalar(), keep));
    }
    OpMatrix x0 = xi(0);
    OpMatrix P = x0 * x0;
    auto keep = and_mask(degree_guard(b, D - P.max_rise), charge_keep(b, 2, 0, 2));
    CHECK(P.equals_scaled_identity_on(QScalar(), keep));
}

TEST_CASE("exponentials in distinct fermionic components commute") {
    Cartan C(2);
    std::vector<LatticePoint> w;
    for (long k1 = 0; k1 <= 1; ++k1)
        for (long k2 = 0; k2 <= 1; ++k2) w.push_back(pt({0, 0, 0, 0, k1, k2}));
    FockBasis b(2, w, 2);

    OpMatrix e1 = exp_vertex_mode(fermion_spec(C, 1, +1), -1, b);
    OpMatrix e2 = exp_vertex_mode(fermion_spec(C, 2, +1), -1, b);
    OpMatrix comm = e1 * e2 - e2 * e1;
    auto keep = and_mask(charge_keep(b, 4, 0, 0), charge_keep(b, 5, 0, 0));
    CHECK(comm.equals_scaled_identity_on(QScalar(), keep));
}

TEST_CASE("degree and window overflow are counted, never silently dropped") {
    Cartan C(1);
    FockBasis small(1, {pt({0, 0, 0}), pt({0, 0, 1})}, 2);
    OpMatrix deep = exp_vertex_mode(fermion_spec(C, 1, +1), -4, small);
    CHECK(deep.truncated > 0);

    FockBasis lone(1, {pt({0, 0, 0})}, 2);
    OpMatrix blocked = exp_vertex_mode(fermion_spec(C, 1, +1), -1, lone);
    CHECK(blocked.truncated > 0);
    CHECK(blocked.is_zero());
}

TEST_CASE("fractional charge sectors carry a uniform monomial offset") {
    Cartan C(2);
    ExpFieldSpec s;
    ExpAtom a(6);
    add_Hstar(a, C, 1, Rat(0), rat(1, 2), +1);
    s.atoms.push_back(a);
    s.conv_shift = 0;

    FockBasis b(2, {pt({1, 0, 0, 0, 0, 0})}, 1);
    OpMatrix M = exp_vertex_mode(s, 0, b);
    CHECK(M.exp_offset.get("z") == rat(3, 4));
    CHECK(M.truncated > 0); // displaced lattice point is outside the window
    CHECK(M.is_zero());

    // charge displacement pairs to a half integer, so the shifted point mixes
    // fractional exponents and the window must be rejected
    RatVec shifted = add(b.point(0).chg, a.dl);
    FockBasis bad(2, {b.point(0), LatticePoint{shifted}}, 1);
    CHECK_THROWS_AS(exp_vertex_mode(s, 0, bad), std::runtime_error);

    // pairing the first starred field with its partner restores integrality
    ExpAtom full(6);
    add_Hstar(full, C, 1, Rat(0), rat(1, 2), +1);
    add_B1(full, C, Rat(0), rat(1, 2), +1);
    RatVec unit = {Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
    CHECK(full.dl == unit);
    CHECK(full.w == unit);
}

TEST_CASE("entry phases fold into signs only when integral") {
    FockBasis b(1, {pt({0, 0, 0})}, 1);
    OpMatrix M(&b);
    M.add_entry(0, 0, QScalar(3), Rat(1));
    CHECK(M.coeff(0, 0) == QScalar(-3));
    M.add_entry(0, 0, QScalar(3), Rat(2));
    CHECK(M.coeff(0, 0).zero());

    OpMatrix F(&b);
    F.add_entry(0, 1, QScalar(1), rat(1, 2));
    CHECK(F.has_fractional_phase());
    CHECK_THROWS_AS(F.coeff(0, 1), std::runtime_error);
    // a half turn plus a full turn cancels against the bare half turn
    F.add_entry(0, 1, QScalar(1), rat(3, 2));
    CHECK(!F.has_fractional_phase());

    OpMatrix G(&b);
    G.add_entry(0, 1, QScalar(1), Rat(0));
    CHECK_THROWS_AS(G.add_entry(0, 1, QScalar(1), rat(1, 2)), std::runtime_error);
}

TEST_CASE("mode helpers reject invalid arguments") {
    Cartan C(1);
    CHECK_THROWS_AS(combo_pairing(C, combo_A(C, 1), combo_A(C, 1), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(osc_eval({OscTerm{QScalar(1), QScalar(), 0, 0}}, 0),
                    std::invalid_argument);
    ExpAtom L(3), R(3);
    CHECK_THROWS_AS(pair_coeff(C, L, R, 0), std::invalid_argument);

    FockBasis b(2, {pt({0, 0, 0, 0, 0, 0})}, 1);
    ExpFieldSpec s;
    s.atoms.push_back(ExpAtom(3)); // wrong rank for this basis
    CHECK_THROWS_AS(exp_vertex_mode(s, 0, b), std::invalid_argument);
}
