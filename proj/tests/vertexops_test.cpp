#include <doctest.h>

#include "qgl/vertexops.hpp"

using namespace qgl;

namespace {

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

} // namespace

TEST_CASE("seed components sit at the expected lattice points") {
    Cartan C(2);
    FockBasis b(2, subset_sum_window(C, {}), 0);
    VertexOps V(C, b);
    CHECK(V.displacement(VTower::Phi, 4) == rv({0, 0, 0, -1, 0, 1}));
    CHECK(V.displacement(VTower::PsiStar, 4) == rv({0, 0, 0, 1, 0, -1}));
    CHECK(V.displacement(VTower::PhiStar, 1) == rv({1, 0, 0, 0, 0, 0}));
    CHECK(V.displacement(VTower::Psi, 1) == rv({-1, 0, 0, 0, 0, 0}));
    // each tower ends where its partner tower is seeded
    CHECK(V.displacement(VTower::Phi, 1) == rv({-1, 0, 0, 0, 0, 0}));
    CHECK(V.displacement(VTower::PsiStar, 1) == rv({1, 0, 0, 0, 0, 0}));
    CHECK(V.displacement(VTower::PhiStar, 4) == rv({0, 0, 0, 1, 0, -1}));
    CHECK(V.displacement(VTower::Psi, 4) == rv({0, 0, 0, -1, 0, 1}));
}

TEST_CASE("tower seeds act on the vacuum with unit amplitude") {
    Cartan C(1);
    ExpFieldSpec seed = vertex_seed(C, VTower::Phi);
    RatVec dl = seed.atoms.at(0).dl;
    FockBasis b(1, subset_sum_window(C, {dl}), 1);
    VertexOps V(C, b);
    const OpMatrix& M = V.comp(VTower::Phi, 2, 0);
    long src = b.index_of(b.lattice_index(LatticePoint{RatVec(3, Rat(0))}), {});
    long dst = b.index_of(b.lattice_index(LatticePoint{dl}), {});
    REQUIRE(src >= 0);
    REQUIRE(dst >= 0);
    auto it = M.entries().find({dst, src});
    REQUIRE(it != M.entries().end());
    CHECK(it->second.v == QScalar(1));
}

TEST_CASE("every bracket and conjugation relation holds at rank one") {
    Report r = verify_vertex_relations(1, 2, 1);
    CHECK(r.all_pass());
    REQUIRE(r.checks().size() == 12);
    for (const auto& c : r.checks()) CHECK(c.stats.at("identities") == 6);
}

TEST_CASE("components change sectors consistently with their displacement") {
    Cartan C(2);
    FockBasis b = [&] {
        std::vector<RatVec> steps;
        steps.push_back(vertex_seed(C, VTower::PhiStar).atoms.at(0).dl);
        for (int j = 1; j < C.size(); ++j)
            steps.push_back(scale(Rat(-1), current_displacement(C, j)));
        return FockBasis(2, subset_sum_window(C, steps), 1);
    }();
    VertexOps V(C, b);
    for (int k = 1; k <= 4; ++k) {
        const OpMatrix& M = V.comp(VTower::PhiStar, k, 0);
        RatVec want = V.displacement(VTower::PhiStar, k);
        for (const auto& [rc, en] : M.entries()) {
            RatVec got = sub(b.point(b.state(rc.first).lattice).chg,
                             b.point(b.state(rc.second).lattice).chg);
            CHECK(got == want);
        }
    }
}
