#pragma once

#include "qgl/currents.hpp"
#include "qgl/expops.hpp"
#include "qgl/fock.hpp"
#include "qgl/report.hpp"

#include <map>
#include <tuple>

namespace qgl {

// The four towers of level-one vertex operator components. Phi and PsiStar
// are seeded at the top component 2N and descend through graded brackets
// with the lowering respectively raising generators; PhiStar and Psi are
// seeded at component 1 and ascend. Component k has parity vparity(k).
enum class VTower { Phi, PhiStar, Psi, PsiStar };

// Exponential seed of the tower. Components use mode convention 0: mode n is
// the coefficient of z^{off-n} with off the column's zero-mode exponent.
ExpFieldSpec vertex_seed(const Cartan& C, VTower t);

class VertexOps {
public:
    VertexOps(const Cartan& C, const FockBasis& basis, CurrentOptions opt = {});

    const Cartan& cartan() const { return C_; }
    const FockBasis& basis() const { return *b_; }
    const Currents& currents() const { return cur_; }

    ExpFieldSpec seed(VTower t) const { return vertex_seed(C_, t); }
    static int seed_component(const Cartan& C, VTower t);

    // Lattice displacement of component k, seed displacement plus the
    // generator steps taken to reach it.
    RatVec displacement(VTower t, int k) const;

    // Component k = 1..2N at mode n, built on demand and cached.
    const OpMatrix& comp(VTower t, int k, long n) const;

private:
    OpMatrix build(VTower t, int k, long n) const;

    Cartan C_;
    const FockBasis* b_;
    Currents cur_;
    mutable std::map<std::tuple<int, int, long>, OpMatrix> cache_;
};

// Checks every bracket and conjugation relation between the tower components
// and the Kac-Moody generators e_l, f_l, q^{h_l}, l = 1..2N-1, mode by mode
// for |n| <= nmax on windows of oscillator degree D.
Report verify_vertex_relations(int N, long D, long nmax, CurrentOptions opt = {});

} // namespace qgl
