#pragma once

#include "qgl/expops.hpp"
#include "qgl/fock.hpp"
#include "qgl/report.hpp"

#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace qgl {

struct CurrentOptions {
    // Mutation hook: drop the anticommutation phase factors between the
    // raising/lowering components. Breaks the cross-component relations and
    // must be caught by the verification suite.
    bool drop_cocycle = false;
};

// Lattice displacement of the i-th raising component, i = 1..2N-1.
RatVec current_displacement(const Cartan& C, int i);

// All subset sums of the given displacement multiset, translated by the
// seeds. This is every lattice point a product of the corresponding
// operators can visit, for any ordering and any split into sub-products.
std::vector<LatticePoint> subset_sum_window(const Cartan& C,
                                            const std::vector<RatVec>& steps,
                                            const std::vector<LatticePoint>& seeds = {});

// Mode matrices of the generating currents on a fixed basis. Matrices are
// cached per (index, sign, mode).
class Currents {
public:
    Currents(const Cartan& C, const FockBasis& basis, CurrentOptions opt = {});

    const Cartan& cartan() const { return C_; }
    const FockBasis& basis() const { return *b_; }

    const OpMatrix& H(int j, long n) const;      // oscillator mode, n != 0
    OpMatrix H0(int j) const;                    // diagonal zero mode
    OpMatrix qH0(int j, int sign) const;         // q^{sign * zero mode}
    const OpMatrix& Hstar(int j, long n) const;  // dual combination mode
    const OpMatrix& psi(int j, int pm, long n) const;
    const OpMatrix& X(int i, int pm, long n) const;

    // Kac-Moody generators e_i, f_i for i = 0..2N-1 (0 is the affine node)
    // and q^{sign h_j} for j = 0..2N.
    OpMatrix chevalley_e(int i) const;
    OpMatrix chevalley_f(int i) const;
    OpMatrix qh(int i, int sign) const;

    // Left-multiply M by a component mode or a Kac-Moody generator without
    // materializing the full operator: only the columns in M's row support
    // are ever expanded, and expanded columns are kept for later calls. Thin
    // right factors stay cheap no matter how large the ambient basis is.
    OpMatrix apply_X(int i, int pm, long n, const OpMatrix& M) const;
    OpMatrix apply_e(int i, const OpMatrix& M) const;
    OpMatrix apply_f(int i, const OpMatrix& M) const;

    // Expand the cached partial matrix for X(i, pm, n) to cover cols, and
    // return it. The result may hold more columns than requested; a product
    // against a right factor supported on cols is still exact. Calls that
    // request no new columns leave the cache untouched, so prefetched
    // matrices can be shared by concurrent readers.
    const OpMatrix& x_partial(int i, int pm, long n, const std::vector<long>& cols) const;

    // Symmetric form extended to the affine node.
    Rat affine_a(int i, int j) const;

    // Homogeneous grading operator: diagonal, eigenvalue d0(lambda) - degree.
    OpMatrix grading() const;
    Rat d0(const RatVec& lambda) const;

    ExpFieldSpec xspec(int i, int pm) const;

private:
    Cartan C_;
    const FockBasis* b_;
    CurrentOptions opt_;
    mutable std::map<std::tuple<int, int, long>, OpMatrix> xcache_;
    mutable std::map<std::tuple<int, int, long>, OpMatrix> pcache_;
    mutable std::map<std::pair<int, long>, OpMatrix> hcache_;
    mutable std::map<std::pair<int, long>, OpMatrix> scache_;
    // partial column-on-demand builds keyed like xcache_
    mutable std::map<std::tuple<int, int, long>, std::pair<OpMatrix, std::set<long>>>
        acache_;
};

// Full relation suite for the current algebra on level-one modules:
// commutation with the zero modes and the grading operator, the mode
// commutators with their central terms, the mixed and same-sign exchange
// relations, the quartic relations, the Kac-Moody generators recovered from
// the currents, and the bilinear expansion of the grading operator.
Report verify_drinfeld(int N, long D, long nmax, CurrentOptions opt = {});

} // namespace qgl
