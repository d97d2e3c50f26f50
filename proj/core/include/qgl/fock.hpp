#pragma once

#include "qgl/qscalar.hpp"
#include "qgl/rational.hpp"
#include "qgl/sparse_series.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qgl {

// Oscillator species are indexed 0..3N-1: the 2N charged bosons first,
// then the N auxiliary bosons. Modes are stored positive; an occupation
// entry ((s, m), k) means the state carries k quanta of mode -m in species s.
struct LatticePoint {
    RatVec chg; // length 3N: 2N primary charges, then N auxiliary charges

    bool operator<(const LatticePoint& o) const { return chg < o.chg; }
    bool operator==(const LatticePoint& o) const { return chg == o.chg; }
};

using Occupation = std::vector<std::pair<std::pair<int, long>, long>>;

struct FockState {
    long lattice = 0; // index into the basis window
    Occupation occ;   // sorted by (species, mode); multiplicities positive
    long degree = 0;  // sum of mode * multiplicity
};

long occupation_degree(const Occupation& occ);

class FockBasis {
public:
    FockBasis(int N, std::vector<LatticePoint> window, long max_degree);

    int N() const { return n_; }
    int species_count() const { return 3 * n_; }
    long max_degree() const { return d_; }
    long size() const { return static_cast<long>(states_.size()); }
    const FockState& state(long i) const { return states_.at(static_cast<size_t>(i)); }
    const LatticePoint& point(long lattice_idx) const {
        return window_.at(static_cast<size_t>(lattice_idx));
    }
    long points() const { return static_cast<long>(window_.size()); }

    // -1 when the state is not in the basis (unknown lattice point or
    // degree above the cap).
    long index_of(long lattice_idx, const Occupation& occ) const;
    long lattice_index(const LatticePoint& p) const; // -1 when absent

    // Mode commutator normalization [b_m, b_{-m}] for species s, m > 0.
    QScalar kappa(int species, long mode) const;

    // Stable digest of the full enumeration, for determinism tests.
    std::uint64_t hash() const;

private:
    int n_;
    long d_;
    std::vector<LatticePoint> window_;
    std::vector<FockState> states_;
    std::map<std::pair<long, std::string>, long> index_;
};

std::string occupation_key(const Occupation& occ);

// One Fourier mode of an operator as an exact sparse matrix. Entries carry
// an optional phase exponent r meaning a factor e^{i pi r} with r in [0,1);
// integer phases are folded into the coefficient sign immediately, so a
// nonzero r survives only for genuinely fractional lattice charges.
struct OpEntry {
    QScalar v;
    Rat ph; // in [0,1)
};

class OpMatrix {
public:
    OpMatrix() = default;
    explicit OpMatrix(const FockBasis* basis) : src_(basis), tgt_(basis) {}

    const FockBasis* source() const { return src_; }
    const FockBasis* target() const { return tgt_; }

    void add_entry(long row, long col, const QScalar& v, const Rat& phase = Rat(0));
    const std::map<std::pair<long, long>, OpEntry>& entries() const { return e_; }
    QScalar coeff(long row, long col) const; // throws if a fractional phase remains
    bool has_fractional_phase() const;

    long degree_shift = 0;   // requested mode power (informational for sums)
    ExpVector exp_offset;    // overall fractional monomial prefactor
    long truncated = 0;      // actions dropped at the degree or window boundary
    long max_rise = 0;       // largest possible degree increase over any column;
                             // products add it, sums take the max. Guarded
                             // relation checks restrict to source degree
                             // <= max_degree - max_rise so truncation cannot
                             // touch any contributing intermediate.
    std::set<long> dirty;    // source columns whose image lost at least one
                             // term to the degree cap or the lattice window;
                             // products forward taint through intermediates,
                             // so a column absent from this set is exact.

    // Mask of source columns untouched by any truncation.
    std::vector<char> clean_keep() const;

    friend OpMatrix operator*(const OpMatrix& a, const OpMatrix& b);
    friend OpMatrix operator+(const OpMatrix& a, const OpMatrix& b);
    friend OpMatrix operator-(const OpMatrix& a, const OpMatrix& b);
    friend OpMatrix operator*(const QScalar& s, const OpMatrix& a);

    bool operator==(const OpMatrix& o) const { return e_ == o.e_; }

    // a b - sign x b a; sign = +1 for the commutator-type bracket and -1
    // when both operators are odd (anticommutator-type).
    static OpMatrix bracket(const OpMatrix& a, const OpMatrix& b, const QScalar& x,
                            int sign);

    bool is_zero() const { return e_.empty(); }

    // True when the matrix equals s * identity restricted to the columns
    // selected by keep (guarded sub-basis comparison).
    bool equals_scaled_identity_on(const QScalar& s,
                                   const std::vector<char>& keep) const;

    // Restrict columns: drop every column c with keep[c] == 0.
    OpMatrix restrict_columns(const std::vector<char>& keep) const;

private:
    const FockBasis* src_ = nullptr;
    const FockBasis* tgt_ = nullptr;
    std::map<std::pair<long, long>, OpEntry> e_;
};

inline bool operator==(const OpEntry& a, const OpEntry& b) {
    return a.v == b.v && a.ph == b.ph;
}

// Matrix of the elementary oscillator mode: species index s, mode n
// (n < 0 creation, n > 0 annihilation, n = 0 diagonal charge).
OpMatrix oscillator_action(int species, long n, const FockBasis& basis);

// Diagonal matrix q^{<w, lambda>} (needs half-integer pairings).
OpMatrix diagonal_qpow(const RatVec& w, const FockBasis& basis);

// Diagonal matrix of eigenvalues f(lambda) supplied per lattice point.
OpMatrix diagonal_of(const std::vector<QScalar>& per_point, const FockBasis& basis);

// Column keep-mask: source states with degree <= limit.
std::vector<char> degree_guard(const FockBasis& basis, long limit);

} // namespace qgl
