#pragma once

#include "qgl/cartan.hpp"
#include "qgl/fock.hpp"
#include "qgl/qscalar.hpp"

#include <map>
#include <vector>

namespace qgl {

// One structured oscillator coefficient: evaluated at mode m > 0 it equals
//   (r + rp (u^{2m} + u^{-2m})) u^{k m} [m]^{-inv}
// with r, rp independent of m. Sums of these cover every field in play.
struct OscTerm {
    QScalar r;
    QScalar rp;
    long k = 0;
    int inv = 0; // 0 or 1
};

using OscCombo = std::map<int, std::vector<OscTerm>>; // species -> terms

QScalar osc_eval(const std::vector<OscTerm>& terms, long m);
QScalar combo_eval(const OscCombo& combo, int species, long m);

// Composite oscillator data. Mode combinations for n != 0 and the separate
// zero-mode / charge data (their normalizations differ for the 2N-th symbol).
OscCombo combo_A(const Cartan& C, int j);      // j = 1..2N
RatVec eig_A0(const Cartan& C, int j);         // eigenvalue vector of the zero mode
RatVec disp_QA(const Cartan& C, int j);        // lattice displacement of the charge
OscCombo combo_Astar(const Cartan& C, int j);  // starred combination, n != 0
RatVec eig_Astar0(const Cartan& C, int j);
RatVec disp_QAstar(const Cartan& C, int j);

// Pairing [X_n, Y_{-n}] of two combinations, from the elementary commutators.
QScalar combo_pairing(const Cartan& C, const OscCombo& x, const OscCombo& y, long n);

// One normal-ordered exponential of a linear field combination:
//   pref * e^{sum_m cre} e^{charge} z^{<w,.>} q^{<qw,.>} e^{sum_m ann} * cocycle
// The cocycle acts first (rightmost) as the phase e^{i pi <t, lambda>}.
struct ExpAtom {
    QScalar pref = QScalar(1);
    Rat s0;      // fixed rational z-power shift
    RatVec w;    // pairing vector of the z^{zero mode} factor
    RatVec qw;   // pairing vector of the constant q^{zero mode} factor
    RatVec dl;   // lattice displacement of the charge part
    RatVec t;    // cocycle phase vector
    OscCombo cre;
    OscCombo ann;

    explicit ExpAtom(int N3 = 0)
        : w(static_cast<size_t>(N3), Rat(0)),
          qw(static_cast<size_t>(N3), Rat(0)),
          dl(static_cast<size_t>(N3), Rat(0)),
          t(static_cast<size_t>(N3), Rat(0)) {}
};

struct ExpFieldSpec {
    std::vector<ExpAtom> atoms;
    long conv_shift = 0; // mode n is the coefficient of z^{-n-conv_shift}
};

// Accumulate a fundamental field, scaled argument q^beta z, overall sign,
// into the atom's exponent.
void add_H(ExpAtom& a, const Cartan& C, int j, const Rat& beta, const Rat& kappa,
           int sign);
void add_Hstar(ExpAtom& a, const Cartan& C, int j, const Rat& beta, const Rat& kappa,
               int sign);
void add_B2N(ExpAtom& a, const Cartan& C, const Rat& beta, const Rat& kappa, int sign);
void add_B1(ExpAtom& a, const Cartan& C, const Rat& beta, const Rat& kappa, int sign);
void add_c(ExpAtom& a, const Cartan& C, int l, const Rat& beta, int sign);
// Annihilation-only (+) or creation-only (-) half current, plus q^{±A_0}.
void add_Hpm(ExpAtom& a, const Cartan& C, int j, int pm);

// Matrix of the n-th Fourier mode of the normal-ordered exponential sum.
OpMatrix exp_vertex_mode(const ExpFieldSpec& spec, long n, const FockBasis& basis);

// Same expansion restricted to the given source columns; entries, truncation
// marks, and dirty flags cover only those columns. Applying the field to a
// matrix needs exactly the columns in that matrix's row support, so thin
// operands never pay for the full basis.
OpMatrix exp_vertex_mode(const ExpFieldSpec& spec, long n, const FockBasis& basis,
                         const std::vector<long>& cols);

// Contraction primitives used by the two-point oracle and exchange checks.
// For the ordered product L(z1) R(z2), x = z2/z1:
//   log of the series factor = sum_{n>0} pair_coeff(L,R,n) x^n / n * n ... see impl
QScalar pair_coeff(const Cartan& C, const ExpAtom& L, const ExpAtom& R, long n);
// Cross scalar data from moving R's charge/cocycle through L's zero modes:
// z1^{<wL, dlR>} q^{<qwL, dlR>} e^{i pi <tL, dlR>}.
Rat cross_zpow(const ExpAtom& L, const ExpAtom& R);
Rat cross_qpow(const ExpAtom& L, const ExpAtom& R);
Rat cross_phase(const ExpAtom& L, const ExpAtom& R);

} // namespace qgl
