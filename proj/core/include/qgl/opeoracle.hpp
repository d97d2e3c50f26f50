#pragma once

#include "qgl/cartan.hpp"
#include "qgl/expops.hpp"
#include "qgl/report.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qgl {

// Exact power series in x, coefficient of x^m at index m.
using Series = std::vector<QScalar>;

Series series_mul(const Series& a, const Series& b, long k);
// exp of a series with zero constant term, through x^k.
Series series_exp(const Series& logc, long k);
// (1 - u^{tu} x)^g through x^k. g may be any rational.
Series binom_factor(long tu, const Rat& g, long k);

// One fundamental exponential block, evaluated at q^beta z with mode damping
// kappa, entering the exponent with the given sign. The c blocks take no
// damping argument; kappa is ignored there.
struct BlockSpec {
    enum Kind { H, Hstar, B1, B2N, C } kind = H;
    int index = 1; // H: 1..2N-1, Hstar: 1..2N-1, C: 1..N; unused for B blocks
    Rat beta;
    Rat kappa;
    int sign = 1;
};

// "H:2", "Hstar:1:kappa=1/2", "B2N:beta=2:kappa=-1/2:sign=-1", "c:1".
// The kind comes first, an integer index next where the kind needs one, then
// key=value settings for beta, kappa and sign in any order.
BlockSpec parse_block_spec(const std::string& s);
std::string block_spec_str(const BlockSpec& b);

ExpAtom block_atom(const Cartan& C, const BlockSpec& b);

// Closed normalization of the ordered product L(z) R(w), with x = w/z:
//   q^{qpow} z^{zpow} prod_i (1 - u^{tu_i} x)^{g_i}
// covered == false marks ordered block pairs without a tabulated form.
struct TwoPointForm {
    bool covered = false;
    Rat zpow;
    Rat qpow;
    std::vector<std::pair<long, Rat>> factors; // (u-exponent, power)
};

TwoPointForm two_point_form(const Cartan& C, const BlockSpec& L, const BlockSpec& R);

// Product of the form's binomial factors through x^k.
Series form_series(const TwoPointForm& f, long k);

// exp of the mode-bracket contraction sum for L(z) R(w), through x^k.
Series contraction_series(const Cartan& C, const ExpAtom& L, const ExpAtom& R, long k);

// Scalar data the engine produces for the same ordered product: the z and q
// powers and the phase from zero-mode reordering, and the contraction series.
struct TwoPointEngine {
    Rat zpow;
    Rat qpow;
    Rat phase;
    Series series;
};

TwoPointEngine two_point_engine(const Cartan& C, const BlockSpec& L,
                                const BlockSpec& R, long order);

// Sweeps every tabulated ordered block pair at the given rank, over a grid of
// dampings, argument scales and signs, and compares the closed normalization
// against the mode-bracket expansion through x^order.
Report verify_two_point(int N, long order);

} // namespace qgl
