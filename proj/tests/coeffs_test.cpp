#include "qgl/cartan.hpp"
#include "qgl/laurent.hpp"
#include "qgl/qscalar.hpp"
#include "qgl/series.hpp"
#include "qgl/sparse_series.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace qgl;

namespace {

// Deterministic pool of small scalars exercising negative exponents,
// denominators and cancellation-prone shapes.
std::vector<QScalar> scalar_pool() {
    std::vector<QScalar> v;
    v.push_back(QScalar());
    v.push_back(QScalar(1));
    v.push_back(QScalar(-3));
    v.push_back(QScalar(Rat(2, 7)));
    v.push_back(upow(2));
    v.push_back(upow(-5));
    v.push_back(qnum(2));
    v.push_back(qnum(3) / qnum(2));
    v.push_back((upow(4) - QScalar(1)) / (upow(2) - upow(-2)));
    std::mt19937 rng(20240816u);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5), exp(-4, 4);
    for (int k = 0; k < 8; ++k) {
        QScalar a = QScalar(rat(num(rng), den(rng))) * upow(exp(rng)) +
                    QScalar(rat(num(rng), den(rng))) * upow(exp(rng));
        QScalar b = QScalar(rat(num(rng), den(rng))) * upow(exp(rng)) + QScalar(1);
        if (b.zero()) b = QScalar(1);
        v.push_back(a / b);
    }
    return v;
}

} // namespace

TEST_CASE("quantum integers: explicit values and symmetry") {
    CHECK(qnum(0).zero());
    CHECK(qnum(1).is_one());
    CHECK(qnum(2) == upow(2) + upow(-2));
    CHECK(qnum(3) == upow(4) + QScalar(1) + upow(-4));
    CHECK(qnum(5) == upow(8) + upow(4) + QScalar(1) + upow(-4) + upow(-8));
    for (long n = -20; n <= 20; ++n) {
        CHECK(qnum(-n) == QScalar(-1) * qnum(n));
        CHECK(qnum(n).bar() == qnum(n));
    }
}

TEST_CASE("quantum integers satisfy the three-term recurrence") {
    for (long n = -20; n <= 20; ++n)
        CHECK(qnum(n + 1) == qnum(2) * qnum(n) - qnum(n - 1));
}

TEST_CASE("quantum integer splitting at doubled argument") {
    // [2n] = (q^n + q^{-n}) [n]
    for (long n = 1; n <= 12; ++n)
        CHECK(qnum(2 * n) == (upow(2 * n) + upow(-2 * n)) * qnum(n));
}

TEST_CASE("scalar field axioms on a mixed pool") {
    auto pool = scalar_pool();
    for (const auto& a : pool)
        for (const auto& b : pool) {
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - b == QScalar(-1) * (b - a));
            if (!b.zero()) CHECK((a / b) * b == a);
        }
    for (size_t i = 0; i + 2 < pool.size(); i += 3) {
        const auto &a = pool[i], &b = pool[i + 1], &c = pool[i + 2];
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("rational helper reduces fractions") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-6, 3) == rat(-2));
    CHECK(rat(0, 5) == Rat(0));
    CHECK(QScalar(rat(2, 4)) == QScalar(rat(1, 2)));
}

TEST_CASE("canonical form: common factors cancel, denominator normalized") {
    // (u^2 - u^{-2}) / (u - u^{-1}) = u + u^{-1}
    QScalar a = (upow(2) - upow(-2)) / (upow(1) - upow(-1));
    CHECK(a == upow(1) + upow(-1));
    // Denominator constant term is forced to 1; pure monomial denominators fold away.
    QScalar b(Laurent(1, Rat(3)), Laurent(1, Rat(2)));
    CHECK(b == QScalar(Rat(3, 2)));
    QScalar c(Laurent(0, Rat(1)), Laurent(-2, Rat(4)));
    CHECK(c == QScalar(Rat(1, 4)) * upow(2));
    CHECK((a - a).zero());
    CHECK((a / a).is_one());
}

TEST_CASE("half-integer powers of q") {
    CHECK(qpow(Rat(1, 2)) == upow(1));
    CHECK(qpow(Rat(-3, 2)) == upow(-3));
    CHECK(qpow(Rat(2)) == upow(4));
    CHECK_THROWS(qpow(Rat(1, 3)));
}

TEST_CASE("integer powers and the bar involution") {
    QScalar a = qnum(3) / qnum(2);
    CHECK(a.pow(0).is_one());
    CHECK(a.pow(3) == a * a * a);
    CHECK(a.pow(-2) * a.pow(2) == QScalar(1));
    CHECK(upow(3).bar() == upow(-3));
    CHECK(a.bar().bar() == a);
    // bar is a ring homomorphism
    QScalar b = upow(2) + QScalar(5);
    CHECK((a * b).bar() == a.bar() * b.bar());
    CHECK((a + b).bar() == a.bar() + b.bar());
}

TEST_CASE("laurent gcd and exact division") {
    Laurent p = Laurent(0, Rat(1)) + Laurent(1, Rat(2)) + Laurent(2, Rat(1)); // (1+x)^2
    Laurent q = Laurent(0, Rat(1)) + Laurent(1, Rat(1));                      // 1+x
    Laurent g = Laurent::from_coeffs(0, Laurent::gcd_poly(p.coeffs(), q.coeffs()));
    CHECK(g == q);
    CHECK(divide_exact(p, q) == q);
    CHECK_THROWS(divide_exact(q + Laurent(0, Rat(1)), q));
}

TEST_CASE("binomial factor series") {
    long ord = 8;
    // (1 - u^t x)^{-1} has coefficients u^{t n}
    Series inv = Series::binom_factor(Rat(-1), 3, ord);
    for (long n = 0; n <= ord; ++n) CHECK(inv[n] == upow(3 * n));
    // gamma = 1 truncates after the linear term
    Series lin = Series::binom_factor(Rat(1), 2, ord);
    CHECK(lin[0].is_one());
    CHECK(lin[1] == QScalar(-1) * upow(2));
    for (long n = 2; n <= ord; ++n) CHECK(lin[n].zero());
    // square root squared
    Series h = Series::binom_factor(Rat(1, 2), -1, ord);
    CHECK(h * h == Series::binom_factor(Rat(1), -1, ord));
    Series hm = Series::binom_factor(Rat(-1, 2), 5, ord);
    CHECK(hm * hm == Series::binom_factor(Rat(-1), 5, ord));
    // gamma additivity at fixed t
    CHECK(Series::binom_factor(Rat(3, 2), 1, ord) ==
          Series::binom_factor(Rat(1, 2), 1, ord) * Series::binom_factor(Rat(1), 1, ord));
}

TEST_CASE("series exp and inverse") {
    long ord = 7;
    // log(1/(1 - x)) = sum x^n / n
    Series log1(ord);
    for (long n = 1; n <= ord; ++n) log1[n] = QScalar(Rat(1, n));
    CHECK(Series::exp_of(log1) == Series::binom_factor(Rat(-1), 0, ord));
    Series f = Series::binom_factor(Rat(-1), 2, ord);
    CHECK(f * f.inverse() == Series::one(ord));
    CHECK(f.inverse() == Series::binom_factor(Rat(1), 2, ord));
    Series zero_log(ord);
    CHECK(Series::exp_of(zero_log) == Series::one(ord));
}

TEST_CASE("sparse series windows") {
    SparseSeries a("x", Rat(0), Rat(2));
    a.add_term(Rat(0), QScalar(1));
    a.add_term(Rat(1, 2), qnum(2));
    a.add_term(Rat(7), QScalar(99)); // outside the window, dropped
    CHECK(a.coeff(Rat(7)).zero());
    CHECK(a.coeff(Rat(1, 2)) == qnum(2));

    SparseSeries b("x", Rat(0), Rat(3, 2));
    b.add_term(Rat(0), QScalar(1));
    b.add_term(Rat(1), upow(2));
    SparseSeries p = a * b;
    // window is the intersection [0, 3/2]
    CHECK(p.coeff(Rat(0)).is_one());
    CHECK(p.coeff(Rat(1)) == upow(2));
    CHECK(p.coeff(Rat(1, 2)) == qnum(2));
    CHECK(p.coeff(Rat(3, 2)) == qnum(2) * upow(2));
}

TEST_CASE("exponent vectors drop zeros") {
    ExpVector v;
    v.add("z1", Rat(1, 2));
    v.add("z1", Rat(-1, 2));
    CHECK(v.empty());
    v.add("z2", Rat(3));
    CHECK(v.get("z2") == Rat(3));
    CHECK(v.get("z1") == Rat(0));
}

TEST_CASE("symmetrized cartan matrix, rank 2") {
    Cartan C(1);
    CHECK(C.a(1, 1) == Rat(0));
    CHECK(C.a(1, 2) == Rat(2));
    CHECK(C.a(2, 1) == Rat(2));
    CHECK(C.a(2, 2) == Rat(0));
    CHECK(C.ainv(1, 2) == Rat(1, 2));
    CHECK(C.ainv(1, 1) == Rat(0));
}

TEST_CASE("symmetrized cartan matrix, rank 4") {
    Cartan C(2);
    const Rat expect[4][4] = {{Rat(0), Rat(1), Rat(0), Rat(2)},
                              {Rat(1), Rat(0), Rat(-1), Rat(-2)},
                              {Rat(0), Rat(-1), Rat(0), Rat(2)},
                              {Rat(2), Rat(-2), Rat(2), Rat(0)}};
    const Rat expect_inv[4][4] = {
        {Rat(1, 2), Rat(1, 2), Rat(0), Rat(1, 4)},
        {Rat(1, 2), Rat(0), Rat(-1, 2), Rat(0)},
        {Rat(0), Rat(-1, 2), Rat(-1, 2), Rat(1, 4)},
        {Rat(1, 4), Rat(0), Rat(1, 4), Rat(0)}};
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            CHECK(C.a(i, j) == expect[i - 1][j - 1]);
            CHECK(C.ainv(i, j) == expect_inv[i - 1][j - 1]);
        }
    // product is the identity
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            Rat s(0);
            for (int k = 1; k <= 4; ++k) s += C.a(i, k) * C.ainv(k, j);
            CHECK(s == Rat(i == j ? 1 : 0));
        }
}

TEST_CASE("root parities: difference roots odd, long root parity N mod 2") {
    Cartan C2(2);
    CHECK(C2.root_parity(1) == 1);
    CHECK(C2.root_parity(2) == 1);
    CHECK(C2.root_parity(3) == 1);
    CHECK(C2.root_parity(4) == 0);
    Cartan C1(1);
    CHECK(C1.root_parity(1) == 1);
    CHECK(C1.root_parity(2) == 1);
}
