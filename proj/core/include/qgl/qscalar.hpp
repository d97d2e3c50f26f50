#pragma once

#include <qgl/laurent.hpp>

#include <string>

namespace qgl {

// Scalar domain for the whole engine: rational functions in u, where u^2 = q.
// Working in u keeps every half-integer power of q polynomial, which is all
// the construction ever produces.
//
// Canonical form: num/den with gcd removed, den.lo == 0 and den constant
// term == 1. Zero is num == 0, den == 1. Equality is then structural.
class QScalar {
 public:
  QScalar() : den_(0, Rat(1)) {}
  QScalar(long n) : num_(0, Rat(n)), den_(0, Rat(1)) {}
  QScalar(const Rat& r) : num_(0, r), den_(0, Rat(1)) {}
  QScalar(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  static QScalar upow(long e) {
    QScalar s;
    s.num_ = Laurent(e, Rat(1));
    return s;
  }
  // q^e as u^{2e}; e may be rational with denominator dividing 2.
  static QScalar qpow(const Rat& e) {
    Rat ue = 2 * e;
    if (!is_integer(ue))
      throw std::runtime_error("qpow: exponent " + rat_str(e) + " not half-integer");
    return upow(to_long(ue));
  }

  bool zero() const { return num_.zero(); }
  bool is_one() const { return num_ == Laurent(0, Rat(1)) && den_ == Laurent(0, Rat(1)); }
  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }
  bool polynomial() const { return den_.terms() == 1; }

  // Value as a rational when the scalar is a constant; throws otherwise.
  Rat constant() const {
    if (zero()) return Rat(0);
    if (!polynomial() || num_.terms() != 1 || num_.lo() != 0)
      throw std::runtime_error("constant: scalar is not constant");
    return num_.coeff(0);
  }

  // Sums can create fresh common factors, so they go through the full
  // canonicalizing constructor; the shared-denominator fast path keeps the
  // degrees from doubling first.
  friend QScalar operator+(const QScalar& a, const QScalar& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    if (a.den_ == b.den_) return QScalar(a.num_ + b.num_, a.den_);
    Laurent da = a.den_, db = b.den_;
    Laurent g = extract_common(da, db);
    return QScalar(a.num_ * db + b.num_ * da, (g * da) * db);
  }
  friend QScalar operator-(const QScalar& a, const QScalar& b) {
    if (b.zero()) return a;
    if (a.zero()) return -b;
    if (a.den_ == b.den_) return QScalar(a.num_ - b.num_, a.den_);
    Laurent da = a.den_, db = b.den_;
    Laurent g = extract_common(da, db);
    return QScalar(a.num_ * db - b.num_ * da, (g * da) * db);
  }
  QScalar operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }
  // Canonical operands have coprime num/den, so a product only ever cancels
  // across the pair; two cross gcds on the small factors replace one gcd on
  // the doubled-degree product.
  friend QScalar operator*(const QScalar& a, const QScalar& b) {
    if (a.zero() || b.zero()) return QScalar();
    if (a.polynomial() && b.polynomial())
      return from_coprime(a.num_ * b.num_, Laurent(0, Rat(1)));
    Laurent n1 = a.num_, d1 = a.den_, n2 = b.num_, d2 = b.den_;
    extract_common(n1, d2);
    extract_common(n2, d1);
    return from_coprime(n1 * n2, d1 * d2);
  }
  friend QScalar operator/(const QScalar& a, const QScalar& b) {
    if (b.zero()) throw std::runtime_error("QScalar: division by zero");
    if (a.zero()) return QScalar();
    Laurent n1 = a.num_, d1 = a.den_, n2 = b.num_, d2 = b.den_;
    extract_common(n1, n2);
    extract_common(d2, d1);
    return from_coprime(n1 * d2, d1 * n2);
  }
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
  QScalar& operator/=(const QScalar& o) { return *this = *this / o; }

  bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  QScalar pow(long e) const;

  // Substitute u -> 1/u. Exact on any rational function.
  QScalar bar() const;

  // Rendering, e.g. "(u^-2 + u^2)" or "(1 - u^4)/(2 - u^2)". Exponents ascend.
  std::string str() const;

 private:
  void canonicalize();
  // Normal form without the gcd pass; requires num and den already coprime.
  void normalize_coprime();
  // Shared tail: anchor the denominator at exponent zero with unit constant
  // term, folding a monomial denominator into the numerator.
  void finish_normal_form();
  // Divides gcd(p, q) out of both arguments and returns it (1 when trivial).
  static Laurent extract_common(Laurent& p, Laurent& q);
  static QScalar from_coprime(Laurent num, Laurent den) {
    QScalar r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize_coprime();
    return r;
  }

  Laurent num_;
  Laurent den_;
};

// [n]: the balanced quantum integer, as a Laurent polynomial in u.
QScalar qnum(long n);

// q - q^{-1}
QScalar qdiff();

inline QScalar qpow(const Rat& e) { return QScalar::qpow(e); }
inline QScalar upow(long e) { return QScalar::upow(e); }

}  // namespace qgl
