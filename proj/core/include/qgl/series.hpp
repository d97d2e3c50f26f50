#pragma once

#include <qgl/qscalar.hpp>

#include <vector>

namespace qgl {

// Power series in one formal variable, truncated at a fixed order (inclusive),
// with QScalar coefficients. All arithmetic stays below the truncation order,
// so products of exact expansions remain exact up to that order.
class Series {
 public:
  explicit Series(long order) : c_(static_cast<size_t>(order) + 1) {
    if (order < 0) throw std::runtime_error("Series: negative order");
  }

  static Series one(long order) {
    Series s(order);
    s.c_[0] = QScalar(1);
    return s;
  }

  long order() const { return static_cast<long>(c_.size()) - 1; }

  const QScalar& operator[](long k) const { return c_.at(static_cast<size_t>(k)); }
  QScalar& operator[](long k) { return c_.at(static_cast<size_t>(k)); }

  friend Series operator+(const Series& a, const Series& b) {
    a.check(b);
    Series r(a.order());
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    a.check(b);
    Series r(a.order());
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    a.check(b);
    Series r(a.order());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].zero()) continue;
      for (size_t j = 0; i + j < b.c_.size(); ++j) {
        if (b.c_[j].zero()) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  friend Series operator*(const QScalar& s, const Series& a) {
    Series r(a.order());
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = s * a.c_[i];
    return r;
  }
  Series operator-() const { return QScalar(-1) * *this; }

  bool operator==(const Series& o) const { return c_ == o.c_; }
  bool operator!=(const Series& o) const { return !(*this == o); }

  bool zero() const {
    for (const auto& v : c_)
      if (!v.zero()) return false;
    return true;
  }

  // (1 - u^t x)^gamma with gamma rational: generalized binomial expansion.
  static Series binom_factor(const Rat& gamma, long t, long order) {
    Series r(order);
    QScalar term(1);
    for (long k = 0; k <= order; ++k) {
      r.c_[static_cast<size_t>(k)] = term;
      // multiply by (gamma - k)/(k + 1) * (-u^t)
      term *= QScalar(Rat(-1) * (gamma - k) / (k + 1)) * QScalar::upow(t);
    }
    return r;
  }

  // exp of a series with zero constant term, via n f_n = sum k l_k f_{n-k}.
  static Series exp_of(const Series& log_part) {
    if (!log_part.c_[0].zero()) throw std::runtime_error("Series::exp_of: constant term");
    long d = log_part.order();
    Series f(d);
    f.c_[0] = QScalar(1);
    for (long n = 1; n <= d; ++n) {
      QScalar acc;
      for (long k = 1; k <= n; ++k) {
        const QScalar& lk = log_part.c_[static_cast<size_t>(k)];
        if (lk.zero()) continue;
        acc += QScalar(Rat(k)) * lk * f.c_[static_cast<size_t>(n - k)];
      }
      f.c_[static_cast<size_t>(n)] = acc / QScalar(Rat(n));
    }
    return f;
  }

  // Multiplicative inverse; requires an invertible constant term.
  Series inverse() const {
    if (c_[0].zero()) throw std::runtime_error("Series::inverse: zero constant term");
    Series r(order());
    QScalar inv0 = QScalar(1) / c_[0];
    r.c_[0] = inv0;
    for (long n = 1; n <= order(); ++n) {
      QScalar acc;
      for (long k = 1; k <= n; ++k)
        acc += c_[static_cast<size_t>(k)] * r.c_[static_cast<size_t>(n - k)];
      r.c_[static_cast<size_t>(n)] = -(inv0 * acc);
    }
    return r;
  }

 private:
  void check(const Series& o) const {
    if (c_.size() != o.c_.size()) throw std::runtime_error("Series: order mismatch");
  }

  std::vector<QScalar> c_;
};

}  // namespace qgl
