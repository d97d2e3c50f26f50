#pragma once

#include <qgl/qscalar.hpp>

#include <map>
#include <string>

namespace qgl {

// Map from a named formal variable to a rational exponent. Zero exponents are
// never stored, so structural equality is semantic equality.
class ExpVector {
 public:
  ExpVector() = default;

  void add(const std::string& var, const Rat& e) {
    if (e == 0) return;
    auto it = x_.find(var);
    if (it == x_.end()) {
      x_.emplace(var, e);
    } else {
      it->second += e;
      if (it->second == 0) x_.erase(it);
    }
  }
  Rat get(const std::string& var) const {
    auto it = x_.find(var);
    return it == x_.end() ? Rat(0) : it->second;
  }
  bool empty() const { return x_.empty(); }
  ExpVector operator+(const ExpVector& o) const {
    ExpVector r = *this;
    for (const auto& [v, e] : o.x_) r.add(v, e);
    return r;
  }
  ExpVector operator-() const {
    ExpVector r;
    for (const auto& [v, e] : x_) r.x_.emplace(v, Rat(-e));
    return r;
  }
  bool operator==(const ExpVector& o) const { return x_ == o.x_; }
  const std::map<std::string, Rat>& entries() const { return x_; }

 private:
  std::map<std::string, Rat> x_;
};

// Truncated series in one named variable: exponents are rationals confined to
// a closed window [lo, hi]; coefficients are QScalar; zeros are never stored.
// Terms added outside the window are silently dropped, which is what makes
// products of complete expansions exact inside the intersection window.
class SparseSeries {
 public:
  SparseSeries(std::string var, Rat lo, Rat hi)
      : var_(std::move(var)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::runtime_error("SparseSeries: empty window");
  }

  const std::string& var() const { return var_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }

  void add_term(const Rat& e, const QScalar& c) {
    if (c.zero() || e < lo_ || e > hi_) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.zero()) t_.erase(it);
    }
  }

  QScalar coeff(const Rat& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? QScalar() : it->second;
  }

  bool zero() const { return t_.empty(); }
  size_t terms() const { return t_.size(); }
  const std::map<Rat, QScalar>& data() const { return t_; }

  SparseSeries truncate(const Rat& lo, const Rat& hi) const {
    SparseSeries r(var_, std::max(lo, lo_), std::min(hi, hi_));
    for (const auto& [e, c] : t_) r.add_term(e, c);
    return r;
  }

  friend SparseSeries operator+(const SparseSeries& a, const SparseSeries& b) {
    a.check(b);
    SparseSeries r(a.var_, std::max(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
    for (const auto& [e, c] : a.t_) r.add_term(e, c);
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
  }
  friend SparseSeries operator-(const SparseSeries& a, const SparseSeries& b) {
    return a + (QScalar(-1) * b);
  }
  friend SparseSeries operator*(const SparseSeries& a, const SparseSeries& b) {
    a.check(b);
    SparseSeries r(a.var_, std::max(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend SparseSeries operator*(const QScalar& s, const SparseSeries& a) {
    SparseSeries r(a.var_, a.lo_, a.hi_);
    if (s.zero()) return r;
    for (const auto& [e, c] : a.t_) r.add_term(e, s * c);
    return r;
  }

  // Equality of terms; windows may differ as long as both cover all terms.
  bool operator==(const SparseSeries& o) const { return var_ == o.var_ && t_ == o.t_; }
  bool operator!=(const SparseSeries& o) const { return !(*this == o); }

 private:
  void check(const SparseSeries& o) const {
    if (var_ != o.var_) throw std::runtime_error("SparseSeries: variable mismatch");
    if (lo_ > o.hi_ || o.lo_ > hi_) throw std::runtime_error("SparseSeries: disjoint windows");
  }

  std::string var_;
  Rat lo_, hi_;
  std::map<Rat, QScalar> t_;
};

}  // namespace qgl
