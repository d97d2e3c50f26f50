#pragma once

#include <qgl/qscalar.hpp>

#include <map>
#include <utility>

namespace qgl {

// Sparse Laurent polynomial in two commuting variables with QScalar
// coefficients. Zero coefficients are never stored.
class Poly2 {
 public:
  using Key = std::pair<long, long>;

  Poly2() = default;
  Poly2(long ez, long ew, QScalar c) { add(ez, ew, std::move(c)); }

  bool zero() const { return c_.empty(); }
  size_t terms() const { return c_.size(); }

  void add(long ez, long ew, const QScalar& v) {
    if (v.zero()) return;
    Key k{ez, ew};
    auto it = c_.find(k);
    if (it == c_.end()) {
      c_.emplace(k, v);
    } else {
      it->second += v;
      if (it->second.zero()) c_.erase(it);
    }
  }

  QScalar coeff(long ez, long ew) const {
    auto it = c_.find({ez, ew});
    return it == c_.end() ? QScalar() : it->second;
  }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 r = a;
    for (const auto& [k, v] : b.c_) r.add(k.first, k.second, v);
    return r;
  }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) {
    Poly2 r = a;
    for (const auto& [k, v] : b.c_) r.add(k.first, k.second, -v);
    return r;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (const auto& [ka, va] : a.c_)
      for (const auto& [kb, vb] : b.c_) r.add(ka.first + kb.first, ka.second + kb.second, va * vb);
    return r;
  }
  friend Poly2 operator*(const QScalar& s, const Poly2& a) {
    Poly2 r;
    if (s.zero()) return r;
    for (const auto& [k, v] : a.c_) r.add(k.first, k.second, s * v);
    return r;
  }
  Poly2 operator-() const { return QScalar(-1) * *this; }

  bool operator==(const Poly2& o) const { return c_ == o.c_; }
  bool operator!=(const Poly2& o) const { return !(*this == o); }

  const std::map<Key, QScalar>& coeffs() const { return c_; }

 private:
  std::map<Key, QScalar> c_;
};

}  // namespace qgl
