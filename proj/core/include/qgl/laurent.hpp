#pragma once

#include <qgl/rational.hpp>

#include <algorithm>
#include <compare>

namespace qgl {

// Laurent polynomial in one variable with exact rational coefficients.
// Invariants: coeff empty iff zero; coeff.front() != 0 and coeff.back() != 0.
// Exponents run lo, lo+1, ..., lo+coeff.size()-1.
class Laurent {
 public:
  Laurent() = default;
  Laurent(long exponent, const Rat& c) {
    if (c != 0) {
      lo_ = exponent;
      c_ = {c};
    }
  }
  static Laurent from_coeffs(long lo, std::vector<Rat> c) {
    Laurent p;
    p.lo_ = lo;
    p.c_ = std::move(c);
    p.trim();
    return p;
  }

  bool zero() const { return c_.empty(); }
  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(c_.size()) - 1; }
  size_t terms() const { return c_.size(); }

  Rat coeff(long e) const {
    if (c_.empty() || e < lo_ || e > hi()) return Rat(0);
    return c_[static_cast<size_t>(e - lo_)];
  }

  void add_term(long e, const Rat& v) {
    if (v == 0) return;
    if (c_.empty()) {
      lo_ = e;
      c_ = {v};
      return;
    }
    if (e < lo_) {
      c_.insert(c_.begin(), static_cast<size_t>(lo_ - e), Rat(0));
      lo_ = e;
    } else if (e > hi()) {
      c_.resize(static_cast<size_t>(e - lo_) + 1, Rat(0));
    }
    c_[static_cast<size_t>(e - lo_)] += v;
    trim();
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    long lo = std::min(a.lo_, b.lo_);
    long hi = std::max(a.hi(), b.hi());
    std::vector<Rat> c(static_cast<size_t>(hi - lo) + 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[static_cast<size_t>(a.lo_ - lo) + i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[static_cast<size_t>(b.lo_ - lo) + i] += b.c_[i];
    return from_coeffs(lo, std::move(c));
  }

  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.zero() || b.zero()) return Laurent();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        c[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return from_coeffs(a.lo_ + b.lo_, std::move(c));
  }

  friend Laurent operator*(const Rat& s, const Laurent& a) {
    if (s == 0) return Laurent();
    Laurent r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  Laurent shifted(long d) const {
    Laurent r = *this;
    if (!r.zero()) r.lo_ += d;
    return r;
  }

  bool operator==(const Laurent& o) const { return lo_ == o.lo_ && c_ == o.c_; }

  // Ordinary polynomial division on the positive-exponent normalization.
  // Both operands are shifted so their lo is 0 first; remainder keeps that
  // shift convention internally. Used only by gcd below.
  static void divmod_poly(const std::vector<Rat>& a, const std::vector<Rat>& b,
                          std::vector<Rat>& q, std::vector<Rat>& r) {
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
    const Rat& lead = b.back();
    while (r.size() >= b.size() && !r.empty()) {
      while (!r.empty() && r.back() == 0) r.pop_back();
      if (r.size() < b.size()) break;
      Rat f = r.back() / lead;
      size_t off = r.size() - b.size();
      q[off] = f;
      for (size_t i = 0; i < b.size(); ++i) r[off + i] -= f * b[i];
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
  }

  // Monic gcd of the polynomial parts (exponent shifts dropped).
  static std::vector<Rat> gcd_poly(std::vector<Rat> a, std::vector<Rat> b) {
    auto strip = [](std::vector<Rat>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
      size_t lead0 = 0;
      while (lead0 < v.size() && v[lead0] == 0) ++lead0;
      if (lead0) v.erase(v.begin(), v.begin() + static_cast<long>(lead0));
    };
    strip(a);
    strip(b);
    while (!b.empty()) {
      std::vector<Rat> q, r;
      divmod_poly(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
      strip(b);
      // monic normalization keeps coefficient growth in check
      if (!b.empty()) {
        Rat inv = 1 / b.back();
        for (auto& x : b) x *= inv;
      }
    }
    if (a.empty()) return {Rat(1)};
    Rat inv = 1 / a.back();
    for (auto& x : a) x *= inv;
    return a;
  }

  // Exact division; throws if not divisible.
  friend Laurent divide_exact(const Laurent& a, const Laurent& b) {
    if (b.zero()) throw std::runtime_error("divide_exact: division by zero");
    if (a.zero()) return Laurent();
    std::vector<Rat> q, r;
    divmod_poly(a.c_, b.c_, q, r);
    if (!r.empty()) throw std::runtime_error("divide_exact: not divisible");
    return from_coeffs(a.lo_ - b.lo_, std::move(q));
  }

  const std::vector<Rat>& coeffs() const { return c_; }

 private:
  void trim() {
    size_t front0 = 0;
    while (front0 < c_.size() && c_[front0] == 0) ++front0;
    if (front0 == c_.size()) {
      c_.clear();
      lo_ = 0;
      return;
    }
    if (front0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(front0));
      lo_ += static_cast<long>(front0);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  long lo_ = 0;
  std::vector<Rat> c_;
};

}  // namespace qgl
