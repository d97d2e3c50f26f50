#include <qgl/qscalar.hpp>

#include <sstream>

namespace qgl {

Laurent QScalar::extract_common(Laurent& p, Laurent& q) {
  // A canonical denominator is anchored with unit constant term, so it shares
  // no u factor with anything; monomials therefore cannot cancel.
  if (p.terms() <= 1 || q.terms() <= 1) return Laurent(0, Rat(1));
  std::vector<Rat> g = Laurent::gcd_poly(p.coeffs(), q.coeffs());
  if (g.size() <= 1) return Laurent(0, Rat(1));
  Laurent gl = Laurent::from_coeffs(0, std::move(g));
  p = divide_exact(p, gl);
  q = divide_exact(q, gl);
  return gl;
}

void QScalar::canonicalize() {
  if (den_.zero()) throw std::runtime_error("QScalar: zero denominator");
  if (num_.zero()) {
    den_ = Laurent(0, Rat(1));
    return;
  }
  // Shift both to honest polynomials, cancel the content of the exponent shift.
  long shift = std::min(num_.lo(), den_.lo());
  num_ = num_.shifted(-shift);
  den_ = den_.shifted(-shift);

  if (den_.terms() > 1 && num_.terms() > 1) {
    std::vector<Rat> g = Laurent::gcd_poly(num_.coeffs(), den_.coeffs());
    if (g.size() > 1) {
      Laurent gl = Laurent::from_coeffs(0, std::move(g));
      num_ = divide_exact(num_, gl);
      den_ = divide_exact(den_, gl);
    }
  }
  finish_normal_form();
}

void QScalar::normalize_coprime() {
  if (den_.zero()) throw std::runtime_error("QScalar: zero denominator");
  if (num_.zero()) {
    den_ = Laurent(0, Rat(1));
    return;
  }
  long shift = std::min(num_.lo(), den_.lo());
  num_ = num_.shifted(-shift);
  den_ = den_.shifted(-shift);
  finish_normal_form();
}

void QScalar::finish_normal_form() {
  // A pure monomial denominator folds into the numerator.
  if (den_.terms() == 1) {
    num_ = num_.shifted(-den_.lo());
    Rat c = den_.coeff(den_.lo());
    num_ = (Rat(1) / c) * num_;
    den_ = Laurent(0, Rat(1));
    return;
  }
  // Remaining cleanup: den anchored at exponent 0 with unit constant term.
  long dlo = den_.lo();
  if (dlo != 0) {
    // gcd removal can leave a monomial factor split across num/den
    long cancel = std::min(num_.lo(), dlo);
    num_ = num_.shifted(-cancel);
    den_ = den_.shifted(-cancel);
    dlo = den_.lo();
    if (dlo != 0) {
      // u^dlo still divides den but not num: move it to the numerator side
      num_ = num_.shifted(-dlo);
      den_ = den_.shifted(-dlo);
    }
  }
  Rat c0 = den_.coeff(0);
  num_ = (Rat(1) / c0) * num_;
  den_ = (Rat(1) / c0) * den_;
}

QScalar QScalar::pow(long e) const {
  if (e == 0) return QScalar(1);
  if (zero()) {
    if (e < 0) throw std::runtime_error("QScalar: 0^negative");
    return QScalar();
  }
  QScalar base = e > 0 ? *this : QScalar(1) / *this;
  long k = e > 0 ? e : -e;
  QScalar r(1);
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

QScalar QScalar::bar() const {
  auto flip = [](const Laurent& p) {
    Laurent r;
    for (long e = p.lo(); e <= p.hi(); ++e) {
      Rat c = p.coeff(e);
      if (c != 0) r.add_term(-e, c);
    }
    return r;
  };
  if (zero()) return QScalar();
  return QScalar(flip(num_), flip(den_));
}

std::string QScalar::str() const {
  auto poly_str = [](const Laurent& p) {
    if (p.zero()) return std::string("0");
    std::ostringstream os;
    bool first = true;
    for (long e = p.lo(); e <= p.hi(); ++e) {
      Rat c = p.coeff(e);
      if (c == 0) continue;
      bool neg = c < 0;
      Rat a = neg ? Rat(-c) : c;
      if (first) {
        if (neg) os << "-";
        first = false;
      } else {
        os << (neg ? " - " : " + ");
      }
      bool unit = (a == 1);
      if (e == 0) {
        os << rat_str(a);
      } else {
        if (!unit) os << rat_str(a) << "*";
        os << "u";
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  };
  if (polynomial()) {
    if (num_.terms() <= 1) return poly_str(num_);
    return "(" + poly_str(num_) + ")";
  }
  return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

QScalar qnum(long n) {
  if (n == 0) return QScalar();
  if (n < 0) return -qnum(-n);
  Laurent p;
  for (long j = 0; j < n; ++j) p.add_term(2 * (n - 1 - 2 * j), Rat(1));
  return QScalar(p, Laurent(0, Rat(1)));
}

QScalar qdiff() {
  Laurent p;
  p.add_term(2, Rat(1));
  p.add_term(-2, Rat(-1));
  return QScalar(p, Laurent(0, Rat(1)));
}

}  // namespace qgl
