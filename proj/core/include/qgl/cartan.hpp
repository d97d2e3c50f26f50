#pragma once

#include <qgl/rational.hpp>

#include <stdexcept>
#include <vector>

namespace qgl {

// Z2 parity of the k-th basis vector (1-based): odd slots even, even slots odd.
inline int vparity(int k) { return (k % 2 == 0) ? 1 : 0; }

// Root data on the weight lattice spanned by eps_1..eps_2N with the indefinite
// pairing (eps_k, eps_k') = (-1)^{k+1} delta_{kk'}:
//   alpha_l = eps_l - eps_{l+1} for l < 2N, alpha_2N = eps_1 + ... + eps_2N.
// Stores the symmetric matrix a_ij = (alpha_i, alpha_j) and its exact inverse.
class Cartan {
 public:
  explicit Cartan(int N) : n_(N) {
    if (N < 1) throw std::runtime_error("Cartan: N must be positive");
    int m = 2 * N;
    auto eps = [&](int i, int k) {
      // coefficient of eps_k in alpha_i
      if (i < m) return Rat((k == i) ? 1 : (k == i + 1) ? -1 : 0);
      return Rat(1);
    };
    a_.assign(m, std::vector<Rat>(m, Rat(0)));
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= m; ++j) {
        Rat s(0);
        for (int k = 1; k <= m; ++k) {
          Rat sign((k % 2 == 1) ? 1 : -1);
          s += eps(i, k) * eps(j, k) * sign;
        }
        a_[i - 1][j - 1] = s;
      }
    ainv_ = invert(a_);
  }

  int N() const { return n_; }
  int size() const { return 2 * n_; }
  const Rat& a(int i, int j) const { return a_.at(i - 1).at(j - 1); }
  const Rat& ainv(int i, int j) const { return ainv_.at(i - 1).at(j - 1); }

  // parity of the root generator attached to node i
  int root_parity(int i) const {
    if (i < 2 * n_) return 1;
    return n_ % 2;
  }

 private:
  static std::vector<std::vector<Rat>> invert(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) throw std::runtime_error("Cartan: singular matrix");
      std::swap(m[piv], m[col]);
      std::swap(inv[piv], inv[col]);
      Rat d = m[col][col];
      for (size_t j = 0; j < n; ++j) {
        m[col][j] /= d;
        inv[col][j] /= d;
      }
      for (size_t r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rat f = m[r][col];
        for (size_t j = 0; j < n; ++j) {
          m[r][j] -= f * m[col][j];
          inv[r][j] -= f * inv[col][j];
        }
      }
    }
    return inv;
  }

  int n_;
  std::vector<std::vector<Rat>> a_, ainv_;
};

}  // namespace qgl
