#pragma once

#include <gmpxx.h>

#include <vector>

#include "padiclab/padic.hpp"

// Exact integer matrices and Smith normal form with transforms, for the
// finite-abelian-group computations (kernels, images, quotients of lattices).

namespace padiclab {

struct MatZ {
  long rows = 0, cols = 0;
  std::vector<mpz_class> a;

  MatZ() = default;
  MatZ(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r * c)) {}

  mpz_class& at(long i, long j) { return a[static_cast<size_t>(i * cols + j)]; }
  const mpz_class& at(long i, long j) const { return a[static_cast<size_t>(i * cols + j)]; }

  static MatZ identity(long n) {
    MatZ m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static MatZ diagonal(const std::vector<mpz_class>& d) {
    MatZ m(static_cast<long>(d.size()), static_cast<long>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<long>(i), static_cast<long>(i)) = d[i];
    return m;
  }

  friend MatZ operator*(const MatZ& x, const MatZ& y) {
    if (x.cols != y.rows) throw domain_error("matrix shape mismatch");
    MatZ r(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
      for (long k = 0; k < x.cols; ++k) {
        if (x.at(i, k) == 0) continue;
        for (long j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return r;
  }

  MatZ hcat(const MatZ& o) const {
    if (rows != o.rows) throw domain_error("matrix shape mismatch");
    MatZ r(rows, cols + o.cols);
    for (long i = 0; i < rows; ++i) {
      for (long j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
      for (long j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
    }
    return r;
  }

  bool is_zero() const {
    for (auto& z : a)
      if (z != 0) return false;
    return true;
  }
};

// Smith normal form: returns D = U * A * V with U, V unimodular and D
// diagonal, each diagonal entry dividing the next.
struct SnfResult {
  MatZ d, u, v;
  long rank = 0;  // number of nonzero diagonal entries
};

inline SnfResult smith_normal_form(MatZ A) {
  long m = A.rows, n = A.cols;
  MatZ U = MatZ::identity(m), V = MatZ::identity(n);
  long t = 0;
  auto swap_rows = [&](long i, long j) {
    for (long k = 0; k < n; ++k) std::swap(A.at(i, k), A.at(j, k));
    for (long k = 0; k < m; ++k) std::swap(U.at(i, k), U.at(j, k));
  };
  auto swap_cols = [&](long i, long j) {
    for (long k = 0; k < m; ++k) std::swap(A.at(k, i), A.at(k, j));
    for (long k = 0; k < n; ++k) std::swap(V.at(k, i), V.at(k, j));
  };
  auto addmul_row = [&](long dst, long src, const mpz_class& c) {
    for (long k = 0; k < n; ++k) A.at(dst, k) += c * A.at(src, k);
    for (long k = 0; k < m; ++k) U.at(dst, k) += c * U.at(src, k);
  };
  auto addmul_col = [&](long dst, long src, const mpz_class& c) {
    for (long k = 0; k < m; ++k) A.at(k, dst) += c * A.at(k, src);
    for (long k = 0; k < n; ++k) V.at(k, dst) += c * V.at(k, src);
  };

  while (t < m && t < n) {
    // locate pivot of minimal nonzero absolute value
    long pi = -1, pj = -1;
    mpz_class best;
    for (long i = t; i < m; ++i)
      for (long j = t; j < n; ++j) {
        if (A.at(i, j) == 0) continue;
        mpz_class v = abs(A.at(i, j));
        if (pi < 0 || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool clean = true;
    for (long i = t + 1; i < m; ++i) {
      if (A.at(i, t) == 0) continue;
      mpz_class q = A.at(i, t) / A.at(t, t);  // truncated division
      addmul_row(i, t, -q);
      if (A.at(i, t) != 0) clean = false;
    }
    for (long j = t + 1; j < n; ++j) {
      if (A.at(t, j) == 0) continue;
      mpz_class q = A.at(t, j) / A.at(t, t);
      addmul_col(j, t, -q);
      if (A.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // remainders left; pick a smaller pivot next pass
    // enforce the divisibility chain
    bool divides_all = true;
    for (long i = t + 1; i < m && divides_all; ++i)
      for (long j = t + 1; j < n; ++j)
        if (A.at(i, j) % A.at(t, t) != 0) {
          addmul_row(t, i, 1);
          divides_all = false;
          break;
        }
    if (!divides_all) continue;
    if (A.at(t, t) < 0) {
      for (long k = 0; k < n; ++k) A.at(t, k) = -A.at(t, k);
      for (long k = 0; k < m; ++k) U.at(t, k) = -U.at(t, k);
    }
    ++t;
  }
  SnfResult r;
  r.d = A;
  r.u = U;
  r.v = V;
  r.rank = t;
  return r;
}

// Integral basis of { x : A x = 0 } as matrix columns.
inline MatZ integer_kernel(const MatZ& A) {
  SnfResult s = smith_normal_form(A);
  long n = A.cols;
  MatZ K(n, n - s.rank);
  for (long j = s.rank; j < n; ++j)
    for (long i = 0; i < n; ++i) K.at(i, j - s.rank) = s.v.at(i, j);
  return K;
}

// Solve A x = b over the integers; returns false when inconsistent.
inline bool solve_integer(const MatZ& A, const std::vector<mpz_class>& b,
                          std::vector<mpz_class>& x) {
  SnfResult s = smith_normal_form(A);
  std::vector<mpz_class> ub(A.rows, 0);
  for (long i = 0; i < A.rows; ++i)
    for (long k = 0; k < A.rows; ++k) ub[i] += s.u.at(i, k) * b[k];
  std::vector<mpz_class> y(A.cols, 0);
  for (long i = 0; i < std::min(A.rows, A.cols); ++i) {
    if (s.d.at(i, i) == 0) {
      if (ub[i] != 0) return false;
    } else {
      if (ub[i] % s.d.at(i, i) != 0) return false;
      y[i] = ub[i] / s.d.at(i, i);
    }
  }
  for (long i = std::min(A.rows, A.cols); i < A.rows; ++i)
    if (ub[i] != 0) return false;
  x.assign(A.cols, 0);
  for (long i = 0; i < A.cols; ++i)
    for (long k = 0; k < A.cols; ++k) x[i] += s.v.at(i, k) * y[k];
  return true;
}

// Invariant factors (> 1) of the quotient L1 / L2 for full-rank lattices
// L2 <= L1 <= Z^n given by (possibly redundant) generator columns.
inline std::vector<mpz_class> lattice_quotient_invariants(const MatZ& G1, const MatZ& G2) {
  long n = G1.rows;
  if (G2.rows != n) throw domain_error("lattice ambient dimension mismatch");
  if (n == 0) return {};
  SnfResult s1 = smith_normal_form(G1);
  if (s1.rank != n) throw domain_error("L1 is not a full-rank lattice");
  // basis of L1: B = U^{-1} * diag(d); solving B x = b means x_i = (U b)_i / d_i
  MatZ UG = s1.u * G2;
  MatZ X(n, G2.cols);
  for (long i = 0; i < n; ++i) {
    const mpz_class& di = s1.d.at(i, i);
    for (long j = 0; j < G2.cols; ++j) {
      if (UG.at(i, j) % di != 0) throw domain_error("L2 is not contained in L1");
      X.at(i, j) = UG.at(i, j) / di;
    }
  }
  SnfResult sx = smith_normal_form(X);
  if (sx.rank != n) throw domain_error("quotient of lattices is not finite");
  std::vector<mpz_class> out;
  for (long i = 0; i < n; ++i) {
    mpz_class v = sx.d.at(i, i);
    if (v < 0) v = -v;
    if (v > 1) out.push_back(v);
  }
  return out;
}

}  // namespace padiclab
