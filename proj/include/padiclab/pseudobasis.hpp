#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "padiclab/snf.hpp"

// Finite Z_p-modules by invariant factors, homomorphisms between them, and
// the pseudobasis model of mixed completed tensor products: X tensored
// against a profinite flat module with finite pseudobasis I is the product
// of |I| copies of (the p-adic completion of) X, acting componentwise.

namespace padiclab {

struct FiniteModule {
  long p = 3;
  std::vector<long> exps;  // invariant factor exponents, descending, all >= 1

  FiniteModule() = default;
  FiniteModule(long p_, std::vector<long> e) : p(p_), exps(std::move(e)) {
    for (long x : exps)
      if (x < 1) throw domain_error("invariant factor exponents must be >= 1");
    std::sort(exps.begin(), exps.end(), std::greater<long>());
  }

  long ngens() const { return static_cast<long>(exps.size()); }
  long order_exponent() const {
    long s = 0;
    for (long e : exps) s += e;
    return s;
  }
  bool trivial() const { return exps.empty(); }

  MatZ relation_lattice() const {
    std::vector<mpz_class> d;
    for (long e : exps) d.push_back(detail::pow_ui(mpz_class(p), static_cast<unsigned long>(e)));
    return MatZ::diagonal(d);
  }

  bool operator==(const FiniteModule& o) const { return p == o.p && exps == o.exps; }
};

struct PseudobasisModule {
  FiniteModule component;
  std::vector<std::string> labels;  // the finite index truncation I
};

// componentwise identification X tensor M = prod_{i in I} X
inline FiniteModule mixed_tensor(const FiniteModule& X, const PseudobasisModule& M) {
  std::vector<long> e;
  for (size_t i = 0; i < M.labels.size(); ++i)
    e.insert(e.end(), X.exps.begin(), X.exps.end());
  return FiniteModule(X.p, e);
}

struct GroupHom {
  FiniteModule dom, cod;
  MatZ mat;  // cod.ngens() x dom.ngens(), canonical integer lifts

  GroupHom() = default;
  GroupHom(FiniteModule d, FiniteModule c, MatZ m)
      : dom(std::move(d)), cod(std::move(c)), mat(std::move(m)) {
    if (mat.rows != cod.ngens() || mat.cols != dom.ngens())
      throw domain_error("hom matrix shape mismatch");
    // well-definedness: p^{a_t} * column t must die in the codomain
    for (long t = 0; t < dom.ngens(); ++t) {
      mpz_class ord = detail::pow_ui(mpz_class(dom.p), static_cast<unsigned long>(dom.exps[t]));
      for (long u = 0; u < cod.ngens(); ++u) {
        mpz_class cord = detail::pow_ui(mpz_class(cod.p), static_cast<unsigned long>(cod.exps[u]));
        if ((ord * mat.at(u, t)) % cord != 0)
          throw domain_error("matrix does not define a homomorphism");
      }
    }
  }

  static GroupHom zero(const FiniteModule& d, const FiniteModule& c) {
    return GroupHom(d, c, MatZ(c.ngens(), d.ngens()));
  }

  friend GroupHom compose(const GroupHom& g, const GroupHom& f) {
    if (!(g.dom == f.cod)) throw domain_error("hom composition mismatch");
    return GroupHom(f.dom, g.cod, g.mat * f.mat);
  }

  // blockdiagonal repetition: the componentwise action on prod_{i in I}
  GroupHom repeat(long k) const {
    std::vector<long> de, ce;
    for (long i = 0; i < k; ++i) {
      de.insert(de.end(), dom.exps.begin(), dom.exps.end());
      ce.insert(ce.end(), cod.exps.begin(), cod.exps.end());
    }
    MatZ m(cod.ngens() * k, dom.ngens() * k);
    for (long i = 0; i < k; ++i)
      for (long r = 0; r < mat.rows; ++r)
        for (long c = 0; c < mat.cols; ++c)
          m.at(i * mat.rows + r, i * mat.cols + c) = mat.at(r, c);
    // note: exps get re-sorted inside FiniteModule; keep raw order by
    // constructing modules whose exps are already sorted blockwise
    return GroupHom(FiniteModule(dom.p, de), FiniteModule(cod.p, ce), reorder(m, de, ce));
  }

  bool is_zero() const {
    for (long t = 0; t < dom.ngens(); ++t)
      for (long u = 0; u < cod.ngens(); ++u) {
        mpz_class cord = detail::pow_ui(mpz_class(cod.p), static_cast<unsigned long>(cod.exps[u]));
        if (mat.at(u, t) % cord != 0) return false;
      }
    return true;
  }

 private:
  // permute rows/cols to match the canonical (sorted) generator order
  static MatZ reorder(const MatZ& m, std::vector<long> de, std::vector<long> ce) {
    auto perm = [](std::vector<long> v) {
      std::vector<long> idx(v.size());
      for (size_t i = 0; i < v.size(); ++i) idx[i] = static_cast<long>(i);
      std::stable_sort(idx.begin(), idx.end(),
                       [&](long a, long b) { return v[a] > v[b]; });
      return idx;
    };
    std::vector<long> pr = perm(ce), pc = perm(de);
    MatZ r(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
      for (long j = 0; j < m.cols; ++j) r.at(i, j) = m.at(pr[i], pc[j]);
    return r;
  }
};

// invariant factors of ker(f) = {x : f(x) = 0} as a subgroup of dom
inline std::vector<mpz_class> kernel_invariants(const GroupHom& f) {
  if (f.dom.trivial()) return {};
  // K = {x in Z^d : M x in Lambda_cod} contains Lambda_dom; kernel = K/Lambda_dom
  MatZ stacked = f.mat.hcat(f.cod.relation_lattice());
  MatZ K = integer_kernel(stacked);
  // project to the x-part
  MatZ Kx(f.dom.ngens(), K.cols + f.dom.ngens());
  for (long i = 0; i < f.dom.ngens(); ++i)
    for (long j = 0; j < K.cols; ++j) Kx.at(i, j) = K.at(i, j);
  MatZ lam = f.dom.relation_lattice();
  for (long i = 0; i < f.dom.ngens(); ++i)
    for (long j = 0; j < f.dom.ngens(); ++j) Kx.at(i, K.cols + j) = lam.at(i, j);
  // Kx generates the preimage lattice; quotient by Lambda_dom
  return lattice_quotient_invariants(Kx, lam);
}

inline std::vector<mpz_class> cokernel_invariants(const GroupHom& f) {
  if (f.cod.trivial()) return {};
  MatZ gens = f.mat.hcat(f.cod.relation_lattice());
  MatZ id = MatZ::identity(f.cod.ngens());
  return lattice_quotient_invariants(id, gens);
}

inline long exponent_sum(const std::vector<mpz_class>& inv, long p) {
  long s = 0;
  for (auto& v : inv) s += detail::vp(v, p);
  return s;
}

// log_p of the group orders
inline long kernel_order_exponent(const GroupHom& f) {
  return exponent_sum(kernel_invariants(f), f.dom.p);
}
inline long image_order_exponent(const GroupHom& f) {
  return f.dom.order_exponent() - kernel_order_exponent(f);
}

// image(f) == kernel(g) as subgroups of f.cod == g.dom
inline bool exact_at_middle(const GroupHom& f, const GroupHom& g) {
  if (!(f.cod == g.dom)) throw domain_error("maps not composable");
  if (!compose(g, f).is_zero()) return false;
  return image_order_exponent(f) == kernel_order_exponent(g);
}

struct ShortExactSequence {
  FiniteModule A, B, C;
  GroupHom inc;   // A -> B
  GroupHom proj;  // B -> C
};

inline bool is_short_exact(const ShortExactSequence& s) {
  return kernel_order_exponent(s.inc) == 0 && exact_at_middle(s.inc, s.proj) &&
         image_order_exponent(s.proj) == s.C.order_exponent();
}

// componentwise tensor of a whole sequence against the pseudobasis module
inline ShortExactSequence mixed_tensor(const ShortExactSequence& s, const PseudobasisModule& M) {
  long k = static_cast<long>(M.labels.size());
  ShortExactSequence r;
  r.inc = s.inc.repeat(k);
  r.proj = s.proj.repeat(k);
  r.A = r.inc.dom;
  r.B = r.inc.cod;
  r.C = r.proj.cod;
  return r;
}

// All sublattices Lambda_B <= L <= Z^r in column Hermite form; each gives a
// subgroup L/Lambda_B of B and hence a short exact sequence
// 0 -> L/Lambda_B -> B -> Z^r/L -> 0.
inline std::vector<MatZ> subgroup_lattices(const FiniteModule& B) {
  long r = B.ngens();
  std::vector<MatZ> out;
  if (r == 0) return out;
  long emax = B.exps.empty() ? 0 : B.exps.front();
  std::vector<long> diag(r, 0);
  MatZ lam = B.relation_lattice();

  std::vector<MatZ> cands;
  // enumerate diagonals p^{a_i} with a_i <= e_max, then reduced off-diagonals
  std::function<void(long)> rec_diag = [&](long i) {
    if (i == r) {
      MatZ H(r, r);
      for (long t = 0; t < r; ++t)
        H.at(t, t) = detail::pow_ui(mpz_class(B.p), static_cast<unsigned long>(diag[t]));
      // fill upper off-diagonal entries 0 <= h_{tj} < h_{tt}
      std::vector<std::pair<long, long>> pos;
      for (long t = 0; t < r; ++t)
        for (long j = t + 1; j < r; ++j) pos.push_back({t, j});
      std::function<void(size_t)> rec_off = [&](size_t k) {
        if (k == pos.size()) {
          cands.push_back(H);
          return;
        }
        auto [t, j] = pos[k];
        mpz_class lim = H.at(t, t);
        for (mpz_class v = 0; v < lim; ++v) {
          H.at(t, j) = v;
          rec_off(k + 1);
        }
        H.at(t, j) = 0;
      };
      rec_off(0);
      return;
    }
    for (long a = 0; a <= emax; ++a) {
      diag[i] = a;
      rec_diag(i + 1);
    }
  };
  rec_diag(0);

  for (auto& H : cands) {
    // keep lattices with Lambda_B <= H Z^r
    bool contains = true;
    for (long j = 0; j < r && contains; ++j) {
      std::vector<mpz_class> b(r), x;
      for (long i = 0; i < r; ++i) b[static_cast<size_t>(i)] = lam.at(i, j);
      contains = solve_integer(H, b, x);
    }
    if (contains) out.push_back(H);
  }
  return out;
}

inline ShortExactSequence sequence_from_subgroup(const FiniteModule& B, const MatZ& L) {
  long r = B.ngens();
  MatZ lam = B.relation_lattice();

  ShortExactSequence s;
  s.B = B;

  // A = L / Lambda_B with SNF-adapted generators
  MatZ X(r, r);
  for (long j = 0; j < r; ++j) {
    std::vector<mpz_class> b(r), x;
    for (long i = 0; i < r; ++i) b[static_cast<size_t>(i)] = lam.at(i, j);
    if (!solve_integer(L, b, x)) throw domain_error("relation lattice not inside subgroup lattice");
    for (long i = 0; i < r; ++i) X.at(i, j) = x[static_cast<size_t>(i)];
  }
  SnfResult sx = smith_normal_form(X);
  // adapted generators of L: columns of L * U^{-1}; instead solve U columns
  // directly: adapted_j = L * (U^{-1} e_j). Compute U^{-1} via solve.
  std::vector<long> aexps;
  std::vector<std::vector<mpz_class>> agens;
  for (long j = 0; j < r; ++j) {
    mpz_class d = sx.d.at(j, j);
    long e = detail::vp(d, B.p);
    std::vector<mpz_class> uinv_col(r), ej(r, 0);
    ej[static_cast<size_t>(j)] = 1;
    MatZ U = sx.u;
    if (!solve_integer(U, ej, uinv_col)) throw domain_error("unimodular solve failed");
    std::vector<mpz_class> gen(r, 0);
    for (long i = 0; i < r; ++i)
      for (long k = 0; k < r; ++k) gen[static_cast<size_t>(i)] += L.at(i, k) * uinv_col[static_cast<size_t>(k)];
    if (e > 0) {
      aexps.push_back(e);
      agens.push_back(gen);
    }
  }
  s.A = FiniteModule(B.p, aexps);
  MatZ inc(r, static_cast<long>(agens.size()));
  {
    // A's exps are re-sorted descending inside FiniteModule; sort gens the same way
    std::vector<long> idx(aexps.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<long>(i);
    std::stable_sort(idx.begin(), idx.end(), [&](long a, long b) { return aexps[a] > aexps[b]; });
    for (size_t jj = 0; jj < idx.size(); ++jj)
      for (long i = 0; i < r; ++i) inc.at(i, static_cast<long>(jj)) = agens[static_cast<size_t>(idx[jj])][static_cast<size_t>(i)];
  }
  s.inc = GroupHom(s.A, s.B, inc);

  // C = Z^r / L via SNF of L: y = U x lives in prod Z/d_i
  SnfResult sl = smith_normal_form(L);
  std::vector<long> cexps;
  std::vector<long> keep;
  for (long i = 0; i < r; ++i) {
    long e = detail::vp(mpz_class(sl.d.at(i, i)), B.p);
    if (e > 0) {
      cexps.push_back(e);
      keep.push_back(i);
    }
  }
  s.C = FiniteModule(B.p, cexps);
  MatZ proj(static_cast<long>(keep.size()), r);
  {
    std::vector<long> idx(cexps.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<long>(i);
    std::stable_sort(idx.begin(), idx.end(), [&](long a, long b) { return cexps[a] > cexps[b]; });
    for (size_t ii = 0; ii < idx.size(); ++ii)
      for (long j = 0; j < r; ++j)
        proj.at(static_cast<long>(ii), j) = sl.u.at(keep[static_cast<size_t>(idx[ii])], j);
  }
  s.proj = GroupHom(s.B, s.C, proj);
  return s;
}

}  // namespace padiclab
