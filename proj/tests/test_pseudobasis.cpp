#include <catch2/catch_amalgamated.hpp>

#include "padiclab/pseudobasis.hpp"

using namespace padiclab;

TEST_CASE("smith normal form basics") {
  MatZ A(2, 2);
  A.at(0, 0) = 2;
  A.at(0, 1) = 4;
  A.at(1, 0) = 6;
  A.at(1, 1) = 8;
  SnfResult s = smith_normal_form(A);
  CHECK(s.rank == 2);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 4);  // det = -8, invariants 2,4
  MatZ chk = s.u * A * s.v;
  CHECK(chk.at(0, 0) == s.d.at(0, 0));
  CHECK(chk.at(0, 1) == 0);
  CHECK(chk.at(1, 0) == 0);
  CHECK(chk.at(1, 1) == s.d.at(1, 1));
}

TEST_CASE("integer kernel and solve") {
  MatZ A(1, 3);
  A.at(0, 0) = 2;
  A.at(0, 1) = 4;
  A.at(0, 2) = 6;
  MatZ K = integer_kernel(A);
  CHECK(K.cols == 2);
  // every kernel column is annihilated
  for (long j = 0; j < K.cols; ++j)
    CHECK(2 * K.at(0, j) + 4 * K.at(1, j) + 6 * K.at(2, j) == 0);

  std::vector<mpz_class> b{10}, x;
  REQUIRE(solve_integer(A, b, x));
  CHECK(2 * x[0] + 4 * x[1] + 6 * x[2] == 10);
  std::vector<mpz_class> bad{3};
  CHECK_FALSE(solve_integer(A, bad, x));
}

TEST_CASE("mixed tensor of a module is the finite product") {
  FiniteModule X(3, {2});  // Z/9
  PseudobasisModule M{FiniteModule(3, {1}), {"e0"}};
  CHECK(mixed_tensor(X, M) == X);  // singleton pseudobasis

  PseudobasisModule M3{FiniteModule(3, {1}), {"e0", "e1", "e2"}};
  FiniteModule prod = mixed_tensor(X, M3);
  CHECK(prod == FiniteModule(3, {2, 2, 2}));  // (Z/9)^3
}

TEST_CASE("hom kernels, images, exactness") {
  // Z/p -> Z/p^2 (x -> p x) -> Z/p exact
  FiniteModule A(3, {1}), B(3, {2}), C(3, {1});
  MatZ mi(1, 1);
  mi.at(0, 0) = 3;
  GroupHom inc(A, B, mi);
  MatZ mp(1, 1);
  mp.at(0, 0) = 1;
  GroupHom proj(B, C, mp);
  CHECK(kernel_order_exponent(inc) == 0);
  CHECK(image_order_exponent(inc) == 1);
  CHECK(kernel_order_exponent(proj) == 1);
  CHECK(exact_at_middle(inc, proj));
  ShortExactSequence s{A, B, C, inc, proj};
  CHECK(is_short_exact(s));
}

TEST_CASE("subgroup enumeration generates short exact sequences") {
  FiniteModule B(3, {2, 1});  // Z/9 x Z/3, order 27
  auto subs = subgroup_lattices(B);
  long count = 0;
  for (auto& L : subs) {
    ShortExactSequence s = sequence_from_subgroup(B, L);
    CHECK(is_short_exact(s));
    CHECK(s.A.order_exponent() + s.C.order_exponent() == B.order_exponent());
    ++count;
  }
  // Z/9 x Z/3 has 10 subgroups
  CHECK(count == 10);
}

TEST_CASE("componentwise tensor preserves exactness (orders <= p^3)") {
  for (long p : {3L, 5L}) {
    std::vector<FiniteModule> bs;
    bs.push_back(FiniteModule(p, {1}));
    bs.push_back(FiniteModule(p, {2}));
    bs.push_back(FiniteModule(p, {1, 1}));
    bs.push_back(FiniteModule(p, {3}));
    bs.push_back(FiniteModule(p, {2, 1}));
    bs.push_back(FiniteModule(p, {1, 1, 1}));
    for (auto& B : bs)
      for (auto& L : subgroup_lattices(B)) {
        ShortExactSequence s = sequence_from_subgroup(B, L);
        REQUIRE(is_short_exact(s));
        for (long k = 1; k <= 3; ++k) {
          PseudobasisModule M{FiniteModule(p, {1}), {}};
          M.labels.assign(static_cast<size_t>(k), "e");
          ShortExactSequence t = mixed_tensor(s, M);
          CHECK(is_short_exact(t));
        }
      }
  }
}
