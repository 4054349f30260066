#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "homlie/catalog.hpp"
#include "homlie/core.hpp"
#include "oracles.hpp"

using namespace homlie;

namespace {

/// Heisenberg algebra [e0, e1] = e2 with the given twist.
HomLieAlgebra heisenberg(Matrix twist = Matrix::identity(3)) {
  StructureTensor br(3);
  br.add(0, 1, 2, 1);
  return HomLieAlgebra(br, std::move(twist));
}

/// Sparse invertible matrix: unit lower-triangular times a permutation-free upper one.
Matrix random_invertible(std::mt19937& rng, std::size_t n) {
  Matrix lo = Matrix::identity(n), up = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (rng() % 8 == 0) {
        lo(i, j) = gen::small_rational(rng);
        up(j, i) = gen::small_rational(rng);
      }
  return lo * up;
}

}  // namespace

TEST(StructureTensor, SkewSymmetryHoldsByConstruction) {
  StructureTensor t(3);
  t.add(0, 1, 2, 5);
  t.add(2, 1, 0, 3);
  EXPECT_EQ(t.bracket(0, 1), (Vector{0, 0, 5}));
  EXPECT_EQ(t.bracket(1, 0), (Vector{0, 0, -5}));
  EXPECT_EQ(t.coefficient(1, 2, 0), -3);
  EXPECT_EQ(t.bracket(1, 1), zero_vector(3));
  EXPECT_THROW(t.add(1, 1, 0, 1), Error);
  EXPECT_THROW(t.add(0, 3, 0, 1), Error);
  t.set(0, 1, 2, 0);
  EXPECT_EQ(t.entries().size(), 1u);
  EXPECT_EQ(t.entries()[0], (BracketEntry{1, 2, 0, -3}));
}

TEST(StructureTensor, EvalIsBilinear) {
  const HomLieAlgebra g = sl(2);
  std::mt19937 rng(11);
  auto rv = [&] {
    Vector v(3);
    for (auto& x : v) x = gen::small_rational(rng);
    return v;
  };
  oracle::Dense d = oracle::dense_of(g);
  for (int t = 0; t < 20; ++t) {
    Vector u = rv(), v = rv(), w = rv();
    Scalar a = gen::small_rational(rng);
    EXPECT_EQ(g(a * u + v, w), a * g(u, w) + g(v, w));
    EXPECT_EQ(g(u, w), Vector(d.bracket(u, w)));
  }
}

TEST(Sl2, ConstantsAndKilling) {
  // basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f
  const HomLieAlgebra g = sl(2);
  EXPECT_EQ(g.basis_bracket(0, 1), (Vector{0, 0, 1}));
  EXPECT_EQ(g.basis_bracket(2, 0), (Vector{2, 0, 0}));
  EXPECT_EQ(g.basis_bracket(2, 1), (Vector{0, -2, 0}));
  EXPECT_EQ(killing(g), (Matrix{{0, 4, 0}, {4, 0, 0}, {0, 0, 8}}));
  EXPECT_EQ(oracle::killing(oracle::dense_of(g)), oracle::to_mat(killing(g)));
}

TEST(Sl3, KillingMatchesOracleAndIsNondegenerate) {
  const HomLieAlgebra g = sl(3);
  Matrix k = killing(g);
  EXPECT_EQ(oracle::killing(oracle::dense_of(g)), oracle::to_mat(k));
  EXPECT_EQ(oracle::rank(oracle::to_mat(k)), 8u);
  EXPECT_TRUE(derived_subalgebra(g).is_full());
  EXPECT_TRUE(center(g).is_zero());
}

TEST(Structure, HeisenbergDerivedAndCenter) {
  HomLieAlgebra g = heisenberg();
  Subspace z = Subspace::span(3, {{0, 0, 1}});
  EXPECT_EQ(derived_subalgebra(g), z);
  EXPECT_EQ(center(g), z);
  EXPECT_EQ(adjoint(g, {1, 0, 0}), (Matrix{{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(adjoint_basis(g, 1), adjoint(g, {0, 1, 0}));
}

TEST(Ideals, ClosureIsSmallestIdeal) {
  HomLieAlgebra g = sl(2);
  // Any nonzero element generates all of the simple sl2.
  EXPECT_TRUE(ideal_closure(g, Subspace::span(3, {{1, 0, 0}})).is_full());
  HomLieAlgebra h = heisenberg();
  Subspace line = Subspace::span(3, {{1, 0, 0}});
  Subspace cl = ideal_closure(h, line);
  EXPECT_EQ(cl, Subspace::span(3, {{1, 0, 0}, {0, 0, 1}}));
  EXPECT_TRUE(is_ideal(h, cl));
  auto chk = is_ideal(h, line);
  EXPECT_FALSE(chk);
  ASSERT_TRUE(chk.witness.has_value());
  EXPECT_EQ(chk.witness->indices, (std::vector<std::size_t>{1, 0}));
}

TEST(Ideals, TwistMustPreserveIdeal) {
  Matrix t{{0, 0, 0}, {0, 0, 0}, {1, 0, 0}};
  StructureTensor zero(3);
  HomLieAlgebra ab(zero, t);
  Subspace line = Subspace::span(3, {{0, 0, 1}});
  EXPECT_TRUE(is_ideal(ab, line));
  EXPECT_FALSE(is_ideal(ab, Subspace::span(3, {{1, 0, 0}})));
  EXPECT_EQ(ideal_closure(ab, Subspace::span(3, {{1, 0, 0}})).dim(), 2u);
}

TEST(Quotient, ProjectionIsHomomorphism) {
  // (sl2 + heisenberg) / center of heisenberg
  HomLieAlgebra g = direct_sum(sl(2), heisenberg());
  Subspace ideal = Subspace::span(6, {unit_vector(6, 5)});
  Quotient q = quotient(g, ideal);
  EXPECT_EQ(q.algebra.dim(), 5u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      Vector lhs = q.projection * g.basis_bracket(i, j);
      Vector rhs = q.algebra(q.projection * unit_vector(6, i), q.projection * unit_vector(6, j));
      EXPECT_EQ(lhs, rhs);
    }
  EXPECT_EQ(center(q.algebra).dim(), 2u);
  EXPECT_THROW(quotient(g, Subspace::span(6, {unit_vector(6, 0)})), Error);
  EXPECT_EQ(q.projection * q.lift({1, 2, 3, 4, 5}), (Vector{1, 2, 3, 4, 5}));
}

TEST(ChangeBasis, PreservesAxiomsAndInvariants) {
  std::mt19937 rng(12);
  QuadraticHomLieAlgebra q = example_section3({{{1, 2, 3}, Scalar(1)}});
  oracle::Dense base = oracle::dense_of(q.algebra());
  EXPECT_TRUE(oracle::jacobi_holds(base, false));
  for (int t = 0; t < 3; ++t) {
    Matrix p = random_invertible(rng, q.dim());
    QuadraticHomLieAlgebra r = change_basis(q, p);
    oracle::Dense d = oracle::dense_of(r.algebra());
    EXPECT_TRUE(oracle::jacobi_holds(d, false));
    EXPECT_FALSE(oracle::jacobi_holds(d, true));
    EXPECT_TRUE(oracle::centroid_holds(d));
    EXPECT_TRUE(oracle::metric_invariant(d, oracle::to_mat(r.gram())));
    EXPECT_EQ(derived_subalgebra(r.algebra()).dim(), derived_subalgebra(q.algebra()).dim());
    // p^-1 undoes p exactly
    EXPECT_EQ(change_basis(r, *inverse(p)), q);
  }
}

TEST(Restrict, SubalgebraStructure) {
  HomLieAlgebra g = direct_sum(sl(2), heisenberg());
  Subspace first = Subspace::span(6, {unit_vector(6, 0), unit_vector(6, 1), unit_vector(6, 2)});
  EXPECT_EQ(restrict_to(g, first), sl(2));
  EXPECT_THROW(restrict_to(g, Subspace::span(6, {unit_vector(6, 0), unit_vector(6, 1)})), Error);
  Matrix gram = block_diagonal(Matrix::identity(3), Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  EXPECT_EQ(restrict_form(gram, first), Matrix::identity(3));
}

TEST(Quadratic, ConstructorRejectsBadMetric) {
  EXPECT_THROW(QuadraticHomLieAlgebra(sl(2), Matrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), Error);
  try {
    QuadraticHomLieAlgebra(sl(2), Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_metric);
  }
  EXPECT_NO_THROW(QuadraticHomLieAlgebra(sl(2), Matrix(3, 3), unchecked));
  EXPECT_THROW(HomLieAlgebra(StructureTensor(3), Matrix::identity(2)), Error);
}
