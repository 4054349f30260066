#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "homlie/homlie.hpp"
#include "oracles.hpp"

using namespace homlie;

namespace {

QuadraticHomLieAlgebra section3() { return example_section3({{{1, 2, 3}, Scalar(1)}}); }

bool same(const QuadraticHomLieAlgebra& a, const QuadraticHomLieAlgebra& b) {
  return a.bracket() == b.bracket() && a.twist() == b.twist() && a.gram() == b.gram();
}

bool rebuilds(const DecompositionData& d, const QuadraticHomLieAlgebra& q) {
  return same(build(d.to_extension_data()), change_basis(q, d.assembled_basis()));
}

}  // namespace

TEST(Centroid, ElementsSatisfyIdentityByOracle) {
  for (const HomLieAlgebra& g : {sl(2), sl(3), section3().algebra()}) {
    Subspace c = centroid_space(g);
    ASSERT_GE(c.dim(), 1u);
    for (std::size_t r = 0; r < c.dim(); ++r) {
      HomLieAlgebra with(g.bracket(), unflatten(c.basis_vector(r), g.dim()));
      EXPECT_TRUE(oracle::centroid_holds(oracle::dense_of(with)));
    }
  }
  EXPECT_EQ(centroid_space(sl(3)).dim(), 1u);
  // scalars and the twist itself
  EXPECT_GE(centroid_space(section3().algebra()).dim(), 2u);
}

TEST(CertifySimple, SimpleAndNonSimpleCases) {
  EXPECT_TRUE(certify_simple(sl(2)));
  EXPECT_TRUE(certify_simple(sl(3)));
  SimplicityCertificate two = certify_simple(direct_sum(sl(2), sl(2)));
  EXPECT_FALSE(two);
  EXPECT_TRUE(two.jacobi);
  EXPECT_TRUE(two.killing_nondegenerate);
  EXPECT_EQ(two.centroid_dim, 2u);
  SimplicityCertificate nonlie = certify_simple(section3().algebra());
  EXPECT_FALSE(nonlie.jacobi);
  StructureTensor heis(3);
  heis.add(0, 1, 2, 1);
  EXPECT_FALSE(certify_simple(HomLieAlgebra(heis, Matrix::identity(3))).killing_nondegenerate);
}

TEST(Fitting, SplitsLieAndNilpotentParts) {
  HomLieAlgebra s2 = sl(2);
  QuadraticHomLieAlgebra sum = direct_sum(QuadraticHomLieAlgebra(s2, killing(s2)), section3());
  FittingSplit f = fitting(sum);
  EXPECT_EQ(f.ell, 2u);
  EXPECT_EQ(f.image.dim(), 3u);
  EXPECT_EQ(f.kernel.dim(), 16u);
  EXPECT_TRUE(f.orthogonal);
  EXPECT_TRUE(is_nondegenerate(f.lie_part.twist()));
  EXPECT_TRUE(power(f.nilpotent_part.twist(), 2).is_zero());
  EXPECT_TRUE(full_report(f.lie_part).holds("is_lie"));
  EXPECT_TRUE(full_report(f.nilpotent_part).passed());
  EXPECT_EQ(f.lie_embedding.rows(), 19u);
  EXPECT_EQ(f.lie_embedding.cols(), 3u);

  FittingSplit only = fitting(section3());
  EXPECT_EQ(only.ell, 2u);
  EXPECT_TRUE(only.image.is_zero());
  EXPECT_TRUE(only.kernel.is_full());

  FittingSplit lie = fitting(QuadraticHomLieAlgebra(s2, killing(s2)));
  EXPECT_EQ(lie.ell, 0u);
  EXPECT_TRUE(lie.image.is_full());

  HomLieAlgebra off(s2.bracket(), Matrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  EXPECT_THROW(fitting(QuadraticHomLieAlgebra(off, killing(s2))), Error);
}

TEST(MaximalIdeal, Sl3ExampleGivesDualBlock) {
  QuadraticHomLieAlgebra q = section3();
  Subspace ideal = maximal_ideal(q);
  std::vector<Vector> dual;
  for (std::size_t k = 8; k < 16; ++k) dual.push_back(unit_vector(16, k));
  EXPECT_EQ(ideal, Subspace::span(16, dual));
  EXPECT_TRUE(certify_simple(quotient(q.algebra(), ideal).algebra));
}

TEST(MaximalIdeal, SplitsThroughCentroid) {
  // Two sl2 cotangent algebras side by side: Ker T + Im T has quotient sl2 + sl2.
  QuadraticHomLieAlgebra a = example_sl2({{{0, 1, 2}, Scalar(1)}});
  QuadraticHomLieAlgebra q = direct_sum(a, example_sl2({}));
  Subspace ideal = maximal_ideal(q);
  EXPECT_EQ(ideal.dim(), 9u);
  EXPECT_TRUE(is_ideal(q.algebra(), ideal));
  EXPECT_TRUE(certify_simple(quotient(q.algebra(), ideal).algebra));

  DecompositionData d = decompose(q);
  EXPECT_EQ(d.s_dim(), 3u);
  EXPECT_EQ(d.h_dim(), 6u);
  EXPECT_TRUE(validate_decomposition(d, q).passed());
  EXPECT_TRUE(rebuilds(d, q));
}

TEST(MaximalIdeal, Errors) {
  auto code_of = [](const QuadraticHomLieAlgebra& q) {
    try {
      maximal_ideal(q);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  // T = 0: Ker T is everything
  EXPECT_EQ(code_of(build(cotangent_extension(2, {}, 0))), ErrorCode::no_simple_quotient);
  HomLieAlgebra s2 = sl(2);
  EXPECT_EQ(code_of(QuadraticHomLieAlgebra(s2, killing(s2))), ErrorCode::precondition);
}

TEST(Decompose, Sl3ExampleRoundTrip) {
  QuadraticHomLieAlgebra q = section3();
  DecompositionData d = decompose(q);
  EXPECT_EQ(d.s_dim(), 8u);
  EXPECT_EQ(d.h_dim(), 0u);
  AlgebraReport v = validate_decomposition(d, q);
  EXPECT_TRUE(v.passed()) << (v.failures().empty() ? "" : v.failures().front());
  EXPECT_TRUE(v.holds("mu_cyclic"));
  EXPECT_TRUE(v.holds("hypothesis.G"));
  EXPECT_TRUE(v.holds("s_simple"));
  EXPECT_EQ(d.assembled_basis(), Matrix::identity(16));
  EXPECT_EQ(d.to_extension_data(), cotangent_extension(3, {{{1, 2, 3}, Scalar(1)}}));
  EXPECT_TRUE(rebuilds(d, q));
}

TEST(Decompose, Sl2Examples) {
  for (const auto& mu : {CyclicTensor{}, CyclicTensor{{{0, 1, 2}, Scalar(1)}}}) {
    QuadraticHomLieAlgebra q = example_sl2(mu);
    DecompositionData d = decompose(q);
    EXPECT_TRUE(validate_decomposition(d, q).passed());
    EXPECT_TRUE(rebuilds(d, q));
  }
}

TEST(Decompose, TamperedMuIsReportedWithTriple) {
  QuadraticHomLieAlgebra q = section3();
  DecompositionData d = decompose(q);
  d.mu.add(0, 1, 3, 1);
  AlgebraReport v = validate_decomposition(d, q);
  EXPECT_FALSE(v.passed());
  const CheckResult* c = v.find("mu_cyclic");
  ASSERT_NE(c, nullptr);
  ASSERT_FALSE(c->passed);
  EXPECT_EQ(c->witness->indices.size(), 3u);
  EXPECT_FALSE(v.holds("bracket_blocks"));
}

TEST(Decompose, RejectsBadInputs) {
  QuadraticHomLieAlgebra q = section3();
  QuadraticHomLieAlgebra degenerate(q.algebra(), Matrix(16, 16), unchecked);
  try {
    decompose(degenerate);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_metric);
  }
  HomLieAlgebra s2 = sl(2);
  HomLieAlgebra off(s2.bracket(), Matrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
  try {
    decompose(QuadraticHomLieAlgebra(off, killing(s2), unchecked));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition);
  }
}

// Decomposition of generated algebras, in a scrambled basis, rebuilds them exactly.
TEST(Property, DecomposeRebuildsGeneratedAlgebras) {
  std::mt19937 rng(51);
  int done = 0, drawn = 0;
  while (done < 12 && drawn < 2000) {
    ++drawn;
    gen::Draw dr = gen::draw(rng);
    if (!check_hypotheses(dr.data).passed()) continue;
    QuadraticHomLieAlgebra q0 = build(dr.data);
    if (q0.twist().is_zero() || !center(q0.algebra()).is_zero()) continue;
    const std::size_t n = q0.dim();
    // Triangular change of basis with unit diagonal.
    Matrix p = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 4 == 0) p(i, j) = gen::small_rational(rng);
    QuadraticHomLieAlgebra q = change_basis(q0, p);
    DecompositionData d;
    try {
      d = decompose(q);
    } catch (const Error& e) {
      // Generated data may be decomposable; everything else is a bug.
      EXPECT_EQ(e.code(), ErrorCode::decomposable) << e.what();
      continue;
    }
    ++done;
    AlgebraReport v = validate_decomposition(d, q);
    EXPECT_TRUE(v.passed()) << gen::name(dr.shape) << ": " << (v.failures().empty() ? "" : v.failures().front());
    EXPECT_TRUE(rebuilds(d, q)) << gen::name(dr.shape);
    EXPECT_EQ(d.s_dim(), dr.data.s_dim);
  }
  EXPECT_EQ(done, 12);
}
