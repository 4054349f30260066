#pragma once

// Hom-Lie algebras given by structure constants, and the bracket-level
// computations on them: evaluation, adjoints, ideals, quotients, sums.

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homlie/exactlin.hpp"
#include "homlie/report.hpp"

namespace homlie {

struct Term {
  std::size_t index;
  Scalar coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

struct BracketEntry {
  std::size_t i, j, k;
  Scalar c;

  friend bool operator==(const BracketEntry&, const BracketEntry&) = default;
};

/// Skew-symmetric bilinear map F^dim x F^dim -> F^out_dim, stored sparsely on
/// pairs i < j. [e_j, e_i] = -[e_i, e_j] and [e_i, e_i] = 0 hold by construction.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(std::size_t dim) : StructureTensor(dim, dim) {}
  StructureTensor(std::size_t dim, std::size_t out_dim)
      : dim_(dim), out_dim_(out_dim), pairs_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t out_dim() const { return out_dim_; }

  /// Adds c to the e_k coefficient of [e_i, e_j]; i > j is stored with its sign flipped.
  void add(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
    check_index(i, j, k);
    if (sgn(c) == 0) return;
    if (i == j) throw Error(ErrorCode::precondition, "nonzero bracket [e_i, e_i]");
    Scalar v = i < j ? c : Scalar(-c);
    auto& terms = pairs_[slot(std::min(i, j), std::max(i, j))];
    auto it = std::lower_bound(terms.begin(), terms.end(), k,
                               [](const Term& t, std::size_t key) { return t.index < key; });
    if (it != terms.end() && it->index == k) {
      it->coeff += v;
      if (sgn(it->coeff) == 0) terms.erase(it);
    } else {
      terms.insert(it, Term{k, v});
    }
  }

  void set(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
    add(i, j, k, -coefficient(i, j, k));
    add(i, j, k, c);
  }

  /// Sets [e_i, e_j] to the dense vector v.
  void set_bracket(std::size_t i, std::size_t j, const Vector& v) {
    require_same_dim(out_dim_, v.size(), "bracket value");
    for (std::size_t k = 0; k < out_dim_; ++k) set(i, j, k, v[k]);
  }

  Scalar coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    check_index(i, j, k);
    if (i == j) return 0;
    const auto& terms = pairs_[slot(std::min(i, j), std::max(i, j))];
    for (const auto& t : terms)
      if (t.index == k) return i < j ? t.coeff : Scalar(-t.coeff);
    return 0;
  }

  /// Sparse [e_i, e_j] for i < j.
  std::span<const Term> terms(std::size_t i, std::size_t j) const { return pairs_[slot(i, j)]; }

  Vector bracket(std::size_t i, std::size_t j) const {
    Vector r = zero_vector(out_dim_);
    if (i == j) return r;
    for (const auto& t : terms(std::min(i, j), std::max(i, j))) r[t.index] = i < j ? t.coeff : Scalar(-t.coeff);
    return r;
  }

  /// Bilinear extension to arbitrary vectors.
  Vector eval(std::span<const Scalar> v, std::span<const Scalar> w) const {
    require_same_dim(dim_, v.size(), "bracket argument");
    require_same_dim(dim_, w.size(), "bracket argument");
    Vector r = zero_vector(out_dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(v[i]) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (i == j || sgn(w[j]) == 0) continue;
        Scalar c = v[i] * w[j];
        if (i > j) c = -c;
        for (const auto& t : terms(std::min(i, j), std::max(i, j))) r[t.index] += c * t.coeff;
      }
    }
    return r;
  }

  /// Nonzero entries with i < j, ordered by (i, j, k).
  std::vector<BracketEntry> entries() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (const auto& t : terms(i, j)) out.push_back({i, j, t.index, t.coeff});
    return out;
  }

  bool is_zero() const {
    return std::all_of(pairs_.begin(), pairs_.end(), [](const auto& t) { return t.empty(); });
  }

  friend bool operator==(const StructureTensor& a, const StructureTensor& b) {
    return a.dim_ == b.dim_ && a.out_dim_ == b.out_dim_ && a.pairs_ == b.pairs_;
  }

 private:
  std::size_t slot(std::size_t i, std::size_t j) const { return i * dim_ + j; }

  void check_index(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= dim_ || j >= dim_ || k >= out_dim_) {
      throw Error(ErrorCode::dimension_mismatch, "structure tensor index out of range");
    }
  }

  std::size_t dim_ = 0;
  std::size_t out_dim_ = 0;
  std::vector<std::vector<Term>> pairs_;
};

/// (g, [.,.], T): structure constants plus twist matrix (columns are images of basis vectors).
class HomLieAlgebra {
 public:
  HomLieAlgebra() = default;
  HomLieAlgebra(StructureTensor bracket, Matrix twist) : bracket_(std::move(bracket)), twist_(std::move(twist)) {
    require_same_dim(bracket_.dim(), bracket_.out_dim(), "bracket codomain");
    require_same_dim(bracket_.dim(), twist_.rows(), "twist rows");
    require_same_dim(bracket_.dim(), twist_.cols(), "twist cols");
  }

  std::size_t dim() const { return bracket_.dim(); }
  const StructureTensor& bracket() const { return bracket_; }
  const Matrix& twist() const { return twist_; }

  Vector operator()(std::span<const Scalar> v, std::span<const Scalar> w) const { return bracket_.eval(v, w); }
  Vector basis_bracket(std::size_t i, std::size_t j) const { return bracket_.bracket(i, j); }
  Vector twist_of(const Vector& v) const { return twist_ * v; }

  friend bool operator==(const HomLieAlgebra&, const HomLieAlgebra&) = default;

 private:
  StructureTensor bracket_;
  Matrix twist_;
};

struct unchecked_t {};
inline constexpr unchecked_t unchecked{};

/// Hom-Lie algebra with a symmetric nondegenerate Gram matrix.
class QuadraticHomLieAlgebra {
 public:
  QuadraticHomLieAlgebra() = default;

  QuadraticHomLieAlgebra(HomLieAlgebra algebra, Matrix gram) : algebra_(std::move(algebra)), gram_(std::move(gram)) {
    check_shape();
    if (!gram_.is_symmetric()) throw Error(ErrorCode::degenerate_metric, "metric is not symmetric");
    if (!is_nondegenerate(gram_)) throw Error(ErrorCode::degenerate_metric, "metric is degenerate");
  }

  /// Skips the symmetry and nondegeneracy checks; used to report on invalid metrics.
  QuadraticHomLieAlgebra(HomLieAlgebra algebra, Matrix gram, unchecked_t)
      : algebra_(std::move(algebra)), gram_(std::move(gram)) {
    check_shape();
  }

  std::size_t dim() const { return algebra_.dim(); }
  const HomLieAlgebra& algebra() const { return algebra_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& twist() const { return algebra_.twist(); }
  const StructureTensor& bracket() const { return algebra_.bracket(); }

  Scalar form(const Vector& v, const Vector& w) const { return bilinear(gram_, v, w); }

  friend bool operator==(const QuadraticHomLieAlgebra&, const QuadraticHomLieAlgebra&) = default;

 private:
  void check_shape() const {
    require_same_dim(algebra_.dim(), gram_.rows(), "metric rows");
    require_same_dim(algebra_.dim(), gram_.cols(), "metric cols");
  }

  HomLieAlgebra algebra_;
  Matrix gram_;
};

inline Vector bracket_eval(const HomLieAlgebra& g, const Vector& v, const Vector& w) { return g(v, w); }

/// Matrix of y -> [v, y].
inline Matrix adjoint(const HomLieAlgebra& g, const Vector& v) {
  require_same_dim(g.dim(), v.size(), "adjoint argument");
  const std::size_t n = g.dim();
  Matrix ad(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector c = g(v, unit_vector(n, j));
    for (std::size_t i = 0; i < n; ++i) ad(i, j) = std::move(c[i]);
  }
  return ad;
}

inline Matrix adjoint_basis(const HomLieAlgebra& g, std::size_t i) {
  const std::size_t n = g.dim();
  Matrix ad(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (i == j) continue;
    for (const auto& t : g.bracket().terms(std::min(i, j), std::max(i, j)))
      ad(t.index, j) = i < j ? t.coeff : Scalar(-t.coeff);
  }
  return ad;
}

/// K(e_i, e_j) = trace(ad(e_i) ad(e_j)).
inline Matrix killing(const HomLieAlgebra& g) {
  const std::size_t n = g.dim();
  std::vector<Matrix> ads;
  ads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ads.push_back(adjoint_basis(g, i));
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Scalar tr = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (sgn(ads[i](a, b)) != 0 && sgn(ads[j](b, a)) != 0) tr += ads[i](a, b) * ads[j](b, a);
      k(i, j) = tr;
      k(j, i) = tr;
    }
  return k;
}

/// Span of all [e_i, e_j].
inline Subspace derived_subalgebra(const HomLieAlgebra& g) {
  EchelonBuilder b(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j)
      if (!g.bracket().terms(i, j).empty()) b.insert(g.basis_bracket(i, j));
  return Subspace::from_builder(b);
}

/// {v : [v, e_i] = 0 for every i}.
inline Subspace center(const HomLieAlgebra& g) {
  const std::size_t n = g.dim();
  if (n == 0) return Subspace::zero(0);
  // Row (i, k): coefficient of v_j is the e_k component of [e_j, e_i].
  Matrix constraints(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const auto& t : g.bracket().terms(std::min(i, j), std::max(i, j)))
        constraints(i * n + t.index, j) = j < i ? t.coeff : Scalar(-t.coeff);
    }
  return kernel(constraints);
}

/// Smallest subspace containing `seed` that is stable under the twist and
/// under bracketing with every basis vector.
inline Subspace ideal_closure(const HomLieAlgebra& g, const Subspace& seed) {
  require_same_dim(g.dim(), seed.ambient_dim(), "ideal seed");
  const std::size_t n = g.dim();
  EchelonBuilder b(n);
  std::deque<Vector> pending;
  for (std::size_t r = 0; r < seed.dim(); ++r) pending.push_back(seed.basis_vector(r));
  while (!pending.empty()) {
    Vector v = std::move(pending.front());
    pending.pop_front();
    if (!b.insert(v)) continue;
    pending.push_back(g.twist_of(v));
    for (std::size_t i = 0; i < n; ++i) pending.push_back(g(unit_vector(n, i), v));
  }
  return Subspace::from_builder(b);
}

struct IdealCheck {
  bool is_ideal = true;
  std::optional<Witness> witness;

  explicit operator bool() const { return is_ideal; }
};

/// Witness indices are (basis index i, ideal basis row r) for an escaping
/// [e_i, b_r], or (r) alone when T(b_r) escapes.
inline IdealCheck is_ideal(const HomLieAlgebra& g, const Subspace& s) {
  require_same_dim(g.dim(), s.ambient_dim(), "ideal candidate");
  const std::size_t n = g.dim();
  for (std::size_t r = 0; r < s.dim(); ++r) {
    Vector b = s.basis_vector(r);
    Vector t = g.twist_of(b);
    if (!s.contains(t)) return {false, Witness{{r}, t, "twist escapes"}};
    for (std::size_t i = 0; i < n; ++i) {
      Vector br = g(unit_vector(n, i), b);
      if (!s.contains(br)) return {false, Witness{{i, r}, br, "bracket escapes"}};
    }
  }
  return {};
}

struct Quotient {
  HomLieAlgebra algebra;
  /// (n - k) x n, maps g onto quotient coordinates.
  Matrix projection;
  /// Ambient coordinates used as the quotient basis (non-pivots of the ideal).
  std::vector<std::size_t> complement;

  Vector lift(const Vector& q) const {
    Vector v = zero_vector(projection.cols());
    for (std::size_t a = 0; a < complement.size(); ++a) v[complement[a]] = q[a];
    return v;
  }
};

inline Quotient quotient(const HomLieAlgebra& g, const Subspace& ideal) {
  if (auto chk = is_ideal(g, ideal); !chk) throw Error(ErrorCode::not_an_ideal, "quotient: subspace is not an ideal");
  const std::size_t n = g.dim();
  auto complement = ideal.free_coordinates();
  const std::size_t m = complement.size();
  Matrix proj(m, n);
  for (std::size_t a = 0; a < m; ++a) {
    proj(a, complement[a]) = 1;
    for (std::size_t r = 0; r < ideal.dim(); ++r) proj(a, ideal.pivots()[r]) = -ideal.basis()(r, complement[a]);
  }
  StructureTensor br(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      Vector v = proj * g.basis_bracket(complement[a], complement[b]);
      for (std::size_t k = 0; k < m; ++k) br.add(a, b, k, v[k]);
    }
  Matrix tw(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    Vector v = proj * g.twist().column(complement[a]);
    for (std::size_t k = 0; k < m; ++k) tw(k, a) = v[k];
  }
  return {HomLieAlgebra(std::move(br), std::move(tw)), std::move(proj), std::move(complement)};
}

/// Structure of g restricted to a subspace closed under bracket and twist,
/// in the coordinates of the subspace's canonical basis.
inline HomLieAlgebra restrict_to(const HomLieAlgebra& g, const Subspace& sub) {
  require_same_dim(g.dim(), sub.ambient_dim(), "restriction");
  const std::size_t k = sub.dim();
  StructureTensor br(k);
  Matrix tw(k, k);
  auto coords = [&](const Vector& v) {
    if (!sub.contains(v)) throw Error(ErrorCode::precondition, "restriction: subspace is not closed");
    return sub.coordinates(v);
  };
  for (std::size_t a = 0; a < k; ++a) {
    Vector ta = coords(g.twist_of(sub.basis_vector(a)));
    for (std::size_t c = 0; c < k; ++c) tw(c, a) = ta[c];
    for (std::size_t b = a + 1; b < k; ++b) {
      Vector v = coords(g(sub.basis_vector(a), sub.basis_vector(b)));
      for (std::size_t c = 0; c < k; ++c) br.add(a, b, c, v[c]);
    }
  }
  return HomLieAlgebra(std::move(br), std::move(tw));
}

/// Gram matrix of B restricted to the canonical basis of `sub`.
inline Matrix restrict_form(const Matrix& gram, const Subspace& sub) {
  return sub.basis() * gram * sub.basis().transpose();
}

/// The same algebra in the basis given by the columns of `basis`.
inline HomLieAlgebra change_basis(const HomLieAlgebra& g, const Matrix& basis) {
  auto inv = inverse(basis);
  if (!inv) throw Error(ErrorCode::precondition, "change_basis: basis matrix is singular");
  const std::size_t n = g.dim();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(basis.column(j));
  StructureTensor br(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector v = *inv * g(cols[a], cols[b]);
      for (std::size_t k = 0; k < n; ++k) br.add(a, b, k, v[k]);
    }
  return HomLieAlgebra(std::move(br), *inv * g.twist() * basis);
}

inline QuadraticHomLieAlgebra change_basis(const QuadraticHomLieAlgebra& q, const Matrix& basis) {
  return QuadraticHomLieAlgebra(change_basis(q.algebra(), basis), basis.transpose() * q.gram() * basis, unchecked);
}

inline HomLieAlgebra direct_sum(const HomLieAlgebra& a, const HomLieAlgebra& b) {
  const std::size_t na = a.dim();
  const std::size_t n = na + b.dim();
  StructureTensor br(n);
  for (const auto& e : a.bracket().entries()) br.add(e.i, e.j, e.k, e.c);
  for (const auto& e : b.bracket().entries()) br.add(na + e.i, na + e.j, na + e.k, e.c);
  Matrix tw(n, n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) tw(i, j) = a.twist()(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) tw(na + i, na + j) = b.twist()(i, j);
  return HomLieAlgebra(std::move(br), std::move(tw));
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline QuadraticHomLieAlgebra direct_sum(const QuadraticHomLieAlgebra& a, const QuadraticHomLieAlgebra& b) {
  return QuadraticHomLieAlgebra(direct_sum(a.algebra(), b.algebra()), block_diagonal(a.gram(), b.gram()), unchecked);
}

}  // namespace homlie
