#pragma once

// Exact linear algebra over the rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homlie/error.hpp"

namespace homlie {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// "p/q", or "p" when q == 1. The sign always sits on the numerator.
inline std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

inline Scalar parse_scalar(std::string_view text, const std::string& location = "") {
  auto digits = [](std::string_view t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) {
    throw ParseError("malformed_rational", "malformed rational \"" + std::string(text) + "\"", location);
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero_denominator", "zero denominator in \"" + std::string(text) + "\"", location);
  if (negative) n = -n;
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

inline Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v[i] = 1;
  return v;
}

inline bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

/// y += a * x
inline void axpy(const Scalar& a, std::span<const Scalar> x, std::span<Scalar> y) {
  if (sgn(a) == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) != 0) y[i] += a * x[i];
  }
}

inline Vector operator+(const Vector& a, const Vector& b) {
  require_same_dim(a.size(), b.size(), "vector sum");
  Vector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  require_same_dim(a.size(), b.size(), "vector difference");
  Vector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vector operator*(const Scalar& s, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x *= s;
  return r;
}

inline Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  require_same_dim(a.size(), b.size(), "dot product");
  Scalar r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) r += a[i] * b[i];
  }
  return r;
}

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      require_same_dim(cols_, r.size(), "matrix literal row");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require_same_dim(cols, rows[i].size(), "matrix row");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      require_same_dim(rows, columns[j].size(), "matrix column");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }

  Vector column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const { return homlie::is_zero(data_); }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  const std::vector<Scalar>& entries() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_dim(a.rows_, b.rows_, "matrix sum rows");
    require_same_dim(a.cols_, b.cols_, "matrix sum cols");
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_dim(a.rows_, b.rows_, "matrix difference rows");
    require_same_dim(a.cols_, b.cols_, "matrix difference cols");
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }

  friend Matrix operator*(const Scalar& s, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.data_) x *= s;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_dim(a.cols_, b.rows_, "matrix product");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend Vector operator*(const Matrix& a, std::span<const Scalar> v) {
    require_same_dim(a.cols_, v.size(), "matrix-vector product");
    Vector r = zero_vector(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) r[i] = dot(a.row(i), v);
    return r;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) { return a * std::span<const Scalar>(v); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline Matrix power(const Matrix& m, std::size_t k) {
  Matrix r = Matrix::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) r = r * m;
  return r;
}

/// Stack rows of `a` on top of rows of `b`.
inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  require_same_dim(a.cols(), b.cols(), "vstack");
  Matrix r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) std::copy(a.row(i).begin(), a.row(i).end(), r.row(i).begin());
  for (std::size_t i = 0; i < b.rows(); ++i)
    std::copy(b.row(i).begin(), b.row(i).end(), r.row(a.rows() + i).begin());
  return r;
}

struct RrefResult {
  Matrix form;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

inline RrefResult rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t sel = lead;
    while (sel < m.rows() && sgn(m(sel, col)) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != lead) std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(lead).begin());
    Scalar inv = 1 / m(lead, col);
    for (auto& x : m.row(lead)) x *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || sgn(m(r, col)) == 0) continue;
      Scalar f = -m(r, col);
      axpy(f, m.row(lead), m.row(r));
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

/// Incrementally maintained reduced row-echelon basis of a growing span.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t ambient_dim) : n_(ambient_dim) {}

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return rows_.size(); }

  /// Reduces `v` against the current basis in place; the residue is zero iff v is in the span.
  void reduce(Vector& v) const {
    require_same_dim(n_, v.size(), "echelon reduce");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar& c = v[pivots_[r]];
      if (sgn(c) != 0) {
        Scalar f = -c;
        axpy(f, rows_[r], v);
      }
    }
  }

  /// Returns true when `v` enlarged the span.
  bool insert(Vector v) {
    reduce(v);
    auto it = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) != 0; });
    if (it == v.end()) return false;
    std::size_t p = static_cast<std::size_t>(it - v.begin());
    Scalar inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
      if (sgn(row[p]) != 0) {
        Scalar f = -row[p];
        axpy(f, v, row);
      }
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  bool contains(Vector v) const {
    reduce(v);
    return homlie::is_zero(v);
  }

  const std::vector<Vector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// A subspace of F^n stored by its canonical reduced row-echelon basis, so
/// equal subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : n_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }

  static Subspace full(std::size_t n) { return Subspace(Matrix::identity(n), identity_pivots(n)); }

  static Subspace span(std::size_t n, const std::vector<Vector>& vectors) {
    EchelonBuilder b(n);
    for (const auto& v : vectors) b.insert(v);
    return from_builder(b);
  }

  static Subspace row_space(const Matrix& m) {
    auto r = rref(m);
    Matrix basis(r.rank(), m.cols());
    for (std::size_t i = 0; i < r.rank(); ++i)
      std::copy(r.form.row(i).begin(), r.form.row(i).end(), basis.row(i).begin());
    return Subspace(std::move(basis), std::move(r.pivots));
  }

  static Subspace from_builder(const EchelonBuilder& b) {
    return Subspace(Matrix::from_rows(b.rows(), b.ambient_dim()), b.pivots());
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == n_; }

  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector basis_vector(std::size_t r) const { return basis_.row_vector(r); }

  /// Residue of `v` after eliminating the pivot coordinates.
  Vector reduce(Vector v) const {
    require_same_dim(n_, v.size(), "subspace reduce");
    for (std::size_t r = 0; r < dim(); ++r) {
      const Scalar& c = v[pivots_[r]];
      if (sgn(c) != 0) {
        Scalar f = -c;
        axpy(f, basis_.row(r), v);
      }
    }
    return v;
  }

  bool contains(const Vector& v) const { return homlie::is_zero(reduce(v)); }

  /// Coordinates of a member vector in the stored basis.
  Vector coordinates(const Vector& v) const {
    Vector c(dim());
    for (std::size_t r = 0; r < dim(); ++r) c[r] = v[pivots_[r]];
    return c;
  }

  bool is_subspace_of(const Subspace& other) const {
    require_same_dim(n_, other.n_, "subspace inclusion");
    for (std::size_t r = 0; r < dim(); ++r)
      if (!other.contains(basis_vector(r))) return false;
    return true;
  }

  /// Non-pivot coordinates: a deterministic complement basis.
  std::vector<std::size_t> free_coordinates() const {
    std::vector<std::size_t> free;
    std::size_t p = 0;
    for (std::size_t c = 0; c < n_; ++c) {
      if (p < pivots_.size() && pivots_[p] == c) {
        ++p;
      } else {
        free.push_back(c);
      }
    }
    return free;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

 private:
  Subspace(Matrix basis, std::vector<std::size_t> pivots)
      : n_(basis.cols()), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  static std::vector<std::size_t> identity_pivots(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
  }

  std::size_t n_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}
inline Subspace kernel(const Matrix& m) {
  auto r = rref(m);
  std::vector<Vector> vecs;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.rank(); ++i) v[r.pivots[i]] = -r.form(i, f);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), vecs);
}

/// Column span of m.
inline Subspace image(const Matrix& m) { return Subspace::row_space(m.transpose()); }

/// One exact solution of m x = rhs, or nullopt when inconsistent.
inline std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
  require_same_dim(m.rows(), rhs.size(), "solve rhs");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  auto r = rref(std::move(aug));
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vector x = zero_vector(m.cols());
  for (std::size_t i = 0; i < r.rank(); ++i) x[r.pivots[i]] = r.form(i, m.cols());
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto r = rref(std::move(aug));
  if (r.rank() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.form(i, n + j);
  return inv;
}

inline bool is_nondegenerate(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_dim(a.ambient_dim(), b.ambient_dim(), "subspace sum");
  return Subspace::row_space(vstack(a.basis(), b.basis()));
}

/// Vectors annihilated by every basis row (standard pairing).
inline Subspace annihilator(const Subspace& s) { return kernel(s.basis()); }

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_dim(a.ambient_dim(), b.ambient_dim(), "subspace intersection");
  Matrix constraints = vstack(annihilator(a).basis(), annihilator(b).basis());
  if (constraints.rows() == 0) return Subspace::full(a.ambient_dim());
  return kernel(constraints);
}

inline bool subspace_contains(const Subspace& a, const Vector& v) {
  require_same_dim(a.ambient_dim(), v.size(), "subspace membership");
  return a.contains(v);
}

/// {v : B(w, v) = 0 for all w in s}, B given by its Gram matrix.
inline Subspace orthogonal_complement(const Subspace& s, const Matrix& gram) {
  require_same_dim(s.ambient_dim(), gram.rows(), "orthogonal complement");
  if (s.dim() == 0) return Subspace::full(s.ambient_dim());
  return kernel(s.basis() * gram);
}

/// B(v, w) = vᵀ G w
inline Scalar bilinear(const Matrix& gram, const Vector& v, const Vector& w) { return dot(v, gram * w); }

}  // namespace homlie
