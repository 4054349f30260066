#pragma once

// Univariate polynomials over Q: just enough to compute the minimal
// polynomial of a matrix and split it into irreducible factors.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "homlie/exactlin.hpp"

namespace homlie {

/// Coefficients stored low degree first; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(std::size_t degree, const Scalar& coeff = 1) {
    std::vector<Scalar> c(degree + 1, Scalar(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  const Scalar& leading() const { return c_.back(); }
  const std::vector<Scalar>& coefficients() const { return c_; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }

  Scalar operator()(const Scalar& x) const {
    Scalar r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    Scalar inv = 1 / leading();
    std::vector<Scalar> c = c_;
    for (auto& x : c) x *= inv;
    return Polynomial(std::move(c));
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Scalar& s, const Polynomial& p) {
    std::vector<Scalar> c = p.c_;
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

inline DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::precondition, "polynomial division by zero");
  std::vector<Scalar> r = a.coefficients();
  const std::size_t db = b.degree();
  if (r.size() < b.coefficients().size()) return {Polynomial(), a};
  std::vector<Scalar> q(r.size() - db, Scalar(0));
  for (std::size_t i = r.size(); i-- > db;) {
    Scalar f = r[i] / b.leading();
    q[i - db] = f;
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeff(j);
  }
  r.resize(db);
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

/// Monic gcd.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Matrix evaluate(const Polynomial& p, const Matrix& m) {
  Matrix r(m.rows(), m.cols());
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * m + *it * Matrix::identity(m.rows());
  return r;
}

/// Monic minimal polynomial, found as the first linear dependency among I, M, M^2, ...
inline Polynomial minimal_polynomial(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::dimension_mismatch, "minimal polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial::monomial(0);
  std::vector<Vector> powers{Matrix::identity(n).entries()};
  Matrix p = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    p = p * m;
    Matrix basis = Matrix::from_columns(powers, n * n);
    if (auto c = solve(basis, p.entries())) {
      std::vector<Scalar> coeffs(k + 1);
      for (std::size_t i = 0; i < k; ++i) coeffs[i] = -(*c)[i];
      coeffs[k] = 1;
      return Polynomial(std::move(coeffs));
    }
    powers.push_back(p.entries());
  }
  throw Error(ErrorCode::internal, "minimal polynomial: no dependency up to degree n");
}

namespace detail {

/// Scales a nonzero polynomial to integer coefficients with content 1 and positive leading coefficient.
inline Polynomial primitive_part(const Polynomial& p) {
  mpz_class den = 1;
  for (const auto& c : p.coefficients()) den = lcm(den, c.get_den());
  mpz_class content = 0;
  for (const auto& c : p.coefficients()) content = gcd(content, mpz_class(c.get_num() * (den / c.get_den())));
  Scalar s(den, content);
  s.canonicalize();
  if (sgn(p.leading()) < 0) s = -s;
  return s * p;
}

inline std::vector<mpz_class> positive_divisors(mpz_class v, std::size_t& budget) {
  v = abs(v);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (budget-- == 0) throw Error(ErrorCode::factorization_limit, "factorization: divisor search limit reached");
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline bool has_integer_coefficients(const Polynomial& p) {
  return std::all_of(p.coefficients().begin(), p.coefficients().end(),
                     [](const Scalar& c) { return c.get_den() == 1; });
}

inline Polynomial interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  Polynomial r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis = Polynomial::monomial(0, ys[i]);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      Scalar inv = 1 / Scalar(xs[i] - xs[j]);
      basis = basis * Polynomial({Scalar(-xs[j] * inv), inv});
    }
    r = r + basis;
  }
  return r;
}

/// Kronecker's method: a factor of degree `e` of the primitive polynomial f,
/// or the zero polynomial if none exists.
inline Polynomial kronecker_factor(const Polynomial& f, std::size_t e, std::size_t& budget) {
  std::vector<Scalar> xs, vals;
  // Sample points 0, 1, -1, 2, -2, ...
  for (long step = 0; xs.size() < e + 1; ++step) {
    long x = step % 2 == 1 ? (step + 1) / 2 : -(step / 2);
    Scalar v = f(Scalar(x));
    if (sgn(v) == 0) continue;
    xs.push_back(x);
    vals.push_back(v);
  }
  std::vector<std::vector<mpz_class>> divs;
  for (const auto& v : vals) divs.push_back(positive_divisors(v.get_num(), budget));
  std::vector<std::size_t> idx(e + 1, 0);
  std::vector<int> sign(e + 1, 1);
  // Enumerate divisor choices; the first value's sign is fixed to +.
  while (true) {
    if (budget-- == 0) throw Error(ErrorCode::factorization_limit, "factorization: Kronecker search limit reached");
    std::vector<Scalar> ys(e + 1);
    for (std::size_t i = 0; i <= e; ++i) ys[i] = Scalar(divs[i][idx[i]] * sign[i]);
    Polynomial h = interpolate(xs, ys);
    if (h.degree() == e && !h.is_zero() && has_integer_coefficients(h)) {
      auto dm = divmod(f, h);
      if (dm.remainder.is_zero()) return h;
    }
    std::size_t pos = 0;
    while (pos <= e) {
      if (pos > 0 && sign[pos] == 1) {
        sign[pos] = -1;
        break;
      }
      sign[pos] = 1;
      if (++idx[pos] < divs[pos].size()) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos > e) return {};
  }
}

inline void factor_squarefree(const Polynomial& p, std::vector<Polynomial>& out, std::size_t& budget) {
  if (p.degree() == 0) return;
  if (p.degree() == 1) {
    out.push_back(p.monic());
    return;
  }
  Polynomial f = primitive_part(p);
  // Rational roots a/b: a | f(0), b | leading coefficient.
  if (sgn(f.coeff(0)) == 0) {
    out.push_back(Polynomial::monomial(1));
    factor_squarefree(divmod(f, Polynomial::monomial(1)).quotient, out, budget);
    return;
  }
  auto num_divs = positive_divisors(f.coeff(0).get_num(), budget);
  auto den_divs = positive_divisors(f.leading().get_num(), budget);
  for (const auto& a : num_divs)
    for (const auto& b : den_divs)
      for (int s : {1, -1}) {
        Scalar root(a * s, b);
        root.canonicalize();
        if (sgn(f(root)) == 0) {
          Polynomial lin({Scalar(-root), Scalar(1)});
          out.push_back(lin);
          factor_squarefree(divmod(f, lin).quotient, out, budget);
          return;
        }
      }
  for (std::size_t e = 2; 2 * e <= f.degree(); ++e) {
    Polynomial h = kronecker_factor(f, e, budget);
    if (!h.is_zero()) {
      factor_squarefree(h, out, budget);
      factor_squarefree(divmod(f, h).quotient, out, budget);
      return;
    }
  }
  out.push_back(f.monic());
}

}  // namespace detail

/// Distinct monic irreducible factors over Q, sorted by degree.
inline std::vector<Polynomial> irreducible_factors(const Polynomial& p, std::size_t search_budget = 2'000'000) {
  if (p.is_zero()) throw Error(ErrorCode::precondition, "factoring the zero polynomial");
  Polynomial sq = p.degree() == 0 ? p : divmod(p, gcd(p, p.derivative())).quotient;
  std::vector<Polynomial> out;
  detail::factor_squarefree(sq, out, search_budget);
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) { return a.degree() < b.degree(); });
  return out;
}

}  // namespace homlie
