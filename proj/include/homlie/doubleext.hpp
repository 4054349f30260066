#pragma once

// Double extension: from a quadratic Hom-Lie algebra h with twist Theta in its
// centroid, a Lie algebra s and compatible maps (phi, varphi, rho, tau, mu),
// assemble the quadratic Hom-Lie algebra on s + h + s*.
//
// Coordinates of the result are ordered (s-block, h-block, s*-block), with
// s* carrying the basis dual to the basis of s. The coadjoint action is
// ad*(x)(alpha) = -alpha o ad(x).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "homlie/core.hpp"
#include "homlie/report.hpp"
#include "homlie/verify.hpp"

namespace homlie {

/// Dense rank-3 table; at(o, a, b) is the o-th output component of f(a, b).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t out, std::size_t a, std::size_t b) : out_(out), a_(a), b_(b), data_(out * a * b, Scalar(0)) {}

  std::size_t out_dim() const { return out_; }
  std::size_t left_dim() const { return a_; }
  std::size_t right_dim() const { return b_; }

  Scalar& at(std::size_t o, std::size_t a, std::size_t b) { return data_[(a * b_ + b) * out_ + o]; }
  const Scalar& at(std::size_t o, std::size_t a, std::size_t b) const { return data_[(a * b_ + b) * out_ + o]; }

  Vector value(std::size_t a, std::size_t b) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>((a * b_ + b) * out_);
    return Vector(first, first + static_cast<std::ptrdiff_t>(out_));
  }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t out_ = 0, a_ = 0, b_ = 0;
  std::vector<Scalar> data_;
};

struct DoubleExtensionData {
  std::size_t s_dim = 0;
  std::size_t h_dim = 0;
  StructureTensor bracket_s;
  StructureTensor bracket_h;
  Matrix theta;             // h x h
  Matrix gram_h;            // h x h
  Matrix phi;               // h x s; column j is phi(x_j)
  Matrix varphi;            // s x s; entry (k, j) is varphi(x_j)(x_k)
  std::vector<Matrix> rho;  // s matrices, h x h
  std::vector<Matrix> tau;  // s matrices, s x h; entry (k, a) is tau(x_i)(u_a)(x_k)
  StructureTensor mu;       // s x s -> s*; component k of mu(x_i, x_j) is mu(x_i, x_j)(x_k)

  /// All-zero data of the given shape (s and h abelian).
  static DoubleExtensionData zeros(std::size_t s, std::size_t h) {
    DoubleExtensionData d;
    d.s_dim = s;
    d.h_dim = h;
    d.bracket_s = StructureTensor(s);
    d.bracket_h = StructureTensor(h);
    d.theta = Matrix(h, h);
    d.gram_h = Matrix(h, h);
    d.phi = Matrix(h, s);
    d.varphi = Matrix(s, s);
    d.rho.assign(s, Matrix(h, h));
    d.tau.assign(s, Matrix(s, h));
    d.mu = StructureTensor(s, s);
    return d;
  }

  void validate_shapes() const {
    auto same = [](std::size_t a, std::size_t b, const char* what) { require_same_dim(a, b, what); };
    same(s_dim, bracket_s.dim(), "bracket_s dim");
    same(s_dim, bracket_s.out_dim(), "bracket_s codomain");
    same(h_dim, bracket_h.dim(), "bracket_h dim");
    same(h_dim, bracket_h.out_dim(), "bracket_h codomain");
    same(h_dim, theta.rows(), "theta rows");
    same(h_dim, theta.cols(), "theta cols");
    same(h_dim, gram_h.rows(), "gram_h rows");
    same(h_dim, gram_h.cols(), "gram_h cols");
    same(h_dim, phi.rows(), "phi rows");
    same(s_dim, phi.cols(), "phi cols");
    same(s_dim, varphi.rows(), "varphi rows");
    same(s_dim, varphi.cols(), "varphi cols");
    same(s_dim, rho.size(), "rho count");
    same(s_dim, tau.size(), "tau count");
    for (const auto& r : rho) {
      same(h_dim, r.rows(), "rho rows");
      same(h_dim, r.cols(), "rho cols");
    }
    for (const auto& t : tau) {
      same(s_dim, t.rows(), "tau rows");
      same(h_dim, t.cols(), "tau cols");
    }
    same(s_dim, mu.dim(), "mu dim");
    same(s_dim, mu.out_dim(), "mu codomain");
  }

  HomLieAlgebra s_algebra() const { return HomLieAlgebra(bracket_s, Matrix::identity(s_dim)); }
  HomLieAlgebra h_algebra() const { return HomLieAlgebra(bracket_h, theta); }
  QuadraticHomLieAlgebra h_quadratic() const { return QuadraticHomLieAlgebra(h_algebra(), gram_h, unchecked); }

  /// rho(v) for a vector v of s.
  Matrix rho_of(const Vector& v) const {
    Matrix r(h_dim, h_dim);
    for (std::size_t k = 0; k < s_dim; ++k)
      if (sgn(v[k]) != 0) r = r + v[k] * rho[k];
    return r;
  }

  friend bool operator==(const DoubleExtensionData&, const DoubleExtensionData&) = default;
};

/// Matrix of ad*(x_i) on s* in the dual basis: -(ad x_i)^T.
inline Matrix coadjoint(const StructureTensor& bracket_s, std::size_t i) {
  HomLieAlgebra s(bracket_s, Matrix::identity(bracket_s.dim()));
  return Scalar(-1) * adjoint_basis(s, i).transpose();
}

/// L(u)(x) = B_h(u, phi(x)); an s x h matrix with entry (k, a) = L(u_a)(x_k).
inline Matrix derive_L(const DoubleExtensionData& d) {
  d.validate_shapes();
  return d.phi.transpose() * d.gram_h.transpose();
}

/// lambda(x_i, x_j) in h, the unique solution of B_h(lambda(x_i, x_j), u) = -tau(x_i)(u)(x_j).
inline Tensor3 derive_lambda(const DoubleExtensionData& d) {
  d.validate_shapes();
  Tensor3 lam(d.h_dim, d.s_dim, d.s_dim);
  if (d.h_dim == 0) return lam;
  if (!is_nondegenerate(d.gram_h)) throw Error(ErrorCode::degenerate_metric, "derive_lambda: gram_h is singular");
  const Matrix gt = d.gram_h.transpose();
  for (std::size_t i = 0; i < d.s_dim; ++i)
    for (std::size_t j = 0; j < d.s_dim; ++j) {
      Vector rhs(d.h_dim);
      for (std::size_t a = 0; a < d.h_dim; ++a) rhs[a] = -d.tau[i](j, a);
      auto sol = solve(gt, rhs);
      if (!sol) throw Error(ErrorCode::internal, "derive_lambda: inconsistent system");
      for (std::size_t a = 0; a < d.h_dim; ++a) lam.at(a, i, j) = (*sol)[a];
    }
  return lam;
}

/// gamma(u_a, u_b)(x_k) = B_h(rho(x_k)(u_a), u_b).
inline Tensor3 derive_gamma(const DoubleExtensionData& d) {
  d.validate_shapes();
  Tensor3 gam(d.s_dim, d.h_dim, d.h_dim);
  for (std::size_t k = 0; k < d.s_dim; ++k) {
    Matrix m = d.rho[k].transpose() * d.gram_h;
    for (std::size_t a = 0; a < d.h_dim; ++a)
      for (std::size_t b = 0; b < d.h_dim; ++b) gam.at(k, a, b) = m(a, b);
  }
  return gam;
}

using HypothesisReport = AlgebraReport;

namespace detail {

inline void record(AlgebraReport& rep, const std::string& name, std::optional<Witness> w, bool informational = false) {
  rep.add(w ? failed_check(name, std::move(*w), informational) : passed_check(name, informational));
}

inline std::optional<Witness> first_failure(const AlgebraReport& r) {
  for (const auto& c : r.checks)
    if (!c.passed && !c.informational) {
      Witness w = *c.witness;
      w.note = c.name + (w.note.empty() ? "" : ": " + w.note);
      return w;
    }
  return std::nullopt;
}

inline std::optional<Witness> matrix_nonzero(const Matrix& m, std::vector<std::size_t> prefix, const std::string& note) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0) {
        prefix.push_back(c);
        return Witness{std::move(prefix), m.column(c), note};
      }
  return std::nullopt;
}

/// D is a derivation of the bracket on the span of `vecs`: D[u,v] = [Du,v] + [u,Dv].
inline std::optional<Witness> derivation_defect(const HomLieAlgebra& h, const Matrix& D, const std::vector<Vector>& vecs,
                                                std::vector<std::size_t> prefix, const std::string& note) {
  for (std::size_t a = 0; a < vecs.size(); ++a)
    for (std::size_t b = a + 1; b < vecs.size(); ++b) {
      Vector lhs = D * h(vecs[a], vecs[b]);
      Vector rhs = h(D * vecs[a], vecs[b]) + h(vecs[a], D * vecs[b]);
      Vector diff = lhs - rhs;
      if (!is_zero(diff)) {
        auto idx = prefix;
        idx.push_back(a);
        idx.push_back(b);
        return Witness{std::move(idx), std::move(diff), note};
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// Exhaustive check of the hypotheses (A)-(G) of the double extension, plus
/// rho(x) skew for B_h, s a Lie algebra, and h a quadratic Hom-Lie algebra
/// with twist in its centroid. "theta_nilpotent" is informational: the
/// constructor does not need it, the decomposition theory does.
inline HypothesisReport check_hypotheses(const DoubleExtensionData& d) {
  d.validate_shapes();
  HypothesisReport rep;
  const std::size_t s = d.s_dim, h = d.h_dim;
  HomLieAlgebra salg = d.s_algebra();
  HomLieAlgebra halg = d.h_algebra();
  std::vector<Matrix> coad;
  for (std::size_t i = 0; i < s; ++i) coad.push_back(coadjoint(d.bracket_s, i));
  std::vector<Vector> hbasis;
  for (std::size_t a = 0; a < h; ++a) hbasis.push_back(unit_vector(h, a));

  // (A) varphi(x)(y) = varphi(y)(x)
  {
    std::optional<Witness> w;
    for (std::size_t j = 0; j < s && !w; ++j)
      for (std::size_t k = j + 1; k < s && !w; ++k)
        if (d.varphi(k, j) != d.varphi(j, k)) w = Witness{{j, k}, {Scalar(d.varphi(k, j) - d.varphi(j, k))}, ""};
    detail::record(rep, "A", w);
  }

  // (B) Theta o rho(x) = ad_h(phi(x)) = rho(x) o Theta, a derivation of h
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i) {
      Matrix left = d.theta * d.rho[i];
      Matrix ad = adjoint(halg, d.phi.column(i));
      w = detail::matrix_nonzero(left - ad, {i}, "Theta rho(x) != ad_h(phi(x))");
      if (!w) w = detail::matrix_nonzero(d.rho[i] * d.theta - ad, {i}, "rho(x) Theta != ad_h(phi(x))");
      if (!w) w = detail::derivation_defect(halg, left, hbasis, {i}, "Theta rho(x) is not a derivation of h");
    }
    detail::record(rep, "B", w);
  }

  // (C) phi([x,y]_s) = rho(x)(phi(y))
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j) {
        Vector diff = d.phi * d.bracket_s.bracket(i, j) - d.rho[i] * d.phi.column(j);
        if (!is_zero(diff)) w = Witness{{i, j}, std::move(diff), ""};
      }
    detail::record(rep, "C", w);
  }

  // (D) varphi([x,y]_s) = ad*(x)(varphi(y))
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j) {
        Vector diff = d.varphi * d.bracket_s.bracket(i, j) - coad[i] * d.varphi.column(j);
        if (!is_zero(diff)) w = Witness{{i, j}, std::move(diff), ""};
      }
    detail::record(rep, "D", w);
  }

  // (E) rho' = rho|Im(Theta) is a representation of s by derivations of Im(Theta)
  {
    std::optional<Witness> w;
    Subspace im = image(d.theta);
    std::vector<Vector> imb;
    for (std::size_t r = 0; r < im.dim(); ++r) imb.push_back(im.basis_vector(r));
    for (std::size_t i = 0; i < s && !w; ++i) {
      for (std::size_t r = 0; r < imb.size() && !w; ++r) {
        Vector img = d.rho[i] * imb[r];
        if (!im.contains(img)) w = Witness{{i, r}, std::move(img), "rho(x) does not preserve Im(Theta)"};
      }
      if (!w) w = detail::derivation_defect(halg, d.rho[i], imb, {i}, "rho'(x) is not a derivation of Im(Theta)");
    }
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = i + 1; j < s && !w; ++j) {
        Matrix lhs = d.rho_of(d.bracket_s.bracket(i, j));
        Matrix rhs = d.rho[i] * d.rho[j] - d.rho[j] * d.rho[i];
        for (std::size_t r = 0; r < imb.size() && !w; ++r) {
          Vector diff = lhs * imb[r] - rhs * imb[r];
          if (!is_zero(diff)) w = Witness{{i, j, r}, std::move(diff), "rho'([x,y]) != [rho'(x), rho'(y)]"};
        }
      }
    detail::record(rep, "E", w);
  }

  // (F) tau(x) o Theta = tau(x) o phi = 0 and tau(x)(u)(x) = 0
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i) {
      w = detail::matrix_nonzero(d.tau[i] * d.theta, {i}, "tau(x) o Theta != 0");
      if (!w) w = detail::matrix_nonzero(d.tau[i] * d.phi, {i}, "tau(x) o phi != 0");
    }
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = i; j < s && !w; ++j)
        for (std::size_t a = 0; a < h && !w; ++a) {
          Scalar v = d.tau[i](j, a) + d.tau[j](i, a);
          if (sgn(v) != 0) w = Witness{{i, j, a}, {v}, "tau(x)(u)(y) + tau(y)(u)(x) != 0"};
        }
    detail::record(rep, "F", w);
  }

  // (G) mu(x,y)(z) = mu(y,z)(x)
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j)
        for (std::size_t k = 0; k < s && !w; ++k) {
          Scalar v = d.mu.coefficient(i, j, k) - d.mu.coefficient(j, k, i);
          if (sgn(v) != 0) w = Witness{{i, j, k}, {v}, "mu(x,y)(z) != mu(y,z)(x)"};
        }
    detail::record(rep, "G", w);
  }

  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      w = detail::matrix_nonzero(d.rho[i].transpose() * d.gram_h + d.gram_h * d.rho[i], {i},
                                 "B_h(rho(x)u, v) != -B_h(u, rho(x)v)");
    detail::record(rep, "rho_skew", w);
  }

  detail::record(rep, "s_is_lie", detail::first_failure(check_classical_jacobi(salg)));

  {
    AlgebraReport hr;
    hr.merge(check_homlie_jacobi(halg));
    hr.merge(check_centroid(halg));
    hr.merge(check_metric(d.h_quadratic()));
    detail::record(rep, "h_is_quadratic_homlie", detail::first_failure(hr));
  }

  detail::record(rep, "theta_nilpotent", twist_nilpotency(d.theta).witness, true);
  return rep;
}

/// Raised by build() when a hypothesis fails; carries the full report.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(HypothesisReport report)
      : Error(ErrorCode::hypothesis_rejected, message_for(report)), report_(std::move(report)) {}

  const HypothesisReport& report() const { return report_; }

 private:
  static std::string message_for(const HypothesisReport& r) {
    std::string m = "hypotheses failed:";
    for (const auto& f : r.failures()) m += " " + f;
    return m;
  }

  HypothesisReport report_;
};

/// Assembles bracket, twist and metric on s + h + s* without checking hypotheses.
inline QuadraticHomLieAlgebra assemble(const DoubleExtensionData& d) {
  d.validate_shapes();
  const std::size_t s = d.s_dim, h = d.h_dim;
  const std::size_t oh = s, od = s + h, n = 2 * s + h;
  Tensor3 lam = derive_lambda(d);
  Tensor3 gam = derive_gamma(d);
  Matrix L = derive_L(d);

  StructureTensor br(n);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) {
      for (const auto& t : d.bracket_s.terms(i, j)) br.add(i, j, t.index, t.coeff);
      for (std::size_t a = 0; a < h; ++a) br.add(i, j, oh + a, lam.at(a, i, j));
      for (const auto& t : d.mu.terms(i, j)) br.add(i, j, od + t.index, t.coeff);
    }
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t a = 0; a < h; ++a) {
      for (std::size_t b = 0; b < h; ++b) br.add(i, oh + a, oh + b, d.rho[i](b, a));
      for (std::size_t k = 0; k < s; ++k) br.add(i, oh + a, od + k, d.tau[i](k, a));
    }
    Matrix coad = coadjoint(d.bracket_s, i);
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t m = 0; m < s; ++m) br.add(i, od + k, od + m, coad(m, k));
  }
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = a + 1; b < h; ++b) {
      for (const auto& t : d.bracket_h.terms(a, b)) br.add(oh + a, oh + b, oh + t.index, t.coeff);
      for (std::size_t k = 0; k < s; ++k) br.add(oh + a, oh + b, od + k, gam.at(k, a, b));
    }

  Matrix tw(n, n);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t a = 0; a < h; ++a) tw(oh + a, j) = d.phi(a, j);
    for (std::size_t k = 0; k < s; ++k) tw(od + k, j) = d.varphi(k, j);
  }
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t b = 0; b < h; ++b) tw(oh + b, oh + a) = d.theta(b, a);
    for (std::size_t k = 0; k < s; ++k) tw(od + k, oh + a) = L(k, a);
  }

  Matrix gram(n, n);
  for (std::size_t j = 0; j < s; ++j) {
    gram(j, od + j) = 1;
    gram(od + j, j) = 1;
  }
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = 0; b < h; ++b) gram(oh + a, oh + b) = d.gram_h(a, b);

  return QuadraticHomLieAlgebra(HomLieAlgebra(std::move(br), std::move(tw)), std::move(gram), unchecked);
}

/// Checks every hypothesis, then assembles. Throws HypothesisError on failure.
inline QuadraticHomLieAlgebra build(const DoubleExtensionData& d) {
  HypothesisReport rep = check_hypotheses(d);
  if (!rep.passed()) throw HypothesisError(std::move(rep));
  return assemble(d);
}

struct Certified {
  QuadraticHomLieAlgebra algebra;
  AlgebraReport report;
};

inline Certified build_and_certify(const DoubleExtensionData& d) {
  QuadraticHomLieAlgebra q = build(d);
  AlgebraReport rep = full_report(q);
  return {std::move(q), std::move(rep)};
}

}  // namespace homlie
