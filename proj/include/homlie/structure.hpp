#pragma once

// Structure theory of quadratic Hom-Lie algebras with nilpotent twist in the
// centroid: Fitting split, a maximal ideal over Ker(T)+Im(T), simplicity
// certificates, and the extraction of double-extension data.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homlie/core.hpp"
#include "homlie/doubleext.hpp"
#include "homlie/poly.hpp"
#include "homlie/report.hpp"
#include "homlie/verify.hpp"

namespace homlie {

/// Matrix with entries C(r, c) = v[r * n + c].
inline Matrix unflatten(const Vector& v, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

/// All C with C[e_i, e_j] = [C e_i, e_j] = [e_i, C e_j], as a subspace of the
/// flattened n*n coordinate space (entry (r, c) at index r * n + c).
inline Subspace centroid_space(const HomLieAlgebra& g) {
  const std::size_t n = g.dim();
  auto br = detail::basis_brackets(g);
  EchelonBuilder eqs(n * n);
  // The left identity over all ordered pairs implies the right one by skew-symmetry.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        Vector row = zero_vector(n * n);
        bool any = false;
        for (std::size_t r = 0; r < n; ++r) {
          if (sgn(br[i * n + j][r]) != 0) {
            row[m * n + r] += br[i * n + j][r];
            any = true;
          }
          if (sgn(br[r * n + j][m]) != 0) {
            row[r * n + i] -= br[r * n + j][m];
            any = true;
          }
        }
        if (any) eqs.insert(std::move(row));
      }
  return kernel(eqs.dim() == 0 ? Matrix(0, n * n) : Matrix::from_rows(eqs.rows(), n * n));
}

struct SimplicityCertificate {
  bool jacobi = false;
  bool killing_nondegenerate = false;
  std::size_t centroid_dim = 0;

  bool simple() const { return jacobi && killing_nondegenerate && centroid_dim == 1; }
  explicit operator bool() const { return simple(); }
};

/// Classical Jacobi, nondegenerate Killing form and a one-dimensional centroid.
inline SimplicityCertificate certify_simple(const HomLieAlgebra& g) {
  SimplicityCertificate c;
  c.jacobi = check_classical_jacobi(g).passed();
  c.killing_nondegenerate = g.dim() > 0 && is_nondegenerate(killing(g));
  c.centroid_dim = centroid_space(g).dim();
  return c;
}

struct FittingSplit {
  std::size_t ell = 0;
  Subspace image;   // Im(T^ell)
  Subspace kernel;  // Ker(T^ell)
  QuadraticHomLieAlgebra lie_part;
  QuadraticHomLieAlgebra nilpotent_part;
  Matrix lie_embedding;        // columns: canonical basis of Im(T^ell)
  Matrix nilpotent_embedding;  // columns: canonical basis of Ker(T^ell)
  bool orthogonal = false;
};

inline FittingSplit fitting(const QuadraticHomLieAlgebra& q) {
  const HomLieAlgebra& g = q.algebra();
  if (!check_centroid(g).passed()) throw Error(ErrorCode::precondition, "fitting: twist is not in the centroid");
  const std::size_t n = g.dim();
  std::size_t ell = 0;
  Matrix p = Matrix::identity(n);
  std::size_t r = n;
  while (true) {
    Matrix next = p * g.twist();
    std::size_t rn = rank(next);
    if (rn == r) break;
    p = std::move(next);
    r = rn;
    ++ell;
  }
  Subspace im = image(p);
  Subspace ker = kernel(p);
  Matrix cross = im.basis() * q.gram() * ker.basis().transpose();
  return FittingSplit{ell,
                      im,
                      ker,
                      QuadraticHomLieAlgebra(restrict_to(g, im), restrict_form(q.gram(), im), unchecked),
                      QuadraticHomLieAlgebra(restrict_to(g, ker), restrict_form(q.gram(), ker), unchecked),
                      im.basis().transpose(),
                      ker.basis().transpose(),
                      cross.is_zero()};
}

namespace detail {

inline Subspace pull_back(const Quotient& q, const Subspace& ideal, const Subspace& sub) {
  EchelonBuilder b(ideal.ambient_dim());
  for (std::size_t r = 0; r < ideal.dim(); ++r) b.insert(ideal.basis_vector(r));
  for (std::size_t r = 0; r < sub.dim(); ++r) b.insert(q.lift(sub.basis_vector(r)));
  return Subspace::from_builder(b);
}

/// A proper nonzero ideal ker(p(c)) of a semisimple Lie algebra, from a centroid
/// element c whose minimal polynomial is not irreducible.
inline std::optional<Subspace> centroid_split(const HomLieAlgebra& g, const Subspace& cent) {
  const std::size_t n = g.dim();
  std::vector<Matrix> elems;
  for (std::size_t r = 0; r < cent.dim(); ++r) elems.push_back(unflatten(cent.basis_vector(r), n));
  std::vector<Matrix> candidates = elems;
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = a + 1; b < elems.size(); ++b)
      for (long k : {1L, 2L, -1L, 3L}) candidates.push_back(elems[a] + Scalar(k) * elems[b]);
  for (const auto& c : candidates) {
    Polynomial mp = minimal_polynomial(c);
    if (mp.degree() <= 1) continue;
    auto factors = irreducible_factors(mp);
    if (factors.size() == 1 && factors[0].degree() == mp.degree()) continue;
    Subspace k = kernel(evaluate(factors[0], c));
    if (!k.is_zero() && !k.is_full()) return k;
  }
  return std::nullopt;
}

}  // namespace detail

/// A proper ideal containing Ker(T) + Im(T) with certified simple quotient.
/// The chain of enlargements is deterministic; no canonicity is claimed.
inline Subspace maximal_ideal(const QuadraticHomLieAlgebra& q) {
  const HomLieAlgebra& g = q.algebra();
  const std::size_t n = g.dim();
  if (!twist_nilpotency(g.twist()).nilpotent) throw Error(ErrorCode::precondition, "maximal_ideal: twist is not nilpotent");
  if (!check_centroid(g).passed()) throw Error(ErrorCode::precondition, "maximal_ideal: twist is not in the centroid");
  Subspace j = ideal_closure(g, subspace_sum(kernel(g.twist()), image(g.twist())));
  for (std::size_t guard = 0; guard <= n; ++guard) {
    if (j.is_full()) throw Error(ErrorCode::no_simple_quotient, "maximal_ideal: no proper simple quotient");
    Quotient quo = quotient(g, j);
    const HomLieAlgebra& s = quo.algebra;
    if (!check_classical_jacobi(s).passed())
      throw Error(ErrorCode::internal, "maximal_ideal: quotient bracket fails the Jacobi identity");
    Subspace rad = kernel(killing(s));
    if (rad.is_full()) throw Error(ErrorCode::no_simple_quotient, "maximal_ideal: no proper simple quotient");
    if (!rad.is_zero()) {
      j = detail::pull_back(quo, j, rad);
      continue;
    }
    Subspace cent = centroid_space(s);
    if (cent.dim() == 1) return j;
    auto part = detail::centroid_split(s, cent);
    if (!part)
      throw Error(ErrorCode::factorization_limit,
                  "maximal_ideal: centroid of the semisimple quotient could not be split");
    j = detail::pull_back(quo, j, *part);
  }
  throw Error(ErrorCode::internal, "maximal_ideal: enlargement did not terminate");
}

/// Every component of g = s + h + Iperp. Maps into Iperp (mu, tau, gamma,
/// varphi, L) are stored after identification with s* through xi, in the
/// dual basis of the chosen basis of s. sigma is stored in the canonical
/// coordinates of Iperp.
struct DecompositionData {
  Subspace maximal_ideal;
  Subspace iso_radical;
  Subspace h_space;
  Subspace s_space;
  Matrix s_basis;     // n x s, isotropic columns x_j
  Matrix h_basis;     // n x h
  Matrix dual_basis;  // n x s, columns alpha_k in Iperp with B(x_j, alpha_k) = delta_jk
  Matrix xi;          // s x s; column l is xi(l-th canonical vector of Iperp) in s*
  StructureTensor bracket_s;
  StructureTensor bracket_h;
  Matrix theta;
  Matrix gram_h;
  Matrix phi;
  Matrix varphi;
  std::vector<Matrix> rho;
  std::vector<Matrix> tau;
  std::vector<Matrix> sigma;
  Tensor3 gamma;   // h x h -> s*
  Tensor3 lambda;  // s x s -> h
  StructureTensor mu;
  Matrix L;        // s x h

  std::size_t s_dim() const { return s_basis.cols(); }
  std::size_t h_dim() const { return h_basis.cols(); }

  /// Columns (x_1..x_s, u_1..u_h, alpha_1..alpha_s).
  Matrix assembled_basis() const {
    const std::size_t n = s_basis.rows(), s = s_dim(), h = h_dim();
    Matrix p(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < s; ++j) {
        p(r, j) = s_basis(r, j);
        p(r, s + h + j) = dual_basis(r, j);
      }
      for (std::size_t a = 0; a < h; ++a) p(r, s + a) = h_basis(r, a);
    }
    return p;
  }

  DoubleExtensionData to_extension_data() const {
    DoubleExtensionData d;
    d.s_dim = s_dim();
    d.h_dim = h_dim();
    d.bracket_s = bracket_s;
    d.bracket_h = bracket_h;
    d.theta = theta;
    d.gram_h = gram_h;
    d.phi = phi;
    d.varphi = varphi;
    d.rho = rho;
    d.tau = tau;
    d.mu = mu;
    return d;
  }
};

namespace detail {

inline Matrix columns_of(const std::vector<Vector>& cols, std::size_t n) { return Matrix::from_columns(cols, n); }

}  // namespace detail

inline DecompositionData decompose(const QuadraticHomLieAlgebra& q) {
  const std::size_t n = q.dim();
  const Matrix& G = q.gram();
  if (!G.is_symmetric() || !is_nondegenerate(G)) throw Error(ErrorCode::degenerate_metric, "decompose: metric is degenerate");
  if (!is_quadratic_homlie_with_centroid_twist(q))
    throw Error(ErrorCode::precondition, "decompose: input is not a quadratic Hom-Lie algebra with twist in the centroid");

  Subspace ideal = maximal_ideal(q);
  Subspace iperp = orthogonal_complement(ideal, G);
  if (!iperp.is_subspace_of(ideal))
    throw Error(ErrorCode::decomposable, "decompose: orthogonal of the maximal ideal is not contained in it");
  const std::size_t s = iperp.dim();
  const std::size_t h = ideal.dim() - s;

  // h: canonical rows of the ideal independent of Iperp.
  EchelonBuilder acc(n);
  for (std::size_t r = 0; r < s; ++r) acc.insert(iperp.basis_vector(r));
  std::vector<Vector> hvec;
  for (std::size_t r = 0; r < ideal.dim(); ++r)
    if (acc.insert(ideal.basis_vector(r))) hvec.push_back(ideal.basis_vector(r));
  Subspace hspace = Subspace::span(n, hvec);
  Matrix hb = detail::columns_of(hvec, n);
  Matrix gram_h = hb.transpose() * G * hb;
  if (h > 0 && !is_nondegenerate(gram_h)) throw Error(ErrorCode::degenerate_metric, "decompose: metric is degenerate on h");

  // s0: canonical rows of h-perp independent of Iperp, paired against Iperp.
  Subspace hperp = orthogonal_complement(hspace, G);
  EchelonBuilder acc2(n);
  for (std::size_t r = 0; r < s; ++r) acc2.insert(iperp.basis_vector(r));
  std::vector<Vector> s0;
  for (std::size_t r = 0; r < hperp.dim(); ++r)
    if (acc2.insert(hperp.basis_vector(r))) s0.push_back(hperp.basis_vector(r));
  if (s0.size() != s) throw Error(ErrorCode::internal, "decompose: complement of h + Iperp has the wrong dimension");

  Matrix pairing(s, s);  // B(s0_j, ip_l)
  std::vector<Vector> ip;
  for (std::size_t l = 0; l < s; ++l) ip.push_back(iperp.basis_vector(l));
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t l = 0; l < s; ++l) pairing(j, l) = bilinear(G, s0[j], ip[l]);
  auto pinv = inverse(pairing);
  if (!pinv) throw Error(ErrorCode::internal, "decompose: pairing with Iperp is singular");
  Matrix alpha = detail::columns_of(ip, n) * *pinv;

  // Witt-style isotropization: x_j = s0_j - 1/2 sum_k B(s0_j, s0_k) alpha_k.
  std::vector<Vector> xs;
  for (std::size_t j = 0; j < s; ++j) {
    Vector x = s0[j];
    for (std::size_t k = 0; k < s; ++k) {
      Scalar c = bilinear(G, s0[j], s0[k]) / 2;
      if (sgn(c) != 0) axpy(-c, alpha.column(k), x);
    }
    xs.push_back(std::move(x));
  }

  DecompositionData d;
  d.maximal_ideal = ideal;
  d.iso_radical = iperp;
  d.h_space = hspace;
  d.s_space = Subspace::span(n, xs);
  d.s_basis = detail::columns_of(xs, n);
  d.h_basis = hb;
  d.dual_basis = alpha;
  d.xi = pairing;
  d.gram_h = gram_h;

  QuadraticHomLieAlgebra qp = change_basis(q, d.assembled_basis());
  const HomLieAlgebra& gp = qp.algebra();
  const std::size_t oh = s, od = s + h;

  d.bracket_s = StructureTensor(s);
  d.mu = StructureTensor(s, s);
  d.lambda = Tensor3(h, s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      Vector v = gp.basis_bracket(i, j);
      for (std::size_t a = 0; a < h; ++a) d.lambda.at(a, i, j) = v[oh + a];
      if (i >= j) continue;
      for (std::size_t k = 0; k < s; ++k) {
        d.bracket_s.add(i, j, k, v[k]);
        d.mu.add(i, j, k, v[od + k]);
      }
    }

  d.rho.assign(s, Matrix(h, h));
  d.tau.assign(s, Matrix(s, h));
  d.sigma.assign(s, Matrix(s, s));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t a = 0; a < h; ++a) {
      Vector v = gp.basis_bracket(i, oh + a);
      for (std::size_t b = 0; b < h; ++b) d.rho[i](b, a) = v[oh + b];
      for (std::size_t k = 0; k < s; ++k) d.tau[i](k, a) = v[od + k];
    }
    Matrix sig_xi(s, s);
    for (std::size_t k = 0; k < s; ++k) {
      Vector v = gp.basis_bracket(i, od + k);
      for (std::size_t m = 0; m < s; ++m) sig_xi(m, k) = v[od + m];
    }
    d.sigma[i] = *pinv * sig_xi * pairing;
  }

  d.bracket_h = StructureTensor(h);
  d.gamma = Tensor3(s, h, h);
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = 0; b < h; ++b) {
      Vector v = gp.basis_bracket(oh + a, oh + b);
      for (std::size_t k = 0; k < s; ++k) d.gamma.at(k, a, b) = v[od + k];
      if (a < b)
        for (std::size_t c = 0; c < h; ++c) d.bracket_h.add(a, b, c, v[oh + c]);
    }

  const Matrix& tp = gp.twist();
  d.phi = Matrix(h, s);
  d.varphi = Matrix(s, s);
  d.theta = Matrix(h, h);
  d.L = Matrix(s, h);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t a = 0; a < h; ++a) d.phi(a, j) = tp(oh + a, j);
    for (std::size_t k = 0; k < s; ++k) d.varphi(k, j) = tp(od + k, j);
  }
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t b = 0; b < h; ++b) d.theta(b, a) = tp(oh + b, oh + a);
    for (std::size_t k = 0; k < s; ++k) d.L(k, a) = tp(od + k, oh + a);
  }
  return d;
}

namespace detail {

inline std::optional<Witness> vector_nonzero(const Vector& v, std::vector<std::size_t> idx, const std::string& note) {
  if (is_zero(v)) return std::nullopt;
  return Witness{std::move(idx), v, note};
}

}  // namespace detail

/// Every identity relating the extracted maps to each other and to q,
/// checked exhaustively. Failures are reported, never thrown.
inline AlgebraReport validate_decomposition(const DecompositionData& d, const QuadraticHomLieAlgebra& q) {
  AlgebraReport rep;
  const std::size_t n = q.dim(), s = d.s_dim(), h = d.h_dim();
  const std::size_t oh = s, od = s + h;
  const Matrix& G = q.gram();
  auto record = [&](const std::string& name, std::optional<Witness> w) { detail::record(rep, name, std::move(w)); };

  // Subspaces.
  Matrix P = d.assembled_basis();
  auto Pinv = inverse(P);
  record("direct_sum", Pinv ? std::nullopt : std::optional<Witness>(Witness{{}, {}, "s + h + Iperp is not the whole space"}));
  if (!Pinv) return rep;
  record("iperp_is_orthogonal_of_ideal",
         orthogonal_complement(d.maximal_ideal, G) == d.iso_radical
             ? std::nullopt
             : std::optional<Witness>(Witness{{}, {}, "Iperp differs from the orthogonal of the ideal"}));
  {
    std::optional<Witness> w;
    for (std::size_t r = 0; r < d.iso_radical.dim() && !w; ++r)
      w = detail::vector_nonzero(q.twist() * d.iso_radical.basis_vector(r), {r}, "T(alpha) != 0");
    record("iperp_in_twist_kernel", w);
  }
  record("iperp_dim_equals_s_dim",
         d.iso_radical.dim() == s ? std::nullopt
                                  : std::optional<Witness>(Witness{{d.iso_radical.dim(), s}, {}, "dim Iperp != dim s"}));
  Matrix gp = P.transpose() * G * P;
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j)
        if (sgn(gp(i, j)) != 0) w = Witness{{i, j}, {gp(i, j)}, "B(x_i, x_j) != 0"};
    record("s_isotropic", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t a = 0; a < h && !w; ++a)
      for (std::size_t c = 0; c < n && !w; ++c)
        if ((c < oh || c >= od) && sgn(gp(oh + a, c)) != 0) w = Witness{{a, c}, {gp(oh + a, c)}, "B(h, s + Iperp) != 0"};
    record("h_orthogonal", w);
  }

  // Bracket, twist and metric in block form.
  QuadraticHomLieAlgebra qp = change_basis(q, P);
  DoubleExtensionData ext = d.to_extension_data();
  ext.validate_shapes();
  std::vector<Matrix> coad;
  for (std::size_t i = 0; i < s; ++i) coad.push_back(coadjoint(d.bracket_s, i));
  std::vector<Matrix> sigma_xi;
  auto xi_inv = inverse(d.xi);
  record("xi_bijective", xi_inv ? std::nullopt : std::optional<Witness>(Witness{{}, {}, "xi is singular"}));
  if (!xi_inv) return rep;
  for (std::size_t i = 0; i < s; ++i) sigma_xi.push_back(d.xi * d.sigma[i] * *xi_inv);

  {
    // Expected bracket assembled from the maps, compared with q in the basis P.
    StructureTensor br(n);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) {
        for (std::size_t k = 0; k < s; ++k) br.add(i, j, k, d.bracket_s.coefficient(i, j, k));
        for (std::size_t a = 0; a < h; ++a) br.add(i, j, oh + a, d.lambda.at(a, i, j));
        for (std::size_t k = 0; k < s; ++k) br.add(i, j, od + k, d.mu.coefficient(i, j, k));
      }
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t a = 0; a < h; ++a) {
        for (std::size_t b = 0; b < h; ++b) br.add(i, oh + a, oh + b, d.rho[i](b, a));
        for (std::size_t k = 0; k < s; ++k) br.add(i, oh + a, od + k, d.tau[i](k, a));
      }
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t m = 0; m < s; ++m) br.add(i, od + k, od + m, sigma_xi[i](m, k));
    }
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = a + 1; b < h; ++b) {
        for (std::size_t c = 0; c < h; ++c) br.add(oh + a, oh + b, oh + c, d.bracket_h.coefficient(a, b, c));
        for (std::size_t k = 0; k < s; ++k) br.add(oh + a, oh + b, od + k, d.gamma.at(k, a, b));
      }
    std::optional<Witness> w;
    for (std::size_t i = 0; i < n && !w; ++i)
      for (std::size_t j = i + 1; j < n && !w; ++j)
        w = detail::vector_nonzero(qp.algebra().basis_bracket(i, j) - br.bracket(i, j), {i, j},
                                   "bracket differs from its block description");
    record("bracket_blocks", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t a = 0; a < h && !w; ++a)
      for (std::size_t k = 0; k < s && !w; ++k)
        w = detail::vector_nonzero(qp.algebra().basis_bracket(oh + a, od + k), {a, k}, "[u, alpha] != 0");
    record("h_iperp_commute", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t k = 0; k < s && !w; ++k)
      for (std::size_t m = k + 1; m < s && !w; ++m)
        w = detail::vector_nonzero(qp.algebra().basis_bracket(od + k, od + m), {k, m}, "[alpha, beta] != 0");
    record("iperp_abelian", w);
  }
  {
    Matrix tw(n, n);
    for (std::size_t j = 0; j < s; ++j) {
      for (std::size_t a = 0; a < h; ++a) tw(oh + a, j) = d.phi(a, j);
      for (std::size_t k = 0; k < s; ++k) tw(od + k, j) = d.varphi(k, j);
    }
    for (std::size_t a = 0; a < h; ++a) {
      for (std::size_t b = 0; b < h; ++b) tw(oh + b, oh + a) = d.theta(b, a);
      for (std::size_t k = 0; k < s; ++k) tw(od + k, oh + a) = d.L(k, a);
    }
    record("twist_blocks", detail::matrix_nonzero(qp.twist() - tw, {}, "twist differs from its block description"));
  }
  {
    Matrix gb(n, n);
    for (std::size_t j = 0; j < s; ++j) gb(j, od + j) = gb(od + j, j) = 1;
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = 0; b < h; ++b) gb(oh + a, oh + b) = d.gram_h(a, b);
    record("metric_blocks", detail::matrix_nonzero(gp - gb, {}, "metric differs from its block description"));
  }

  // Identities among the component maps.
  {
    std::optional<Witness> w;
    for (std::size_t j = 0; j < s && !w; ++j)
      for (std::size_t k = j + 1; k < s && !w; ++k)
        if (d.varphi(k, j) != d.varphi(j, k)) w = Witness{{j, k}, {Scalar(d.varphi(k, j) - d.varphi(j, k))}, ""};
    record("varphi_symmetric", w);
  }
  record("L_from_phi", detail::matrix_nonzero(d.L - derive_L(ext), {}, "L(u)(x) != B_h(u, phi(x))"));
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j)
        for (std::size_t k = 0; k < s && !w; ++k) {
          Scalar v = d.mu.coefficient(i, j, k) - d.mu.coefficient(j, k, i);
          if (sgn(v) != 0) w = Witness{{i, j, k}, {v}, "mu(x,y)(z) != mu(y,z)(x)"};
        }
    record("mu_cyclic", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j) {
        Vector lam = d.lambda.value(i, j);
        for (std::size_t a = 0; a < h && !w; ++a) {
          Scalar v = d.tau[i](j, a) + bilinear(d.gram_h, lam, unit_vector(h, a));
          if (sgn(v) != 0) w = Witness{{i, j, a}, {v}, "tau(x)(u)(y) != -B_h(lambda(x,y), u)"};
        }
      }
    record("tau_lambda_pairing", w);
  }
  {
    Tensor3 gam = derive_gamma(ext);
    std::optional<Witness> w;
    for (std::size_t a = 0; a < h && !w; ++a)
      for (std::size_t b = 0; b < h && !w; ++b)
        w = detail::vector_nonzero(d.gamma.value(a, b) - gam.value(a, b), {a, b}, "gamma(u,v)(x) != B_h(rho(x)u, v)");
    record("gamma_rho_pairing", w);
  }

  HomLieAlgebra halg = ext.h_algebra();
  auto gamma_of = [&](const Vector& u, const Vector& v) {
    Vector out = zero_vector(s);
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = 0; b < h; ++b)
        if (sgn(u[a]) != 0 && sgn(v[b]) != 0) axpy(u[a] * v[b], d.gamma.value(a, b), out);
    return out;
  };
  {
    std::optional<Witness> w;
    for (std::size_t a = 0; a < h && !w; ++a)
      for (std::size_t b = 0; b < h && !w; ++b) {
        Vector br = halg(unit_vector(h, a), unit_vector(h, b));
        w = detail::vector_nonzero(d.theta * br - halg(d.theta.column(a), unit_vector(h, b)), {a, b},
                                   "Theta[u,v]_h != [Theta u, v]_h");
        if (!w)
          w = detail::vector_nonzero(d.L * br - gamma_of(d.theta.column(a), unit_vector(h, b)), {a, b},
                                     "L([u,v]_h) != gamma(Theta u, v)");
      }
    record("theta_L_centroid_h", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t a = 0; a < h && !w; ++a) {
        Vector u = unit_vector(h, a);
        Vector lhs = d.L * (d.rho[i] * u);
        w = detail::vector_nonzero(lhs - gamma_of(d.phi.column(i), u), {i, a}, "L(rho(x)u) != gamma(phi(x), u)");
        if (!w) w = detail::vector_nonzero(lhs - sigma_xi[i] * (d.L * u), {i, a}, "L(rho(x)u) != sigma(x)(L(u))");
      }
    record("L_rho_gamma_sigma", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j) {
        Vector lhs = d.phi * d.bracket_s.bracket(i, j);
        w = detail::vector_nonzero(lhs + d.rho[j] * d.phi.column(i), {i, j}, "phi([x,y]) != -rho(y)(phi(x))");
        if (!w)
          w = detail::vector_nonzero(d.varphi * d.bracket_s.bracket(i, j) - sigma_xi[i] * d.varphi.column(j), {i, j},
                                     "varphi([x,y]) != sigma(x)(varphi(y))");
      }
    record("phi_varphi_equivariance", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j) {
        Matrix comm = d.rho[i] * d.rho[j] - d.rho[j] * d.rho[i];
        Matrix defect = ext.rho_of(d.bracket_s.bracket(i, j)) - comm;
        w = detail::matrix_nonzero(defect * d.theta, {i, j}, "rho([x,y]) Theta != [rho(x), rho(y)] Theta");
        if (!w) w = detail::matrix_nonzero(d.L * defect, {i, j}, "rho([x,y]) - [rho(x), rho(y)] not in Ker(L)");
      }
    record("rho_bracket_compatibility", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i) {
      Matrix adphi = adjoint(halg, d.phi.column(i));
      for (std::size_t a = 0; a < h && !w; ++a)
        for (std::size_t b = 0; b < h && !w; ++b) {
          Vector u = unit_vector(h, a), v = unit_vector(h, b);
          Vector der = adphi * halg(u, v) - halg(adphi * u, v) - halg(u, adphi * v);
          w = detail::vector_nonzero(der, {i, a, b}, "ad_h(phi(x)) is not a derivation");
          Vector rd = d.rho[i] * halg(u, v) - halg(d.rho[i] * u, v) - halg(u, d.rho[i] * v);
          if (!w) w = detail::vector_nonzero(d.L * rd, {i, a, b}, "rho(x) derivation defect not in Ker(L)");
          if (!w) w = detail::vector_nonzero(d.theta * rd, {i, a, b}, "rho(x) derivation defect not in Ker(Theta)");
        }
    }
    record("rho_derivation_defect", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      w = detail::matrix_nonzero(d.xi * d.sigma[i] - coad[i] * d.xi, {i}, "xi sigma(x) != ad*(x) xi");
    record("xi_intertwines_coadjoint", w);
  }
  {
    std::optional<Witness> w;
    for (std::size_t i = 0; i < s && !w; ++i)
      for (std::size_t j = 0; j < s && !w; ++j) {
        Vector lam = d.lambda.value(i, j);
        w = detail::vector_nonzero(d.theta * lam, {i, j}, "Theta(lambda(x,y)) != 0");
        if (!w) w = detail::vector_nonzero(d.L * lam, {i, j}, "L(lambda(x,y)) != 0");
      }
    record("twist_kills_lambda", w);
  }

  // Hypotheses of the constructor, including tau o Theta = tau o phi = 0
  // and rho' a representation by derivations of Im(Theta).
  rep.merge(check_hypotheses(ext), "hypothesis.");
  record("theta_nilpotent", twist_nilpotency(d.theta).witness);
  record("s_simple", certify_simple(ext.s_algebra())
                         ? std::nullopt
                         : std::optional<Witness>(Witness{{}, {}, "s is not certified simple"}));
  return rep;
}

}  // namespace homlie
