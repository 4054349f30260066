#pragma once

// Exhaustive, exact checks of the Hom-Lie axioms over basis tuples. Every
// failed check carries the offending indices and the nonzero defect.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homlie/core.hpp"
#include "homlie/report.hpp"

namespace homlie {

namespace detail {

/// Dense [e_i, e_j] for every ordered pair, indexed i * n + j.
inline std::vector<Vector> basis_brackets(const HomLieAlgebra& g) {
  const std::size_t n = g.dim();
  std::vector<Vector> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = g.basis_bracket(i, j);
  return out;
}

/// Cyclic sum [A e_i, [e_j, e_k]] + [A e_j, [e_k, e_i]] + [A e_k, [e_i, e_j]].
inline Vector twisted_cyclic_sum(const HomLieAlgebra& g, const std::vector<Vector>& br,
                                 const std::vector<Vector>& outer, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = g.dim();
  Vector r = g(outer[i], br[j * n + k]);
  Vector b = g(outer[j], br[k * n + i]);
  Vector c = g(outer[k], br[i * n + j]);
  for (std::size_t m = 0; m < n; ++m) r[m] += b[m] + c[m];
  return r;
}

inline AlgebraReport jacobi_like(const HomLieAlgebra& g, const std::vector<Vector>& outer, const std::string& name,
                                 bool informational) {
  AlgebraReport rep;
  const std::size_t n = g.dim();
  auto br = basis_brackets(g);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vector d = twisted_cyclic_sum(g, br, outer, i, j, k);
        if (!is_zero(d)) {
          rep.add(failed_check(name, Witness{{i, j, k}, std::move(d), ""}, informational));
          return rep;
        }
      }
  rep.add(passed_check(name, informational));
  return rep;
}

}  // namespace detail

/// [e_i, e_j] + [e_j, e_i] = 0 and [e_i, e_i] = 0 under an arbitrary evaluator.
/// The evaluator is a parameter so a corrupted bracket can be fed in.
template <class Eval>
AlgebraReport check_skew_with(std::size_t dim, Eval&& eval) {
  AlgebraReport rep;
  for (std::size_t i = 0; i < dim; ++i) {
    Vector ei = unit_vector(dim, i);
    Vector d = eval(ei, ei);
    if (!is_zero(d)) {
      rep.add(failed_check("skew", Witness{{i}, std::move(d), "[e_i, e_i] != 0"}));
      return rep;
    }
    for (std::size_t j = i + 1; j < dim; ++j) {
      Vector ej = unit_vector(dim, j);
      Vector s = eval(ei, ej) + eval(ej, ei);
      if (!is_zero(s)) {
        rep.add(failed_check("skew", Witness{{i, j}, std::move(s), "[e_i, e_j] + [e_j, e_i] != 0"}));
        return rep;
      }
    }
  }
  rep.add(passed_check("skew"));
  return rep;
}

inline AlgebraReport check_skew(const HomLieAlgebra& g) {
  return check_skew_with(g.dim(), [&](const Vector& v, const Vector& w) { return g(v, w); });
}

/// Cyclic sum [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]].
inline Vector cyclic_defect(const HomLieAlgebra& g, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = g.dim();
  auto e = [n](std::size_t a) { return unit_vector(n, a); };
  return g(e(i), g.basis_bracket(j, k)) + g(e(j), g.basis_bracket(k, i)) + g(e(k), g.basis_bracket(i, j));
}

inline AlgebraReport check_homlie_jacobi(const HomLieAlgebra& g) {
  std::vector<Vector> outer;
  for (std::size_t i = 0; i < g.dim(); ++i) outer.push_back(g.twist().column(i));
  return detail::jacobi_like(g, outer, "homlie_jacobi", false);
}

/// Reported under the informational name "is_lie" when `informational` is set.
inline AlgebraReport check_classical_jacobi(const HomLieAlgebra& g, bool informational = false) {
  std::vector<Vector> outer;
  for (std::size_t i = 0; i < g.dim(); ++i) outer.push_back(unit_vector(g.dim(), i));
  return detail::jacobi_like(g, outer, informational ? "is_lie" : "classical_jacobi", informational);
}

/// T[e_i, e_j] = [T e_i, e_j] and T[e_i, e_j] = [e_i, T e_j] on all ordered pairs.
inline AlgebraReport check_centroid(const HomLieAlgebra& g) {
  AlgebraReport rep;
  const std::size_t n = g.dim();
  std::vector<Vector> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(g.twist().column(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector lhs = g.twist_of(g.basis_bracket(i, j));
      Vector left = lhs - g(t[i], unit_vector(n, j));
      if (!is_zero(left)) {
        rep.add(failed_check("centroid", Witness{{i, j}, std::move(left), "T[x,y] != [Tx,y]"}));
        return rep;
      }
      Vector right = lhs - g(unit_vector(n, i), t[j]);
      if (!is_zero(right)) {
        rep.add(failed_check("centroid", Witness{{i, j}, std::move(right), "T[x,y] != [x,Ty]"}));
        return rep;
      }
    }
  rep.add(passed_check("centroid"));
  return rep;
}

inline AlgebraReport check_metric(const QuadraticHomLieAlgebra& q) {
  AlgebraReport rep;
  const std::size_t n = q.dim();
  const Matrix& G = q.gram();
  const Matrix& T = q.twist();

  std::optional<Witness> sym;
  for (std::size_t i = 0; i < n && !sym; ++i)
    for (std::size_t j = i + 1; j < n && !sym; ++j)
      if (G(i, j) != G(j, i)) sym = Witness{{i, j}, {Scalar(G(i, j) - G(j, i))}, "G(i,j) != G(j,i)"};
  rep.add(sym ? failed_check("metric_symmetric", *sym) : passed_check("metric_symmetric"));

  Subspace rad = kernel(G);
  rep.add(rad.is_zero() ? passed_check("metric_nondegenerate")
                        : failed_check("metric_nondegenerate", Witness{{}, rad.basis_vector(0), "radical vector"}));

  // B(e_i, [e_j, e_k]) = B([e_i, e_j], e_k)
  std::vector<Vector> left(n * n), right(n * n);
  const Matrix Gt = G.transpose();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector br = q.algebra().basis_bracket(a, b);
      left[a * n + b] = G * br;
      right[a * n + b] = Gt * br;
    }
  std::optional<Witness> inv;
  for (std::size_t i = 0; i < n && !inv; ++i)
    for (std::size_t j = 0; j < n && !inv; ++j)
      for (std::size_t k = 0; k < n && !inv; ++k) {
        Scalar d = left[j * n + k][i] - right[i * n + j][k];
        if (sgn(d) != 0) inv = Witness{{i, j, k}, {d}, "B(x,[y,z]) != B([x,y],z)"};
      }
  rep.add(inv ? failed_check("metric_invariant", *inv) : passed_check("metric_invariant"));

  Matrix sa = T.transpose() * G - G * T;
  std::optional<Witness> adj;
  for (std::size_t i = 0; i < n && !adj; ++i)
    for (std::size_t j = 0; j < n && !adj; ++j)
      if (sgn(sa(i, j)) != 0) adj = Witness{{i, j}, {sa(i, j)}, "B(Tx,y) != B(x,Ty)"};
  rep.add(adj ? failed_check("twist_self_adjoint", *adj) : passed_check("twist_self_adjoint"));
  return rep;
}

struct Nilpotency {
  bool nilpotent = false;
  /// Smallest k with T^k = 0, when nilpotent.
  std::optional<std::size_t> index;
  /// Nonzero column of T^dim when not nilpotent.
  std::optional<Witness> witness;
};

inline Nilpotency twist_nilpotency(const Matrix& t) {
  const std::size_t n = t.rows();
  Matrix p = Matrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    if (p.is_zero()) return {true, k, std::nullopt};
    p = p * t;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vector c = p.column(j);
    if (!is_zero(c)) return {false, std::nullopt, Witness{{j}, std::move(c), "T^dim e_j != 0"}};
  }
  return {false, std::nullopt, std::nullopt};
}

namespace detail {

inline void add_structure_facts(const HomLieAlgebra& g, AlgebraReport& rep) {
  const std::size_t n = g.dim();
  rep.merge(check_classical_jacobi(g, true));

  Subspace der = derived_subalgebra(g);
  if (der.is_full()) {
    rep.add(passed_check("is_perfect", true));
  } else {
    rep.add(failed_check("is_perfect", Witness{{}, annihilator(der).basis_vector(0), "functional vanishing on [g,g]"},
                         true));
  }
  Subspace z = center(g);
  if (z.is_zero()) {
    rep.add(passed_check("trivial_center", true));
  } else {
    rep.add(failed_check("trivial_center", Witness{{}, z.basis_vector(0), "central vector"}, true));
  }
  auto nil = twist_nilpotency(g.twist());
  if (nil.nilpotent) {
    rep.add(passed_check("twist_nilpotent", true));
    rep.quantities["nilpotency_index"] = *nil.index;
  } else {
    rep.add(failed_check("twist_nilpotent", *nil.witness, true));
  }
  rep.quantities["dim"] = n;
  rep.quantities["derived_dim"] = der.dim();
  rep.quantities["center_dim"] = z.dim();
  rep.quantities["twist_kernel_dim"] = kernel(g.twist()).dim();
}

}  // namespace detail

/// Axioms (skew, Hom-Lie Jacobi, centroid) plus informational facts.
inline AlgebraReport full_report(const HomLieAlgebra& g) {
  AlgebraReport rep;
  rep.merge(check_skew(g));
  rep.merge(check_homlie_jacobi(g));
  rep.merge(check_centroid(g));
  detail::add_structure_facts(g, rep);
  return rep;
}

inline AlgebraReport full_report(const QuadraticHomLieAlgebra& q) {
  AlgebraReport rep;
  rep.merge(check_skew(q.algebra()));
  rep.merge(check_homlie_jacobi(q.algebra()));
  rep.merge(check_centroid(q.algebra()));
  rep.merge(check_metric(q));
  detail::add_structure_facts(q.algebra(), rep);
  return rep;
}

/// Homlie Jacobi, centroid, and the four metric sub-checks all pass.
inline bool is_quadratic_homlie_with_centroid_twist(const QuadraticHomLieAlgebra& q) {
  return check_homlie_jacobi(q.algebra()).passed() && check_centroid(q.algebra()).passed() &&
         check_metric(q).passed();
}

}  // namespace homlie
