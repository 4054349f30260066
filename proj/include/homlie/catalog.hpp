#pragma once

// Built-in algebras: sl2 and sl3 with structure constants computed from
// matrix commutators, and the cotangent-type family s + s* twisted by a
// multiple of the Killing form with a cyclic 3-form mu.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "homlie/core.hpp"
#include "homlie/doubleext.hpp"

namespace homlie {

namespace detail {

inline Matrix elementary(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

}  // namespace detail

/// Matrix basis of sl(n): for n = 2 the order (e, f, h); for n = 3 the order
/// e11-e22, e22-e33, e12, e13, e21, e23, e31, e32.
inline std::vector<Matrix> sl_matrix_basis(std::size_t n) {
  using detail::elementary;
  if (n == 2) return {elementary(2, 0, 1), elementary(2, 1, 0), elementary(2, 0, 0) - elementary(2, 1, 1)};
  if (n == 3)
    return {elementary(3, 0, 0) - elementary(3, 1, 1),
            elementary(3, 1, 1) - elementary(3, 2, 2),
            elementary(3, 0, 1),
            elementary(3, 0, 2),
            elementary(3, 1, 0),
            elementary(3, 1, 2),
            elementary(3, 2, 0),
            elementary(3, 2, 1)};
  throw Error(ErrorCode::precondition, "sl(n) is only provided for n = 2 and n = 3");
}

/// sl(n) with structure constants from [a, b] = ab - ba and twist Id.
inline HomLieAlgebra sl(std::size_t n) {
  auto basis = sl_matrix_basis(n);
  const std::size_t d = basis.size();
  std::vector<Vector> flat;
  for (const auto& m : basis) flat.push_back(m.entries());
  Matrix coords = Matrix::from_columns(flat, n * n);
  StructureTensor br(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Matrix c = basis[i] * basis[j] - basis[j] * basis[i];
      auto v = solve(coords, c.entries());
      if (!v) throw Error(ErrorCode::internal, "sl(n): commutator outside the span of the basis");
      for (std::size_t k = 0; k < d; ++k) br.add(i, j, k, (*v)[k]);
    }
  return HomLieAlgebra(std::move(br), Matrix::identity(d));
}

/// Values of a 3-form keyed by 0-based index triples.
using CyclicTensor = std::map<std::array<std::size_t, 3>, Scalar>;

/// Completes the given values to a cyclic, antisymmetric tensor
/// mu(x_i, x_j)(x_k) stored as a bracket s x s -> s*. Entries may be given
/// on any permutation of a triple; conflicting entries are rejected.
inline StructureTensor complete_cyclic(std::size_t dim, const CyclicTensor& values) {
  CyclicTensor full;
  for (const auto& [idx, v] : values) {
    const auto [i, j, k] = idx;
    if (i >= dim || j >= dim || k >= dim) throw Error(ErrorCode::precondition, "mu: index out of range");
    if (i == j || j == k || i == k) {
      if (sgn(v) != 0) throw Error(ErrorCode::precondition, "mu: nonzero value on a repeated index");
      continue;
    }
    const std::array<std::array<std::size_t, 3>, 6> perms{{{i, j, k}, {j, k, i}, {k, i, j}, {j, i, k}, {i, k, j}, {k, j, i}}};
    for (std::size_t p = 0; p < 6; ++p) {
      Scalar val = p < 3 ? v : Scalar(-v);
      auto [it, inserted] = full.emplace(perms[p], val);
      if (!inserted && it->second != val)
        throw Error(ErrorCode::precondition, "mu: values are not cyclic and antisymmetric");
    }
  }
  StructureTensor mu(dim, dim);
  // mu(x_j, x_k) = sum_i mu_ijk alpha_i
  for (const auto& [idx, v] : full)
    if (idx[1] < idx[2]) mu.add(idx[1], idx[2], idx[0], v);
  return mu;
}

/// Extension data for s = sl(n), h = 0, varphi = scale * Killing, phi = 0,
/// tau = 0 and the completed 3-form mu.
inline DoubleExtensionData cotangent_extension(std::size_t n, const CyclicTensor& mu, const Scalar& scale = 1) {
  HomLieAlgebra s = sl(n);
  DoubleExtensionData d = DoubleExtensionData::zeros(s.dim(), 0);
  d.bracket_s = s.bracket();
  d.varphi = scale * killing(s);
  d.mu = complete_cyclic(s.dim(), mu);
  return d;
}

/// The 16-dimensional algebra sl3 + sl3* with T(x + alpha) = K(x, .).
inline QuadraticHomLieAlgebra example_section3(const CyclicTensor& mu) { return build(cotangent_extension(3, mu)); }

/// The 6-dimensional analogue over sl2.
inline QuadraticHomLieAlgebra example_sl2(const CyclicTensor& mu) { return build(cotangent_extension(2, mu)); }

/// Labels x1.., a1.. for the s and s* blocks of a cotangent example.
inline std::vector<std::string> cotangent_labels(std::size_t s_dim) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= s_dim; ++i) out.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= s_dim; ++i) out.push_back("a" + std::to_string(i));
  return out;
}

}  // namespace homlie
