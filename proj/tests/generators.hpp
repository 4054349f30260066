#pragma once

// Seeded random generators of double-extension data over sl2 and sl3 with
// h of dimension 0, 1 or 2 (abelian), shaped so that most draws satisfy the
// hypotheses of the construction.

#include <cstddef>
#include <random>
#include <string>

#include "homlie/catalog.hpp"
#include "homlie/doubleext.hpp"

namespace gen {

using homlie::DoubleExtensionData;
using homlie::Matrix;
using homlie::Scalar;

inline Scalar small_rational(std::mt19937& rng, bool allow_zero = true) {
  static const int nums[] = {-3, -2, -1, 1, 2, 3};
  static const int dens[] = {1, 1, 1, 2, 3};
  std::uniform_int_distribution<int> zero(0, 3);
  if (allow_zero && zero(rng) == 0) return 0;
  Scalar q(nums[std::uniform_int_distribution<int>(0, 5)(rng)], dens[std::uniform_int_distribution<int>(0, 4)(rng)]);
  q.canonicalize();
  return q;
}

enum class HShape { none, line, hyperbolic_twisted, hyperbolic_rho, diagonal_rho };

inline const char* name(HShape s) {
  switch (s) {
    case HShape::none: return "h=0";
    case HShape::line: return "h=1";
    case HShape::hyperbolic_twisted: return "h=2 hyperbolic, Theta != 0";
    case HShape::hyperbolic_rho: return "h=2 hyperbolic, rho != 0";
    case HShape::diagonal_rho: return "h=2 diagonal, rho != 0";
  }
  return "?";
}

struct Draw {
  DoubleExtensionData data;
  HShape shape = HShape::none;
};

/// Antisymmetric tau with tau(x_i)(u_a)(x_j) = t_ija = -t_jia, only on the
/// listed h coordinates.
inline void random_tau(std::mt19937& rng, DoubleExtensionData& d, std::initializer_list<std::size_t> cols) {
  for (std::size_t a : cols)
    for (std::size_t i = 0; i < d.s_dim; ++i)
      for (std::size_t j = i + 1; j < d.s_dim; ++j) {
        Scalar t = small_rational(rng);
        d.tau[i](j, a) = t;
        d.tau[j](i, a) = -t;
      }
}

inline Draw draw(std::mt19937& rng) {
  std::size_t n = std::uniform_int_distribution<int>(0, 1)(rng) ? 3 : 2;
  HShape shape = static_cast<HShape>(std::uniform_int_distribution<int>(0, 4)(rng));

  homlie::CyclicTensor mu;
  const std::size_t s = n == 3 ? 8 : 3;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      for (std::size_t k = j + 1; k < s; ++k)
        if (std::uniform_int_distribution<int>(0, 5)(rng) == 0) mu[{i, j, k}] = small_rational(rng, false);
  DoubleExtensionData base = homlie::cotangent_extension(n, mu, small_rational(rng));

  std::size_t h = shape == HShape::none ? 0 : shape == HShape::line ? 1 : 2;
  DoubleExtensionData d = DoubleExtensionData::zeros(s, h);
  d.bracket_s = base.bracket_s;
  d.varphi = base.varphi;
  d.mu = base.mu;

  switch (shape) {
    case HShape::none:
      break;
    case HShape::line:
      // rho must be skew for a 1x1 form, so rho = 0 and phi = 0 on the perfect s.
      d.gram_h(0, 0) = small_rational(rng, false);
      random_tau(rng, d, {0});
      break;
    case HShape::hyperbolic_twisted:
      // Theta u_0 = c u_1 forces rho = 0 and tau(x)(u_1) = 0.
      d.gram_h = Matrix{{0, 1}, {1, 0}};
      d.theta(1, 0) = small_rational(rng, false);
      random_tau(rng, d, {0});
      break;
    case HShape::hyperbolic_rho:
      d.gram_h = Matrix{{0, 1}, {1, 0}};
      for (std::size_t i = 0; i < s; ++i) {
        Scalar r = small_rational(rng);
        d.rho[i](0, 0) = r;
        d.rho[i](1, 1) = -r;
      }
      random_tau(rng, d, {0, 1});
      break;
    case HShape::diagonal_rho: {
      Scalar a = small_rational(rng, false), b = small_rational(rng, false);
      d.gram_h = Matrix{{a, 0}, {0, b}};
      for (std::size_t i = 0; i < s; ++i) {
        Scalar p = small_rational(rng);
        d.rho[i](0, 1) = p;
        d.rho[i](1, 0) = -a * p / b;
      }
      random_tau(rng, d, {0, 1});
      break;
    }
  }

  // One draw in six is broken on purpose so the hypothesis filter has work to do.
  if (std::uniform_int_distribution<int>(0, 5)(rng) == 0) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        d.mu.add(0, 1, 2, 1);
        break;
      case 1:
        d.varphi(0, 1) += 1;
        break;
      default:
        if (h > 0)
          d.tau[0](0, 0) += 1;
        else
          d.mu.add(0, 2, 1, 1);
    }
  }
  return {std::move(d), shape};
}

}  // namespace gen
