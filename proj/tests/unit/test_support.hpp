#pragma once

#include <cmath>
#include <random>

#include "gensmooth/types.hpp"

namespace gensmooth::testing {

/// Uniform point in the Euclidean ball of the given radius.
inline Vector random_in_ball(std::mt19937_64& gen, Eigen::Index d, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = normal(gen);
  const double r = radius * std::pow(unif(gen), 1.0 / static_cast<double>(d));
  return v * (r / v.norm());
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace gensmooth::testing
