#pragma once

#include <cmath>
#include <initializer_list>
#include <random>

#include <doctest.h>

#include "hyperns/thermo.hpp"

namespace testing {

using hyperns::ModelParams;
using hyperns::PrimitiveState;
using hyperns::SpaceVector;

inline SpaceVector<double> vec(std::initializer_list<double> v) {
  SpaceVector<double> out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline PrimitiveState<double> state(double rho, SpaceVector<double> u, double theta, SpaceVector<double> q,
                                    double s2) {
  return {rho, std::move(u), theta, std::move(q), s2};
}

inline ModelParams ones(int dim = 1) {
  ModelParams p;
  p.dim = dim;
  return p;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing
