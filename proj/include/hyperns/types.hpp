#pragma once

#include <Eigen/Dense>

namespace hyperns {

inline constexpr int kMaxDim = 3;
inline constexpr int kMaxSystem = 2 * kMaxDim + 3;

/// Spatial vector of runtime length n <= 3, stored inline.
template <typename Scalar>
using SpaceVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

template <typename Scalar>
using SpaceMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Square matrix of the first-order system, size 2n+3.
template <typename Scalar>
using SystemMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSystem, kMaxSystem>;

template <typename Scalar>
using SystemVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxSystem, 1>;

}  // namespace hyperns
