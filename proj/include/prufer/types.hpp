// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <Eigen/Core>

namespace prufer
{

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2d;
using CMat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2d;
using CVec2 = Eigen::Vector2cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Tolerances used as defaults throughout: algebraic identities vs. accumulated identities.
struct Tolerance
{
  static constexpr double exact = 1e-12;
  static constexpr double identity = 1e-10;
};

// Reduce x into [0, 2pi).
inline double wrap_two_pi(double x)
{
  double r = std::fmod(x, two_pi);
  if (r < 0.0)
    r += two_pi;
  if (r >= two_pi)
    r -= two_pi;
  return r;
}

}  // namespace prufer
