// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <random>

#include "prufer/types.hpp"

namespace test
{

using prufer::cplx;

inline std::mt19937_64 &rng()
{
  static std::mt19937_64 g(12345);
  return g;
}

inline double uniform(double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx in_disk(double radius)
{
  const double r = radius * std::sqrt(uniform(0.0, 1.0));
  const double t = uniform(0.0, prufer::two_pi);
  return std::polar(r, t);
}

}  // namespace test
