// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace prufer
{

// Stateless keyed generator: every draw is a pure function of its key, so the n-th value of a
// realization is available in O(1) and parallel trials need no stream coordination.
struct DrawKey
{
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t channel = 0;
  std::int64_t n = 0;
  std::uint64_t attempt = 0;  // rejection resampling counter
};

std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t draw_bits(const DrawKey &key, std::uint64_t lane = 0) noexcept;

// Uniform on [0, 1) with 53 random bits.
double draw_unit(const DrawKey &key, std::uint64_t lane = 0) noexcept;

enum class Distribution
{
  rademacher,  // +-1
  uniform      // uniform on [-sqrt 3, sqrt 3]
};

// Mean zero, variance one.
double draw_standard(Distribution d, const DrawKey &key, std::uint64_t lane = 0) noexcept;

}  // namespace prufer
