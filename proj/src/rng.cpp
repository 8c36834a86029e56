// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/rng.hpp"

#include <cmath>

namespace prufer
{

std::uint64_t mix64(std::uint64_t x) noexcept
{
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t draw_bits(const DrawKey &key, std::uint64_t lane) noexcept
{
  std::uint64_t h = mix64(key.seed);
  h = mix64(h ^ key.trial);
  h = mix64(h ^ key.channel);
  h = mix64(h ^ static_cast<std::uint64_t>(key.n));
  h = mix64(h ^ key.attempt);
  return mix64(h ^ lane);
}

double draw_unit(const DrawKey &key, std::uint64_t lane) noexcept
{
  return static_cast<double>(draw_bits(key, lane) >> 11) * 0x1.0p-53;
}

double draw_standard(Distribution d, const DrawKey &key, std::uint64_t lane) noexcept
{
  if (d == Distribution::rademacher)
    return (draw_bits(key, lane) >> 63) ? 1.0 : -1.0;
  return std::sqrt(3.0) * (2.0 * draw_unit(key, lane) - 1.0);
}

}  // namespace prufer
