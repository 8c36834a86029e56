// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/error.hpp"

namespace prufer
{

const char *to_string(Errc code) noexcept
{
  switch (code)
  {
    case Errc::out_of_range:
      return "out_of_range";
    case Errc::invalid_coefficients:
      return "invalid_coefficients";
    case Errc::disk_violation:
      return "disk_violation";
    case Errc::degenerate:
      return "degenerate";
    case Errc::misaligned:
      return "misaligned";
    case Errc::band_edge:
      return "band_edge";
    case Errc::resonance:
      return "resonance";
    case Errc::invalid_spec:
      return "invalid_spec";
    case Errc::branch_violation:
      return "branch_violation";
    case Errc::contract_violation:
      return "contract_violation";
    case Errc::io:
      return "io";
  }
  return "unknown";
}

}  // namespace prufer
