// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace prufer
{

// Failure categories. Everything except contract_violation, branch_violation and io is an
// input/precondition problem; the C layer maps those to a "validation" status.
enum class Errc
{
  out_of_range,          // coefficient or sample index not available
  invalid_coefficients,  // a_n <= 0, non-finite values, zero denominators
  disk_violation,        // |alpha| >= 1 or |z| != 1
  degenerate,            // omega == 0, Z == 0, zero phase sample
  misaligned,            // windows/spinors at different indices or branches
  band_edge,             // energy not strictly inside a band
  resonance,             // small divisor |e^{i kappa q} - 1| below tolerance
  invalid_spec,          // malformed perturbation or experiment description
  branch_violation,      // |ratio - 1| >= 1, principal log not admissible
  contract_violation,    // cross-validation or drift budget exceeded
  io
};

const char *to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
  Error(Errc code, const std::string &what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string &what)
{
  throw Error(code, what);
}

}  // namespace prufer
