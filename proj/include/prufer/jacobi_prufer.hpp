// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "prufer/jacobi.hpp"

namespace prufer
{

// Polar decomposition phi(n) = |phi(n)| e^{i gamma(n)} of a complex background solution with
// gamma(first) in [0, 2pi) and every increment gamma(n) - gamma(n-1) in [0, 2pi).
struct PhaseSequence
{
  long first = 0;
  std::vector<double> gamma;
  std::vector<double> modulus;

  long last() const { return first + static_cast<long>(gamma.size()) - 1; }
  double gamma_at(long n) const;
  double modulus_at(long n) const;
  cplx phi_at(long n) const;
};

PhaseSequence phase_decompose(std::span<const cplx> phi, long first = 0);

// Moduli and phases of phi at n-1 and n: everything the Prufer step needs from the background.
struct PhasePair
{
  long n = 1;
  double mod_prev = 0.0, mod_curr = 0.0;
  double gamma_prev = 0.0, gamma_curr = 0.0;

  static PhasePair from_window(const SolutionWindow &phi);
  static PhasePair from_sequence(const PhaseSequence &phase, long n);
};

// omega defined by W_background(conj(phi), phi)(n) = i omega. `phi` holds samples from index
// `first`; the constancy of omega over the range is verified to `tol` (relative to |omega|).
double omega_constant(const JacobiCoefficients &coeffs, std::span<const cplx> phi, long first = 0,
                      double tol = Tolerance::identity);

// 2 |phi(n)| |phi(n+1)| a_{n+1} sin(gamma(n+1) - gamma(n)), which equals omega at every n.
double omega_from_phases(const JacobiCoefficients &coeffs, const PhaseSequence &phase, long n);

struct PruferState
{
  cplx Z;
  double R = 0.0;
  double eta = 0.0;  // unwrapped; eta == arg Z mod 2pi
  long n = 1;
  double omega = 0.0;
};

// Validating constructor: Z != 0, omega != 0. eta is taken as the principal argument of Z unless
// an unwrapped value is supplied.
PruferState make_prufer_state(cplx Z, long n, double omega);
PruferState make_prufer_state(cplx Z, long n, double omega, double eta_unwrapped);

// ((a_n + a'_n) u(n), u(n-1)).
struct WeightedPair
{
  long n = 1;
  double weighted_curr = 0.0;
  double prev = 0.0;

  SolutionWindow to_window(const JacobiCoefficients &coeffs) const;
};

// Z(n) = (2/omega) W_mixed(conj(phi), u)(n-1) for a real perturbed solution window u at n and
// background window phi at the same n.
cplx z_from_solution(const SolutionWindow &u, const SolutionWindow &phi,
                     const JacobiCoefficients &coeffs, double omega);

// Inverse of z_from_solution: ((a_n + a'_n) u(n), u(n-1)) = Im[Z (a_n phi(n), phi(n-1))].
WeightedPair solution_from_z(cplx Z, const SolutionWindow &phi, const JacobiCoefficients &coeffs);

// Z(n+1)/Z(n) from the first-order Prufer recursion; uses a_n, a'_n, b'_{n+1} and the phases of
// phi at n-1 and n.
cplx prufer_ratio_jacobi(const PruferState &state, const JacobiCoefficients &coeffs,
                         const PhasePair &phase);

PruferState prufer_step_jacobi(const PruferState &state, const JacobiCoefficients &coeffs,
                               const PhasePair &phase);
PruferState prufer_step_jacobi(const PruferState &state, const JacobiCoefficients &coeffs,
                               const PhaseSequence &phase);

// Principal log of Z(n+1)/Z(n). Requires |ratio - 1| < 1.
cplx log_ratio(const PruferState &before, const PruferState &after);
cplx principal_log_ratio(cplx ratio);

// (omega/2) R_1 R_2 sin(eta_1 - eta_2): the perturbed-weight Wronskian W(u_1, u_2)(n-1) written in
// Prufer variables at n.
double prufer_wronskian_jacobi(const PruferState &u1, const PruferState &u2);

}  // namespace prufer
