// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "prufer/sequence.hpp"
#include "prufer/types.hpp"

namespace prufer
{

// Indexing: solutions are indexed from n = 0, coefficients a_n, b_n from n = 1. The background
// recursion is
//   a_{n+1} phi(n+1) + b_{n+1} phi(n) + a_n phi(n-1) = E phi(n),   n >= 1,
// and the perturbed one uses a_n + a'_n and b_n + b'_n in place of a_n and b_n.
class JacobiCoefficients
{
public:
  JacobiCoefficients(RealSequence background_a, RealSequence background_b,
                     RealSequence pert_a = RealSequence::constant(0.0),
                     RealSequence pert_b = RealSequence::constant(0.0));

  double a(long n) const;
  double b(long n) const;
  double pert_a(long n) const;
  double pert_b(long n) const;
  double total_a(long n) const;
  double total_b(long n) const;

  double a(long n, bool perturbed) const { return perturbed ? total_a(n) : a(n); }
  double b(long n, bool perturbed) const { return perturbed ? total_b(n) : b(n); }

  // Precompute every sequence through index `last`.
  JacobiCoefficients cached(long last) const;

  // Same background with a different perturbation.
  JacobiCoefficients with_perturbation(RealSequence pert_a, RealSequence pert_b) const;
  JacobiCoefficients unperturbed() const;

private:
  RealSequence a_, b_, pa_, pb_;
};

// Consecutive samples (value at n-1, value at n) of a solution.
struct SolutionWindow
{
  long n = 1;
  cplx prev{};
  cplx curr{};
};

// Window at n+1 for the (perturbed or background) eigenvalue equation at energy E.
SolutionWindow step_jacobi(const JacobiCoefficients &coeffs, double E, const SolutionWindow &w,
                           bool perturbed);

// One-step matrix mapping (a_n u(n), u(n-1)) to (a_{n+1} u(n+1), u(n)).
Mat2 transfer_step(const JacobiCoefficients &coeffs, double E, long n, bool perturbed);

// Ordered product T_N^E = S_N ... S_1 of transfer_step factors. Maps (a_1 u(1), u(0)) to
// (a_{N+1} u(N+1), u(N)); with perturbed = true every a_n, b_n is replaced by its total.
Mat2 transfer_matrix(const JacobiCoefficients &coeffs, double E, long N, bool perturbed);

// Converts T_N^E to the convention diag(1/a_{N+1}, a_N) T diag(a_1, 1/a_0), which acts on
// plain (u(n+1), u(n)) pairs. a_0 is not part of the coefficient data and must be supplied.
Mat2 to_dks_convention(const Mat2 &T, const JacobiCoefficients &coeffs, long N, double a0,
                       bool perturbed);

enum class WronskianWeight
{
  background,  // a_{n+1} on both terms
  mixed,       // a_{n+1} + a'_{n+1} on f(n) g(n+1), a_{n+1} on f(n+1) g(n)
  perturbed    // a_{n+1} + a'_{n+1} on both terms
};

// W(f, g)(n). Both windows must hold the samples at n and n+1, i.e. window.n == n + 1.
cplx wronskian(WronskianWeight mode, const JacobiCoefficients &coeffs, const SolutionWindow &f,
               const SolutionWindow &g, long n);

// Right-hand side of W_mixed(f,g)(n) - W_mixed(f,g)(n-1) when f solves the background and g the
// perturbed recursion: -b'_{n+1} f(n) g(n) - a'_n (f(n) g(n-1) + f(n-1) g(n)).
// Windows hold the samples at n-1 and n.
cplx mixed_wronskian_increment(const JacobiCoefficients &coeffs, const SolutionWindow &f,
                               const SolutionWindow &g);

}  // namespace prufer
