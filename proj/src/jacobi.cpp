// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/jacobi.hpp"

#include <cmath>
#include <string>

namespace prufer
{

namespace
{

double finite_or_throw(double v, const char *name, long n)
{
  if (!std::isfinite(v))
    fail(Errc::invalid_coefficients,
         std::string(name) + "_" + std::to_string(n) + " is not finite");
  return v;
}

}  // namespace

JacobiCoefficients::JacobiCoefficients(RealSequence background_a, RealSequence background_b,
                                       RealSequence pert_a, RealSequence pert_b)
  : a_(std::move(background_a)), b_(std::move(background_b)), pa_(std::move(pert_a)),
    pb_(std::move(pert_b))
{
}

double JacobiCoefficients::a(long n) const
{
  const double v = finite_or_throw(a_(n), "a", n);
  if (v <= 0.0)
    fail(Errc::invalid_coefficients, "a_" + std::to_string(n) + " must be positive");
  return v;
}

double JacobiCoefficients::b(long n) const { return finite_or_throw(b_(n), "b", n); }

double JacobiCoefficients::pert_a(long n) const { return finite_or_throw(pa_(n), "a'", n); }

double JacobiCoefficients::pert_b(long n) const { return finite_or_throw(pb_(n), "b'", n); }

double JacobiCoefficients::total_a(long n) const
{
  const double v = a(n) + pert_a(n);
  if (v <= 0.0)
    fail(Errc::invalid_coefficients, "a_" + std::to_string(n) + " + a'_" + std::to_string(n) +
                                         " must be positive");
  return v;
}

double JacobiCoefficients::total_b(long n) const { return b(n) + pert_b(n); }

JacobiCoefficients JacobiCoefficients::cached(long last) const
{
  return JacobiCoefficients(a_.cached(last), b_.cached(last), pa_.cached(last), pb_.cached(last));
}

JacobiCoefficients JacobiCoefficients::with_perturbation(RealSequence pert_a,
                                                         RealSequence pert_b) const
{
  return JacobiCoefficients(a_, b_, std::move(pert_a), std::move(pert_b));
}

JacobiCoefficients JacobiCoefficients::unperturbed() const
{
  return with_perturbation(RealSequence::constant(0.0), RealSequence::constant(0.0));
}

SolutionWindow step_jacobi(const JacobiCoefficients &coeffs, double E, const SolutionWindow &w,
                           bool perturbed)
{
  const long n = w.n;
  if (n < 1)
    fail(Errc::out_of_range, "step_jacobi needs a window at n >= 1");
  const double an = coeffs.a(n, perturbed);
  const double an1 = coeffs.a(n + 1, perturbed);
  const double bn1 = coeffs.b(n + 1, perturbed);
  const cplx next = ((E - bn1) * w.curr - an * w.prev) / an1;
  return {n + 1, w.curr, next};
}

Mat2 transfer_step(const JacobiCoefficients &coeffs, double E, long n, bool perturbed)
{
  const double an = coeffs.a(n, perturbed);
  const double bn1 = coeffs.b(n + 1, perturbed);
  Mat2 S;
  S << (E - bn1) / an, -an, 1.0 / an, 0.0;
  return S;
}

Mat2 transfer_matrix(const JacobiCoefficients &coeffs, double E, long N, bool perturbed)
{
  if (N < 1)
    fail(Errc::out_of_range, "transfer_matrix needs N >= 1");
  Mat2 T = Mat2::Identity();
  for (long n = 1; n <= N; ++n)
    T = transfer_step(coeffs, E, n, perturbed) * T;
  return T;
}

Mat2 to_dks_convention(const Mat2 &T, const JacobiCoefficients &coeffs, long N, double a0,
                       bool perturbed)
{
  if (!(a0 > 0.0))
    fail(Errc::invalid_coefficients, "a_0 must be positive");
  const Mat2 left = Vec2(1.0 / coeffs.a(N + 1, perturbed), coeffs.a(N, perturbed)).asDiagonal();
  const Mat2 right = Vec2(coeffs.a(1, perturbed), 1.0 / a0).asDiagonal();
  return left * T * right;
}

cplx wronskian(WronskianWeight mode, const JacobiCoefficients &coeffs, const SolutionWindow &f,
               const SolutionWindow &g, long n)
{
  if (f.n != n + 1 || g.n != n + 1)
    fail(Errc::misaligned, "wronskian at n = " + std::to_string(n) +
                               " needs windows holding samples n and n+1");
  const double bare = coeffs.a(n + 1);
  double first = bare, second = bare;
  switch (mode)
  {
    case WronskianWeight::background:
      break;
    case WronskianWeight::mixed:
      first = coeffs.total_a(n + 1);
      break;
    case WronskianWeight::perturbed:
      first = second = coeffs.total_a(n + 1);
      break;
  }
  return first * f.prev * g.curr - second * f.curr * g.prev;
}

cplx mixed_wronskian_increment(const JacobiCoefficients &coeffs, const SolutionWindow &f,
                               const SolutionWindow &g)
{
  if (f.n != g.n)
    fail(Errc::misaligned, "windows at different indices");
  const long n = f.n;
  return -coeffs.pert_b(n + 1) * f.curr * g.curr -
         coeffs.pert_a(n) * (f.curr * g.prev + f.prev * g.curr);
}

}  // namespace prufer
