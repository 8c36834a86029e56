// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/szego.hpp"

#include <cmath>
#include <string>

namespace prufer
{

namespace
{

cplx in_disk(cplx a, const char *what, long n)
{
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !(std::norm(a) < 1.0))
    fail(Errc::disk_violation,
         std::string(what) + " at n = " + std::to_string(n) + " is outside the open unit disk");
  return a;
}

double rho_of(cplx a) { return std::sqrt(1.0 - std::norm(a)); }

Eigen::Matrix2cd theta_block(cplx a)
{
  const double r = rho_of(a);
  Eigen::Matrix2cd t;
  t << std::conj(a), r, r, -a;
  return t;
}

}  // namespace

VerblunskySequence::VerblunskySequence(ComplexSequence background, ComplexSequence pert)
  : alpha_(std::move(background)), pert_(std::move(pert))
{
}

cplx VerblunskySequence::alpha(long n) const { return in_disk(alpha_(n), "alpha", n); }

cplx VerblunskySequence::pert(long n) const
{
  const cplx p = pert_(n);
  if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
    fail(Errc::invalid_coefficients, "alpha' at n = " + std::to_string(n) + " is not finite");
  return p;
}

cplx VerblunskySequence::total(long n) const { return in_disk(alpha(n) + pert(n), "alpha+alpha'", n); }

double VerblunskySequence::rho(long n) const { return rho_of(alpha(n)); }

double VerblunskySequence::rho_total(long n) const { return rho_of(total(n)); }

VerblunskySequence VerblunskySequence::cached(long last) const
{
  return VerblunskySequence(alpha_.cached(last), pert_.cached(last));
}

VerblunskySequence VerblunskySequence::with_perturbation(ComplexSequence pert) const
{
  return VerblunskySequence(alpha_, std::move(pert));
}

SqrtBranch SqrtBranch::from_angle(double theta)
{
  if (!std::isfinite(theta))
    fail(Errc::disk_violation, "arc angle is not finite");
  SqrtBranch b;
  b.theta = wrap_two_pi(theta);
  b.z = std::polar(1.0, b.theta);
  b.sqrt_z = std::polar(1.0, 0.5 * b.theta);
  return b;
}

SqrtBranch SqrtBranch::from_z(cplx z)
{
  if (!(std::abs(std::abs(z) - 1.0) <= Tolerance::exact))
    fail(Errc::disk_violation, "z must lie on the unit circle");
  SqrtBranch b = from_angle(std::arg(z));
  b.z = z;
  return b;
}

CMat2 a_matrix(cplx alpha, cplx z)
{
  in_disk(alpha, "alpha", 0);
  if (!(std::abs(std::abs(z) - 1.0) <= Tolerance::exact))
    fail(Errc::disk_violation, "z must lie on the unit circle");
  CMat2 A;
  A << z, -std::conj(alpha), -alpha * z, 1.0;
  return A / rho_of(alpha);
}

Spinor szego_step(const Spinor &v, cplx alpha)
{
  in_disk(alpha, "alpha", v.n);
  const cplx z = v.branch.z;
  const double r = rho_of(alpha);
  const cplx s = 1.0 / (v.branch.sqrt_z * r);
  Spinor out = v;
  out.v1 = s * (z * v.v1 - std::conj(alpha) * v.v2);
  out.v2 = s * (-alpha * z * v.v1 + v.v2);
  out.n = v.n + 1;
  return out;
}

Spinor szego_step(const VerblunskySequence &alpha, const Spinor &v, bool perturbed)
{
  return szego_step(v, alpha.alpha(v.n, perturbed));
}

Spinor conjugation_star(const Spinor &v)
{
  Spinor out = v;
  out.v1 = std::conj(v.v2);
  out.v2 = std::conj(v.v1);
  return out;
}

cplx spinor_wronskian(const Spinor &f, const Spinor &g)
{
  if (f.n != g.n)
    fail(Errc::misaligned, "spinors at different indices");
  return f.v2 * g.v1 - g.v2 * f.v1;
}

Eigen::MatrixXcd cmv_matrix(const VerblunskySequence &alpha, long N, bool perturbed)
{
  if (N < 5)
    fail(Errc::out_of_range, "CMV truncation needs N >= 5");
  // C = L M with L = Theta_0 + Theta_2 + ..., M = 1 + Theta_1 + Theta_3 + ...; the two extra rows
  // make every entry of the N x N corner exact.
  const long S = N + 2;
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(S, S), M = Eigen::MatrixXcd::Zero(S, S);
  M(0, 0) = 1.0;
  for (long j = 0; j < S; ++j)
  {
    auto &target = (j % 2 == 0) ? L : M;
    const cplx a = alpha.alpha(j, perturbed);
    if (j + 1 < S)
      target.block<2, 2>(j, j) = theta_block(a);
    else
      target(j, j) = std::conj(a);
  }
  return (L * M).topLeftCorner(N, N);
}

double cmv_interior_unitarity_defect(const Eigen::MatrixXcd &C)
{
  const long N = C.rows();
  const Eigen::MatrixXcd D = C.adjoint() * C - Eigen::MatrixXcd::Identity(N, N);
  double worst = 0.0;
  // Column i of C has support in rows i-2..i+2, so rows i <= N-4 of C^*C are untouched by
  // truncation.
  for (long i = 0; i + 3 < N; ++i)
    for (long j = 0; j < N; ++j)
      worst = std::max(worst, std::abs(D(i, j)));
  return worst;
}

CMat2 gz_matrix(cplx alpha, cplx z, long n)
{
  in_disk(alpha, "alpha", n);
  if (z == cplx{0.0, 0.0})
    fail(Errc::disk_violation, "z must be nonzero");
  CMat2 R;
  if (n % 2 != 0)
    R << -std::conj(alpha), z, 1.0 / z, -alpha;
  else
    R << -alpha, 1.0, 1.0, -std::conj(alpha);
  return R / rho_of(alpha);
}

GzPair gz_step(const GzPair &prev, cplx alpha, cplx z, long n)
{
  const CVec2 next = gz_matrix(alpha, z, n) * CVec2(prev.U, prev.V);
  return {next(0), next(1)};
}

std::vector<GzPair> gz_solution(const VerblunskySequence &alpha, cplx z, GzPair initial,
                                long count, bool perturbed)
{
  std::vector<GzPair> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0L)));
  GzPair cur = initial;
  for (long k = 0; k < count; ++k)
  {
    const cplx a = k == 0 ? cplx{0.0, 0.0} : alpha.alpha(k - 1, perturbed);
    cur = gz_step(cur, a, z, k);
    out.push_back(cur);
  }
  return out;
}

double dfly_residual(cplx alpha_even, cplx alpha_odd, cplx z)
{
  const CMat2 lhs = a_matrix(alpha_odd, z) * a_matrix(alpha_even, z) / z;
  CMat2 D = CMat2::Zero();
  D(0, 0) = 1.0;
  D(1, 1) = z;
  CMat2 Dinv = CMat2::Zero();
  Dinv(0, 0) = 1.0;
  Dinv(1, 1) = 1.0 / z;
  const CMat2 rhs = D * gz_matrix(alpha_odd, z, 1) * gz_matrix(alpha_even, z, 0) * Dinv;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace prufer
