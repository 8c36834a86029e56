// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/szego_prufer.hpp"

#include <cmath>
#include <string>

namespace prufer
{

namespace
{

// The closed form divides by rho (rho + rho'); below this the step is refused.
constexpr double min_rho_total = 1e-8;

void check_omega(double omega)
{
  if (!(std::abs(omega) > Tolerance::exact) || !std::isfinite(omega))
    fail(Errc::degenerate, "omega vanishes: v and v* are linearly dependent");
}

struct RhoPair
{
  double rho, rho_p;
};

RhoPair rhos(cplx alpha, cplx alpha_prime)
{
  const double r = std::sqrt(1.0 - std::norm(alpha));
  const double rp = rho_prime(alpha, alpha_prime);
  if (!(r + rp > min_rho_total))
    fail(Errc::disk_violation, "rho + rho' below 1e-8");
  return {r, rp};
}

}  // namespace

CmvPruferState make_cmv_prufer_state(cplx Z, long n, double omega)
{
  check_omega(omega);
  const double R = std::abs(Z);
  if (!(R > 0.0) || !std::isfinite(R))
    fail(Errc::degenerate, "Prufer variable Z must be finite and nonzero");
  return {Z, R, std::arg(Z), n, omega};
}

double cmv_omega(const Spinor &v)
{
  const double omega = std::norm(v.v2) - std::norm(v.v1);
  check_omega(omega);
  return omega;
}

cplx z_decompose(const Spinor &u, const Spinor &v, double omega)
{
  check_omega(omega);
  return spinor_wronskian(u, conjugation_star(v)) / omega;
}

Spinor reconstruct_u(cplx Z, const Spinor &v)
{
  const Spinor vs = conjugation_star(v);
  Spinor u = v;
  u.v1 = Z * v.v1 + std::conj(Z) * vs.v1;
  u.v2 = Z * v.v2 + std::conj(Z) * vs.v2;
  return u;
}

double rho_prime(cplx alpha, cplx alpha_prime)
{
  const cplx total = alpha + alpha_prime;
  if (!(std::norm(alpha) < 1.0) || !(std::norm(total) < 1.0))
    fail(Errc::disk_violation, "alpha and alpha + alpha' must lie in the open unit disk");
  return std::sqrt(1.0 - std::norm(total)) - std::sqrt(1.0 - std::norm(alpha));
}

cplx cmv_wronskian_increment(const Spinor &u, const Spinor &v, cplx alpha, cplx alpha_prime)
{
  if (u.n != v.n)
    fail(Errc::misaligned, "u and v at different indices");
  const auto [r, rp] = rhos(alpha, alpha_prime);
  const cplx z = v.branch.z;
  const cplx ap = alpha_prime;
  const cplx bracket = (std::conj(alpha) * ap + r * rp) * u.v1 * std::conj(v.v1) -
                       z * ap * u.v1 * std::conj(v.v2) +
                       std::conj(z) * std::conj(ap) * u.v2 * std::conj(v.v1) -
                       (alpha * std::conj(ap) + r * rp) * u.v2 * std::conj(v.v2);
  return bracket / (r * (r + rp));
}

cplx prufer_ratio_szego(const CmvPruferState &state, const Spinor &v, cplx alpha,
                        cplx alpha_prime)
{
  if (state.n != v.n)
    fail(Errc::misaligned, "Prufer state and reference spinor at different indices");
  const auto [r, rp] = rhos(alpha, alpha_prime);
  const cplx z = v.branch.z;
  const cplx ap = alpha_prime, apc = std::conj(alpha_prime);
  const cplx v1 = v.v1, v2 = v.v2, v1c = std::conj(v.v1), v2c = std::conj(v.v2);
  const cplx e2eta = std::conj(state.Z) / state.Z;

  const cplx direct = (std::conj(alpha) * ap + r * rp) * std::norm(v1) - z * ap * v1 * v2c +
                      std::conj(z) * apc * v2 * v1c - (alpha * apc + r * rp) * std::norm(v2);
  // Substituting u/Z = v + e^{-2i eta} v* into the Wronskian increment.
  const cplx rotated = (std::conj(alpha) * ap - alpha * apc) * v2c * v1c - z * ap * v2c * v2c +
                       std::conj(z) * apc * v1c * v1c;
  return 1.0 + (direct + e2eta * rotated) / (state.omega * r * (r + rp));
}

CmvPruferState prufer_step_szego(const CmvPruferState &state, const Spinor &v, cplx alpha,
                                 cplx alpha_prime)
{
  if (!(std::abs(state.Z) > 0.0))
    fail(Errc::degenerate, "Z(n) = 0");
  const cplx ratio = prufer_ratio_szego(state, v, alpha, alpha_prime);
  CmvPruferState next = state;
  next.Z = state.Z * ratio;
  next.R = std::abs(next.Z);
  next.eta = state.eta + std::arg(ratio);
  next.n = state.n + 1;
  if (!(next.R > 0.0) || !std::isfinite(next.R))
    fail(Errc::degenerate, "Prufer amplitude left (0, inf) at n = " + std::to_string(next.n));
  return next;
}

cplx log_ratio_cmv(const CmvPruferState &before, const CmvPruferState &after)
{
  if (after.n != before.n + 1)
    fail(Errc::misaligned, "log_ratio_cmv needs consecutive states");
  const cplx ratio = after.Z / before.Z;
  if (!(std::abs(ratio - 1.0) < 1.0))
    fail(Errc::branch_violation, "|Z(n+1)/Z(n) - 1| >= 1; strip more coefficients");
  return std::log(ratio);
}

cplx prufer_wronskian_cmv(const CmvPruferState &u1, const CmvPruferState &u2)
{
  if (u1.n != u2.n)
    fail(Errc::misaligned, "Prufer states at different indices");
  return 2.0 * I * u1.omega * u1.R * u2.R * std::sin(u1.eta - u2.eta);
}

Spinor cmv_initial_u(cplx kappa, const SqrtBranch &branch)
{
  return {kappa, std::conj(kappa), 0, branch};
}

cplx kappa_from_lambda(cplx lambda)
{
  if (!(std::abs(std::abs(lambda) - 1.0) <= Tolerance::exact))
    fail(Errc::disk_violation, "lambda must lie on the unit circle");
  // conj(kappa) (kappa, conj kappa) = (1, conj(kappa)^2) = (1, lambda).
  return std::conj(std::sqrt(lambda));
}

}  // namespace prufer
