// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/jacobi_prufer.hpp"

#include <utility>

#include <cmath>
#include <string>

namespace prufer
{

namespace
{

void check_index(const PhaseSequence &p, long n)
{
  if (n < p.first || n > p.last())
    fail(Errc::out_of_range, "phase sequence has no sample at n = " + std::to_string(n));
}

void check_omega(double omega)
{
  if (!(std::abs(omega) > Tolerance::exact) || !std::isfinite(omega))
    fail(Errc::degenerate, "omega vanishes: phi and conj(phi) are linearly dependent");
}

}  // namespace

double PhaseSequence::gamma_at(long n) const
{
  check_index(*this, n);
  return gamma[static_cast<std::size_t>(n - first)];
}

double PhaseSequence::modulus_at(long n) const
{
  check_index(*this, n);
  return modulus[static_cast<std::size_t>(n - first)];
}

cplx PhaseSequence::phi_at(long n) const { return std::polar(modulus_at(n), gamma_at(n)); }

PhaseSequence phase_decompose(std::span<const cplx> phi, long first)
{
  PhaseSequence out;
  out.first = first;
  out.gamma.reserve(phi.size());
  out.modulus.reserve(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
  {
    const double m = std::abs(phi[i]);
    if (!(m > 0.0))
      fail(Errc::degenerate, "phi vanishes at n = " + std::to_string(first + long(i)));
    const double arg = std::arg(phi[i]);
    if (i == 0)
      out.gamma.push_back(wrap_two_pi(arg));
    else
    {
      const double prev = out.gamma.back();
      out.gamma.push_back(prev + wrap_two_pi(arg - prev));
    }
    out.modulus.push_back(m);
  }
  return out;
}

PhasePair PhasePair::from_window(const SolutionWindow &phi)
{
  PhasePair p;
  p.n = phi.n;
  p.mod_prev = std::abs(phi.prev);
  p.mod_curr = std::abs(phi.curr);
  if (!(p.mod_prev > 0.0) || !(p.mod_curr > 0.0))
    fail(Errc::degenerate, "background solution vanishes at n = " + std::to_string(phi.n));
  p.gamma_prev = std::arg(phi.prev);
  p.gamma_curr = std::arg(phi.curr);
  return p;
}

PhasePair PhasePair::from_sequence(const PhaseSequence &phase, long n)
{
  PhasePair p;
  p.n = n;
  p.mod_prev = phase.modulus_at(n - 1);
  p.mod_curr = phase.modulus_at(n);
  p.gamma_prev = phase.gamma_at(n - 1);
  p.gamma_curr = phase.gamma_at(n);
  return p;
}

double omega_constant(const JacobiCoefficients &coeffs, std::span<const cplx> phi, long first,
                      double tol)
{
  if (phi.size() < 2)
    fail(Errc::out_of_range, "omega needs at least two samples");
  if (first < 0)
    fail(Errc::out_of_range, "solution samples start at n = 0");
  double omega = 0.0;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i)
  {
    const long n = first + static_cast<long>(i);
    const double w = 2.0 * coeffs.a(n + 1) * (std::conj(phi[i]) * phi[i + 1]).imag();
    if (i == 0)
    {
      omega = w;
      check_omega(omega);
    }
    else if (std::abs(w - omega) > tol * std::abs(omega))
      fail(Errc::contract_violation, "Wronskian of conj(phi), phi drifts at n = " +
                                         std::to_string(n) + "; is phi a solution?");
  }
  return omega;
}

double omega_from_phases(const JacobiCoefficients &coeffs, const PhaseSequence &phase, long n)
{
  return 2.0 * phase.modulus_at(n) * phase.modulus_at(n + 1) * coeffs.a(n + 1) *
         std::sin(phase.gamma_at(n + 1) - phase.gamma_at(n));
}

PruferState make_prufer_state(cplx Z, long n, double omega)
{
  return make_prufer_state(Z, n, omega, std::arg(Z));
}

PruferState make_prufer_state(cplx Z, long n, double omega, double eta_unwrapped)
{
  check_omega(omega);
  const double R = std::abs(Z);
  if (!(R > 0.0) || !std::isfinite(R))
    fail(Errc::degenerate, "Prufer variable Z must be finite and nonzero");
  return {Z, R, eta_unwrapped, n, omega};
}

SolutionWindow WeightedPair::to_window(const JacobiCoefficients &coeffs) const
{
  return {n, prev, weighted_curr / coeffs.total_a(n)};
}

cplx z_from_solution(const SolutionWindow &u, const SolutionWindow &phi,
                     const JacobiCoefficients &coeffs, double omega)
{
  check_omega(omega);
  if (u.n != phi.n)
    fail(Errc::misaligned, "u and phi windows at different indices");
  const double scale = std::abs(u.prev) + std::abs(u.curr);
  if (std::abs(u.prev.imag()) + std::abs(u.curr.imag()) > Tolerance::exact * scale)
    fail(Errc::invalid_spec, "the perturbed solution u must be real");
  // W_mixed(conj(phi), u)(n-1) with samples at n-1 and n.
  const long n = u.n;
  const cplx w = coeffs.total_a(n) * std::conj(phi.prev) * u.curr.real() -
                 coeffs.a(n) * std::conj(phi.curr) * u.prev.real();
  return 2.0 / omega * w;
}

WeightedPair solution_from_z(cplx Z, const SolutionWindow &phi, const JacobiCoefficients &coeffs)
{
  return {phi.n, (Z * coeffs.a(phi.n) * phi.curr).imag(), (Z * phi.prev).imag()};
}

namespace
{

// Z(n+1) = Z + A Z + B conj(Z); the ratio is 1 + A + B e^{-2i eta}.
std::pair<cplx, cplx> ratio_coefficients(const PruferState &state, const JacobiCoefficients &coeffs,
                                         const PhasePair &phase)
{
  if (phase.n != state.n)
    fail(Errc::misaligned, "phase data and Prufer state at different indices");
  const long n = state.n;
  const double an = coeffs.a(n);
  const double apn = coeffs.pert_a(n);
  const double at = coeffs.total_a(n);
  const double bp = coeffs.pert_b(n + 1);
  const double r = an / at;
  const double mm = phase.mod_prev * phase.mod_curr;
  const double m1 = phase.mod_curr * phase.mod_curr;
  const double g0 = phase.gamma_prev, g1 = phase.gamma_curr;
  const cplx c = I / state.omega;

  const cplx A = c * (r * bp * m1 + apn * mm * (std::polar(1.0, g0 - g1) + r * std::polar(1.0, g1 - g0)));
  const cplx B = -c * (r * bp * m1 * std::polar(1.0, -2.0 * g1) +
                       (1.0 + r) * apn * mm * std::polar(1.0, -(g0 + g1)));
  return {A, B};
}

}  // namespace

cplx prufer_ratio_jacobi(const PruferState &state, const JacobiCoefficients &coeffs,
                         const PhasePair &phase)
{
  const auto [A, B] = ratio_coefficients(state, coeffs, phase);
  // e^{-2i eta(n)} = conj(Z)/Z
  return 1.0 + A + B * (std::conj(state.Z) / state.Z);
}

PruferState prufer_step_jacobi(const PruferState &state, const JacobiCoefficients &coeffs,
                               const PhasePair &phase)
{
  if (!(std::abs(state.Z) > 0.0))
    fail(Errc::degenerate, "Z(n) = 0");
  const auto [A, B] = ratio_coefficients(state, coeffs, phase);
  PruferState next = state;
  // Real-linear form avoids dividing by Z and multiplying back.
  next.Z = state.Z + (A * state.Z + B * std::conj(state.Z));
  next.R = std::abs(next.Z);
  next.eta = state.eta + std::arg(next.Z / state.Z);
  next.n = state.n + 1;
  if (!(next.R > 0.0) || !std::isfinite(next.R))
    fail(Errc::degenerate, "Prufer amplitude left (0, inf) at n = " + std::to_string(next.n));
  return next;
}

PruferState prufer_step_jacobi(const PruferState &state, const JacobiCoefficients &coeffs,
                               const PhaseSequence &phase)
{
  return prufer_step_jacobi(state, coeffs, PhasePair::from_sequence(phase, state.n));
}

cplx principal_log_ratio(cplx ratio)
{
  if (!(std::abs(ratio - 1.0) < 1.0))
    fail(Errc::branch_violation, "|Z(n+1)/Z(n) - 1| >= 1; strip more coefficients");
  return std::log(ratio);
}

cplx log_ratio(const PruferState &before, const PruferState &after)
{
  if (after.n != before.n + 1)
    fail(Errc::misaligned, "log_ratio needs consecutive states");
  return principal_log_ratio(after.Z / before.Z);
}

double prufer_wronskian_jacobi(const PruferState &u1, const PruferState &u2)
{
  if (u1.n != u2.n)
    fail(Errc::misaligned, "Prufer states at different indices");
  return 0.5 * u1.omega * u1.R * u2.R * std::sin(u1.eta - u2.eta);
}

}  // namespace prufer
