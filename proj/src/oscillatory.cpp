// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace prufer
{

PeriodicSequence::PeriodicSequence(std::vector<cplx> v) : values(std::move(v))
{
  if (values.empty())
    fail(Errc::invalid_spec, "periodic sequence needs q >= 1 values");
  for (cplx x : values)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      fail(Errc::invalid_spec, "periodic sequence values must be finite");
}

cplx PeriodicSequence::operator()(long n) const
{
  const long q = period();
  long r = n % q;
  if (r < 0)
    r += q;
  return values[static_cast<std::size_t>(r)];
}

double PeriodicSequence::sup() const
{
  double s = 0.0;
  for (cplx x : values)
    s = std::max(s, std::abs(x));
  return s;
}

double small_divisor(double kappa, long q)
{
  return std::abs(std::polar(1.0, kappa * static_cast<double>(q)) - 1.0);
}

PeriodicSequence lambda_kappa(const PeriodicSequence &f, double kappa)
{
  const long q = f.period();
  const double d = small_divisor(kappa, q);
  if (!(d >= resonance_tolerance))
    fail(Errc::resonance, "kappa q is within the resonance window of 2 pi Z (|e^{i kappa q} - 1| = " +
                              std::to_string(d) + ")");
  cplx s{};
  for (long n = 1; n <= q; ++n)
    s += std::polar(1.0, kappa * static_cast<double>(n)) * f(n);
  std::vector<cplx> g(static_cast<std::size_t>(q));
  g[0] = s / (std::polar(1.0, kappa * static_cast<double>(q)) - 1.0);
  const cplx back = std::polar(1.0, -kappa);
  for (long n = 1; n < q; ++n)
    g[static_cast<std::size_t>(n)] = back * g[static_cast<std::size_t>(n - 1)] + f(n);
  return PeriodicSequence(std::move(g));
}

double lambda_residual(const PeriodicSequence &f, const PeriodicSequence &g, double kappa)
{
  double worst = 0.0;
  for (long n = 1; n <= f.period(); ++n)
  {
    const cplx en = std::polar(1.0, kappa * static_cast<double>(n));
    const cplx em = std::polar(1.0, kappa * static_cast<double>(n - 1));
    worst = std::max(worst, std::abs(en * g(n) - em * g(n - 1) - en * f(n)));
  }
  return worst;
}

std::pair<double, double> lambda_norm_bound(const PeriodicSequence &f, double kappa)
{
  const PeriodicSequence g = lambda_kappa(f, kappa);
  const long q = f.period();
  return {g.sup(), static_cast<double>(q) * f.sup() / small_divisor(kappa, q)};
}

SbpResult sbp_residual(const PeriodicSequence &f, long M, double phi, const Envelope &sigma,
                       std::span<const double> eta, double k, long N)
{
  if (N < 1)
    fail(Errc::out_of_range, "sbp_residual needs N >= 1");
  if (static_cast<long>(eta.size()) < N + 1)
    fail(Errc::out_of_range, "eta must cover n = 1..N+1");
  const bool decays = sigma.kind == Envelope::Kind::power     ? sigma.gamma > 0.0
                      : sigma.kind == Envelope::Kind::periodic ? sigma.sup() == 0.0
                                                               : true;
  if (!decays)
    fail(Errc::invalid_spec, "sigma must decay to zero");

  SbpResult r;
  r.kappa = -2.0 * static_cast<double>(M) * k - phi;
  const PeriodicSequence g = lambda_kappa(f, r.kappa);
  const double m2 = 2.0 * static_cast<double>(M);
  cplx sum{};
  for (long n = 1; n <= N; ++n)
  {
    const double s = sigma(n);
    const double en = eta[static_cast<std::size_t>(n - 1)];
    const double en1 = eta[static_cast<std::size_t>(n)];
    // e^{-i phi n} e^{-2iM k n} = e^{i kappa n}
    const cplx osc = std::polar(s, r.kappa * static_cast<double>(n) - m2 * en);
    sum += osc * (f(n) - g(n) * (1.0 - std::polar(1.0, m2 * (en - en1))));
    r.lhs = std::max(r.lhs, std::abs(sum));
  }
  r.rhs = 4.0 * g.sup() * sigma.variation();
  return r;
}

}  // namespace prufer
