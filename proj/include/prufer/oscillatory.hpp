// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "prufer/perturbation.hpp"
#include "prufer/types.hpp"

namespace prufer
{

// values[j] = f(j); f(n) = values[n mod q] for every integer n.
struct PeriodicSequence
{
  std::vector<cplx> values;

  explicit PeriodicSequence(std::vector<cplx> values);
  long period() const { return static_cast<long>(values.size()); }
  cplx operator()(long n) const;
  double sup() const;
};

// |e^{i kappa q} - 1| below this is a resonance.
inline constexpr double resonance_tolerance = 1e-8;

double small_divisor(double kappa, long q);

// The unique q-periodic g with e^{i kappa n} g(n) - e^{i kappa (n-1)} g(n-1) = e^{i kappa n} f(n).
PeriodicSequence lambda_kappa(const PeriodicSequence &f, double kappa);

// max over n = 1..q of the defining-equation residual.
double lambda_residual(const PeriodicSequence &f, const PeriodicSequence &g, double kappa);

// (||Lambda_kappa f||_inf, q ||f||_inf / |e^{i kappa q} - 1|)
std::pair<double, double> lambda_norm_bound(const PeriodicSequence &f, double kappa);

struct SbpResult
{
  double lhs = 0.0;  // max over N' <= N of the partial-sum modulus
  double rhs = 0.0;  // 4 ||Lambda_kappa f||_inf Var(sigma)
  double kappa = 0.0;
  bool holds() const { return lhs <= rhs + 1e-12; }
};

// Partial sums over n = 1..N' of
//   f(n) e^{-i phi n} e^{-2iM(kn + eta(n))} sigma_n
//   - (Lambda_kappa f)(n) e^{-i phi n} e^{-2iM(kn + eta(n))} sigma_n (1 - e^{2iM(eta(n) - eta(n+1))})
// with kappa = -2Mk - phi. eta[j] holds eta(j + 1) and must cover n = 1..N+1.
SbpResult sbp_residual(const PeriodicSequence &f, long M, double phi, const Envelope &sigma,
                       std::span<const double> eta, double k, long N);

}  // namespace prufer
