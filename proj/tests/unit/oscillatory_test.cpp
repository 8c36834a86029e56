// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "prufer/error.hpp"
#include "prufer/experiments.hpp"
#include "prufer/oscillatory.hpp"

using namespace prufer;

namespace
{

PeriodicSequence random_f(long q)
{
  std::vector<cplx> v;
  for (long j = 0; j < q; ++j)
    v.push_back(test::in_disk(1.0));
  return PeriodicSequence(v);
}

double random_kappa(long q)
{
  for (;;)
  {
    const double k = test::uniform(-10.0, 10.0);
    if (small_divisor(k, q) > 0.05)
      return k;
  }
}

}  // namespace

TEST_CASE("lambda_kappa closed forms")
{
  const auto g0 = lambda_kappa(PeriodicSequence({0.0, 0.0, 0.0}), 0.7);
  for (cplx v : g0.values)
    CHECK(v == cplx(0.0));

  const auto g = lambda_kappa(PeriodicSequence({1.0}), pi);
  CHECK(std::abs(g(0) - 0.5) < 1e-15);
  CHECK(std::abs(g(17) - 0.5) < 1e-15);

  CHECK_THROWS_AS(lambda_kappa(PeriodicSequence({1.0, 2.0, 3.0}), two_pi / 3.0), Error);
  CHECK_THROWS_AS(lambda_kappa(PeriodicSequence({1.0}), 0.0), Error);
  CHECK(small_divisor(pi, 1) == doctest::Approx(2.0));
}

TEST_CASE("lambda_kappa solves its defining equation")
{
  for (int i = 0; i < 1000; ++i)
  {
    const long q = 1 + i % 8;
    const auto f = random_f(q);
    const double kappa = random_kappa(q);
    const auto g = lambda_kappa(f, kappa);
    // Independent residual at a few shifted indices, beyond one period.
    for (long n = -3; n <= 2 * q; ++n)
    {
      const cplx lhs = std::polar(1.0, kappa * n) * g(n) - std::polar(1.0, kappa * (n - 1)) * g(n - 1);
      CHECK(std::abs(lhs - std::polar(1.0, kappa * n) * f(n)) < 1e-12 * (1.0 + f.sup()) / small_divisor(kappa, q));
    }
    CHECK(lambda_residual(f, g, kappa) < 1e-12 / small_divisor(kappa, q));
  }
}

TEST_CASE("lambda_norm_bound")
{
  const auto tight = lambda_norm_bound(PeriodicSequence({1.0}), pi);
  CHECK(tight.first == doctest::Approx(0.5));
  CHECK(tight.second == doctest::Approx(0.5));

  const auto zero = lambda_norm_bound(PeriodicSequence({0.0, 0.0}), 0.3);
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);

  for (int i = 0; i < 100; ++i)
  {
    const long q = 1 + i % 6;
    const auto [lhs, rhs] = lambda_norm_bound(random_f(q), random_kappa(q));
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("sbp_residual")
{
  std::vector<double> eta(100002, 0.3);
  Envelope zero;
  zero.kind = Envelope::Kind::array;
  const auto r0 = sbp_residual(PeriodicSequence({1.0}), 1, 0.4, zero, eta, 0.9, 1000);
  CHECK(r0.lhs == 0.0);
  CHECK(r0.rhs == 0.0);

  // M = 0: partial sums of e^{-i phi n} / n against 4 ||Lambda_phi 1||_inf Var(1/n).
  for (long i = 0; i < long(eta.size()); ++i)
    eta[std::size_t(i)] = test::uniform(-5.0, 5.0);
  Envelope harmonic;
  harmonic.gamma = 1.0;
  for (double phi : {0.3, 1.0, 2.5})
  {
    const auto r = sbp_residual(PeriodicSequence({1.0}), 0, phi, harmonic, eta, 0.7, 100000);
    CHECK(r.holds());
    CHECK(r.rhs == doctest::Approx(4.0 * lambda_norm_bound(PeriodicSequence({1.0}), -phi).first));
    // Brute-force partial sums of the M = 0 expression.
    cplx s = 0.0;
    double sup = 0.0;
    for (long n = 1; n <= 100000; ++n)
    {
      s += std::polar(1.0, -phi * n) / double(n);
      sup = std::max(sup, std::abs(s));
    }
    CHECK(r.lhs <= sup + 1e-9);
  }
  CHECK_THROWS_AS(sbp_residual(PeriodicSequence({1.0}), 1, 0.4, harmonic, eta, 0.9, 200000),
                  Error);
}

TEST_CASE("sbp_residual with a Prufer phase from a decaying oscillatory perturbation")
{
  const double k = 1.1, E = 2.0 * std::cos(k);
  OscillatorySpec spec;
  OscChannel ch;
  Envelope env;
  env.gamma = 1.0;
  ch.terms = {{cplx(0.0, -0.5), -0.5, env}, {cplx(0.0, 0.5), 0.5, env}};
  spec.b = ch;
  const auto bg = PeriodicJacobi::free();
  const auto pert = jacobi_perturbation(spec, RealSequence::constant(1.0, 1), 0, 0);
  const long N = 20000;
  const auto coeffs = bg.coefficients(pert.a, pert.b).cached(N + 2);
  TrajectoryOptions opt;
  opt.horizon = N + 1;
  opt.record_every = N;
  opt.keep_series = true;
  const auto res = jacobi_trajectory(coeffs, E, JacobiReference::from_floquet(floquet_solution(bg, E)), opt);
  std::vector<double> eta(res.eta.begin(), res.eta.begin() + (N + 1));
  for (double phi : {0.5, -0.5})
  {
    const auto r = sbp_residual(PeriodicSequence({1.0}), 1, phi, env, eta, k, N);
    CHECK(r.holds());
  }
}
