// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "prufer/error.hpp"
#include "prufer/szego_prufer.hpp"

using namespace prufer;

namespace
{

SqrtBranch random_branch() { return SqrtBranch::from_angle(test::uniform(0.0, two_pi)); }

double spinor_distance(const Spinor &a, const Spinor &b)
{
  return std::abs(a.v1 - b.v1) + std::abs(a.v2 - b.v2);
}

// Z(n+1)/Z(n) by stepping u = Z v + conj(Z) v* directly and re-decomposing.
cplx oracle_ratio(cplx Z, const Spinor &v, cplx alpha, cplx alpha_prime, double omega)
{
  const Spinor u1 = szego_step(reconstruct_u(Z, v), alpha + alpha_prime);
  const Spinor v1 = szego_step(v, alpha);
  return z_decompose(u1, v1, omega) / Z;
}

}  // namespace

TEST_CASE("z_decompose and reconstruct_u")
{
  const auto b = SqrtBranch::from_angle(0.9);
  const Spinor v{0.3, cplx(1.0, 0.5), 0, b};
  const double omega = cmv_omega(v);
  const Spinor vs = conjugation_star(v);

  Spinor sum = v;
  sum.v1 = v.v1 + vs.v1;
  sum.v2 = v.v2 + vs.v2;
  CHECK(std::abs(z_decompose(sum, v, omega) - 1.0) < 1e-15);

  Spinor diff = v;
  diff.v1 = I * v.v1 - I * vs.v1;
  diff.v2 = I * v.v2 - I * vs.v2;
  CHECK(std::abs(z_decompose(diff, v, omega) - I) < 1e-15);

  const auto zero = reconstruct_u(0.0, v);
  CHECK(zero.v1 == cplx(0.0));
  CHECK(zero.v2 == cplx(0.0));
  const auto one = reconstruct_u(1.0, Spinor{0.0, 1.0, 0, b});
  CHECK(one.v1 == cplx(1.0));
  CHECK(one.v2 == cplx(1.0));

  for (int i = 0; i < 1000; ++i)
  {
    const auto br = random_branch();
    Spinor w{test::in_disk(1.0), test::in_disk(1.0), 0, br};
    if (std::abs(std::norm(w.v2) - std::norm(w.v1)) < 1e-3)
      continue;
    const cplx Z = test::in_disk(3.0);
    const auto u = reconstruct_u(Z, w);
    CHECK(spinor_distance(conjugation_star(u), u) < 1e-14 * (1.0 + std::abs(Z)));
    const double om = cmv_omega(w);
    CHECK(std::abs(z_decompose(u, w, om) - Z) < 1e-12 * (1.0 + std::abs(Z)) / std::abs(om));
  }
  CHECK_THROWS_AS(cmv_omega(Spinor{1.0, 1.0, 0, b}), Error);
  CHECK_THROWS_AS(z_decompose(sum, v, 0.0), Error);
}

TEST_CASE("rho_prime")
{
  CHECK(rho_prime(cplx(0.3, 0.2), 0.0) == 0.0);
  CHECK(std::abs(rho_prime(0.0, 0.6) + 0.2) < 1e-15);
  CHECK_THROWS_AS(rho_prime(0.5, 0.6), Error);

  // Third-order expansion in delta = |alpha + alpha'|^2 - |alpha|^2 of
  // rho (sqrt(1 - delta / rho^2) - 1).
  for (int i = 0; i < 1000; ++i)
  {
    const cplx a = test::in_disk(0.2), ap = test::in_disk(0.1);
    const double rho = std::sqrt(1.0 - std::norm(a));
    const double d = std::norm(a + ap) - std::norm(a);
    const double x = d / (rho * rho);
    const double series = rho * (-x / 2.0 - x * x / 8.0 - x * x * x / 16.0);
    CHECK(std::abs(rho_prime(a, ap) - series) < 1e-6);
  }
}

TEST_CASE("prufer_step_szego: free background single step")
{
  const auto b = SqrtBranch::from_z(I);
  const Spinor v{0.0, 1.0, 0, b};
  const double omega = cmv_omega(v);
  CHECK(omega == 1.0);
  const auto st = make_cmv_prufer_state(1.0, 0, omega);
  const cplx r = prufer_ratio_szego(st, v, 0.0, 0.1);
  CHECK(std::abs(r - oracle_ratio(1.0, v, 0.0, 0.1, omega)) < 1e-12);
  CHECK(prufer_ratio_szego(st, v, cplx(0.4, -0.2), 0.0) == cplx(1.0));
  const auto next = prufer_step_szego(st, v, 0.0, 0.1);
  CHECK(next.n == 1);
  CHECK(std::abs(next.Z - r) < 1e-15);
}

TEST_CASE("prufer_step_szego agrees with direct stepping at random points")
{
  for (int i = 0; i < 500; ++i)
  {
    const auto b = random_branch();
    const Spinor v{test::in_disk(0.5), 1.0 + test::in_disk(0.3), i % 7, b};
    const double omega = cmv_omega(v);
    const cplx a = test::in_disk(0.7), ap = test::in_disk(0.2);
    if (std::abs(a + ap) >= 0.95)
      continue;
    const cplx Z = test::in_disk(2.0) + 0.05;
    const auto st = make_cmv_prufer_state(Z, v.n, omega);
    CHECK(std::abs(prufer_ratio_szego(st, v, a, ap) - oracle_ratio(Z, v, a, ap, omega)) < 1e-12);
  }
}

TEST_CASE("prufer_step_szego reduces to classical OPUC Prufer variables")
{
  // Free background, v(n) = (z^{n/2}, 0), u(0) = (1, 1): Z(n) = z^{-n} phi_n.
  for (int i = 0; i < 20; ++i)
  {
    const auto b = random_branch();
    const cplx ap = test::in_disk(0.5);
    const long n = i;
    const Spinor v{std::pow(b.sqrt_z, double(n)), 0.0, n, b};
    const double omega = cmv_omega(v);
    const cplx Z = test::in_disk(2.0) + 0.1;
    const auto st = make_cmv_prufer_state(Z, n, omega);
    const double rho = std::sqrt(1.0 - std::norm(ap));
    const cplx classical =
        (1.0 - std::conj(ap) * std::polar(1.0, -(n + 1) * b.theta) * std::conj(Z) / Z) / rho;
    CHECK(std::abs(prufer_ratio_szego(st, v, 0.0, ap) - classical) < 1e-12);
  }
}

TEST_CASE("log_ratio_cmv")
{
  const auto s = make_cmv_prufer_state(cplx(1.0, 1.0), 0, 1.0);
  const auto same = make_cmv_prufer_state(s.Z, 1, 1.0);
  CHECK(log_ratio_cmv(s, same) == cplx(0.0));
  auto flipped = make_cmv_prufer_state(-s.Z, 1, 1.0);
  CHECK_THROWS_AS(log_ratio_cmv(s, flipped), Error);

  // Telescoping along a trajectory.
  const auto b = SqrtBranch::from_angle(2.2);
  Spinor v{0.0, 1.0, 0, b};
  auto st = make_cmv_prufer_state(cplx(0.3, -0.6), 0, cmv_omega(v));
  const auto start = st;
  cplx sum = 0.0;
  for (long n = 0; n < 2000; ++n)
  {
    const cplx a = 0.3 * std::polar(1.0, 0.7 * n);
    const cplx ap = 0.1 * std::polar(1.0, double(n)) / double((n + 1) * (n + 1));
    const auto next = prufer_step_szego(st, v, a, ap);
    sum += log_ratio_cmv(st, next);
    st = next;
    v = szego_step(v, a);
  }
  CHECK(std::abs(sum - std::log(st.Z / start.Z) -
                 cplx(0.0, two_pi * std::round((sum.imag() - std::arg(st.Z / start.Z)) / two_pi))) <
        1e-10);
  CHECK(std::abs(sum.imag() - (st.eta - start.eta)) < 1e-10);
}

TEST_CASE("CMV Wronskian in Prufer variables")
{
  const auto b = SqrtBranch::from_angle(4.0);
  Spinor v{0.2, 1.0, 0, b};
  const double omega = cmv_omega(v);
  Spinor u1 = cmv_initial_u(cplx(0.8, 0.3), b), u2 = cmv_initial_u(cplx(-0.2, 1.1), b);
  const cplx w0 = spinor_wronskian(u1, u2);
  for (long n = 0; n < 300; ++n)
  {
    const cplx a = 0.4 * std::polar(1.0, 1.3 * n);
    const cplx ap = 0.2 * std::polar(1.0, 0.5 * n) / double(n + 1);
    const auto s1 = make_cmv_prufer_state(z_decompose(u1, v, omega), n, omega);
    const auto s2 = make_cmv_prufer_state(z_decompose(u2, v, omega), n, omega);
    const cplx W = spinor_wronskian(u1, u2);
    CHECK(std::abs(W - prufer_wronskian_cmv(s1, s2)) < 1e-10);
    CHECK(std::abs(W - w0) < 1e-10);
    u1 = szego_step(u1, a + ap);
    u2 = szego_step(u2, a + ap);
    v = szego_step(v, a);
  }
}

TEST_CASE("initial data: star-fixed trajectory and the (1, lambda) convention")
{
  const auto b = SqrtBranch::from_angle(1.1);
  const cplx lambda = std::polar(1.0, 2.3);
  const cplx kappa = kappa_from_lambda(lambda);
  CHECK(std::abs(std::conj(kappa * kappa) - lambda) < 1e-15);
  Spinor u = cmv_initial_u(kappa, b);
  Spinor w{1.0, lambda, 0, b};
  for (long n = 0; n < 200; ++n)
  {
    CHECK(spinor_distance(conjugation_star(u), u) < 1e-12);
    CHECK(std::abs(w.v1 - std::conj(kappa) * u.v1) < 1e-12);
    CHECK(std::abs(w.v2 - std::conj(kappa) * u.v2) < 1e-12);
    const cplx a = 0.5 * std::polar(1.0, 0.9 * n);
    u = szego_step(u, a);
    w = szego_step(w, a);
  }
}
