// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "prufer/error.hpp"
#include "prufer/perturbation.hpp"
#include "prufer/rng.hpp"

using namespace prufer;

namespace
{

const ConditionCheck *find(const ValidationReport &r, const std::string &name)
{
  for (const auto &c : r.checks)
    if (c.name == name)
      return &c;
  return nullptr;
}

OscTerm term(cplx c, double phi, Envelope e = {})
{
  return {c, phi, std::move(e)};
}

}  // namespace

TEST_CASE("keyed draws are deterministic and well spread")
{
  const DrawKey k{7, 3, 1, 42, 0};
  CHECK(draw_bits(k) == draw_bits(k));
  DrawKey other = k;
  other.n = 43;
  CHECK(draw_bits(k) != draw_bits(other));
  CHECK(draw_bits(k, 0) != draw_bits(k, 1));

  double sum = 0.0, sq = 0.0;
  const int count = 200000;
  for (int i = 0; i < count; ++i)
  {
    const double u = draw_unit(DrawKey{1, 0, 0, i, 0});
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double x = draw_standard(Distribution::uniform, DrawKey{1, 0, 0, i, 0});
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / count) < 0.01);
  CHECK(std::abs(sq / count - 1.0) < 0.01);
  std::set<double> signs;
  for (int i = 0; i < 100; ++i)
    signs.insert(draw_standard(Distribution::rademacher, DrawKey{2, 0, 0, i, 0}));
  CHECK(signs == std::set<double>{-1.0, 1.0});
}

TEST_CASE("sample_random")
{
  RandomSpec spec;
  spec.distribution = Distribution::uniform;
  spec.b = PowerScale{0.0, 0.7, 0.0};
  for (long n = 1; n < 100; ++n)
    CHECK(sample_random(spec, Channel::b, 5, 0, n).value == cplx(0.0));

  spec.b = PowerScale{1.0, 0.7, 0.0};
  CHECK(sample_random(spec, Channel::b, 5, 2, 17).value == sample_random(spec, Channel::b, 5, 2, 17).value);
  CHECK(sample_random(spec, Channel::b, 5, 2, 17).value != sample_random(spec, Channel::b, 6, 2, 17).value);

  // Monte-Carlo estimate of sum_n E[b'_n^2] against the closed-form partial sum of s_n^2.
  spec.distribution = Distribution::rademacher;
  double empirical = 0.0, analytic = 0.0;
  for (long n = 1; n <= 1000000; ++n)
  {
    empirical += std::norm(sample_random(spec, Channel::b, 11, 0, n).value);
    analytic += std::pow(double(n), -1.4);
  }
  CHECK(std::abs(empirical / analytic - 1.0) < 0.02);

  spec.distribution = Distribution::uniform;
  const long trials = 4000, horizon = 1000;
  empirical = analytic = 0.0;
  for (long n = 1; n <= horizon; ++n)
    analytic += std::pow(double(n), -1.4);
  for (long t = 0; t < trials; ++t)
    for (long n = 1; n <= horizon; ++n)
      empirical += std::norm(sample_random(spec, Channel::b, 11, std::uint64_t(t), n).value);
  CHECK(std::abs(empirical / double(trials) / analytic - 1.0) < 0.02);

  SUBCASE("positivity repair for a")
  {
    RandomSpec big;
    big.distribution = Distribution::uniform;
    big.a = PowerScale{2.0, 0.0, 0.0};
    int repaired = 0;
    for (long n = 1; n <= 500; ++n)
    {
      const auto d = sample_random(big, Channel::a, 1, 0, n, 1.0);
      CHECK(1.0 + d.value.real() > 0.0);
      repaired += d.repairs;
    }
    CHECK(repaired > 0);
  }
  SUBCASE("disk repair for alpha")
  {
    RandomSpec big;
    big.distribution = Distribution::uniform;
    big.alpha = PowerScale{1.5, 0.0, 0.0};
    for (long n = 0; n <= 500; ++n)
      CHECK(std::abs(0.5 + sample_random(big, Channel::alpha, 1, 0, n, 0.5).value) < 1.0);
  }
}

TEST_CASE("sample_oscillatory")
{
  const double beta = 0.8, gamma = 0.6;
  Envelope env;
  env.gamma = gamma;
  OscChannel wvn;
  wvn.terms = {term(cplx(0.0, -0.5), -beta, env), term(cplx(0.0, 0.5), beta, env)};
  for (long n = 1; n <= 100; ++n)
  {
    const cplx v = sample_oscillatory(wvn, n);
    CHECK(std::abs(v - std::sin(n * beta) / std::pow(double(n), gamma)) < 1e-14);
  }

  OscChannel zero;
  zero.terms = {term(0.0, 1.0), term(0.0, -2.0)};
  CHECK(sample_oscillatory(zero, 5) == cplx(0.0));

  OscChannel two;
  Envelope arr;
  arr.kind = Envelope::Kind::array;
  arr.values = {1.0, 0.5, 0.25};
  two.terms = {term(cplx(0.3, 0.1), 0.7), term(cplx(-0.2, 0.4), 2.1, arr)};
  for (long n = 1; n <= 100; ++n)
  {
    const double s1 = 1.0 / n;
    const double s2 = n <= 3 ? arr.values[std::size_t(n - 1)] : 0.0;
    const cplx direct = cplx(0.3, 0.1) * std::polar(1.0, -0.7 * n) * s1 +
                        cplx(-0.2, 0.4) * std::polar(1.0, -2.1 * n) * s2;
    CHECK(std::abs(sample_oscillatory(two, n) - direct) < 1e-14);
  }
}

TEST_CASE("series expansion truncates at a negligible tail")
{
  OscChannel ch;
  ch.series = OscSeries{1.0, 0.5, 0.3, 0.2, true, Envelope{}};
  const auto ex = expand(ch);
  CHECK(ex.truncated_at > 10);
  CHECK(ex.dropped_tail < 1e-13);
  CHECK(ex.terms.size() == std::size_t(2 * ex.truncated_at));
  const cplx v = sample_oscillatory(ex, 4);
  CHECK(std::abs(v.imag()) < 1e-14);  // conjugate pairs give a real value
}

TEST_CASE("envelope functionals")
{
  Envelope power;
  power.gamma = 0.5;
  CHECK(power.variation() == doctest::Approx(1.0));
  CHECK(power.sup() == 1.0);
  CHECK(std::isinf(power.lp_norm(2.0)));
  power.gamma = 1.0;
  CHECK(power.lp_norm(2.0) == doctest::Approx(pi / std::sqrt(6.0)).epsilon(1e-6));

  Envelope alternating;
  alternating.kind = Envelope::Kind::periodic;
  alternating.values = {-1.0, 1.0};
  CHECK(std::isinf(alternating.variation()));
}

TEST_CASE("validate_spec")
{
  SUBCASE("monotone envelope and geometric coefficients pass")
  {
    OscillatorySpec s;
    s.p = 2;
    s.beta = 0.5;
    OscChannel ch;
    ch.series = OscSeries{1.0, 0.5, 0.4, 0.1, true, Envelope{Envelope::Kind::power, 0.7, {}}};
    s.b = ch;
    const auto r = validate_spec(s, false);
    CHECK(r.pass());
    REQUIRE(find(r, "tau") != nullptr);
    CHECK(find(r, "tau")->value == doctest::Approx(1.0));
    // Two conjugate sides of sum 2^{-l/2}.
    CHECK(find(r, "coefficient_sum")->value ==
          doctest::Approx(2.0 * (1.0 / (std::sqrt(2.0) - 1.0))));
    CHECK(1.0 / (std::sqrt(2.0) - 1.0) == doctest::Approx(2.414).epsilon(1e-3));
  }
  SUBCASE("alternating envelope fails the variation condition")
  {
    OscillatorySpec s;
    Envelope alt;
    alt.kind = Envelope::Kind::periodic;
    alt.values = {-1.0, 1.0};
    OscChannel ch;
    ch.terms = {term(0.5, 0.3, alt), term(0.5, -0.3, alt)};
    s.b = ch;
    const auto r = validate_spec(s, false);
    CHECK(!r.pass());
    CHECK(!find(r, "tau")->pass);
  }
  SUBCASE("beta range and conjugate closure")
  {
    OscillatorySpec s;
    s.p = 3;
    s.beta = 0.6;
    OscChannel ch;
    ch.terms = {term(cplx(0.0, 1.0), 0.3)};
    s.b = ch;
    const auto r = validate_spec(s, false);
    CHECK(!find(r, "beta")->pass);
    CHECK(!find(r, "conjugate_closed.b")->pass);
    CHECK(validate_spec(s, true).checks.front().pass == false);  // wrong channel set
  }
  SUBCASE("random scales")
  {
    RandomSpec s;
    s.b = PowerScale{1.0, 0.4, 0.0};
    CHECK(!validate_spec(s, false).pass());
    s.b = PowerScale{1.0, 0.7, 0.0};
    CHECK(validate_spec(s, false).pass());
  }
  SUBCASE("l1")
  {
    L1Spec s;
    s.a = L1Channel{PowerScale{1.0, 2.0, 0.0}, 0.0, {}};
    const auto r = validate_spec(s, false);
    CHECK(r.pass());
    CHECK(find(r, "l1_norm.a")->value == doctest::Approx(pi * pi / 6.0).epsilon(1e-6));
    s.a = L1Channel{PowerScale{1.0, 1.0, 0.0}, 0.0, {}};
    CHECK(!validate_spec(s, false).pass());
  }
}

TEST_CASE("perturbation sequences and indexing")
{
  L1Spec s;
  s.a = L1Channel{PowerScale{1.0, 2.0, 0.0}, 0.0, {}};
  s.b = L1Channel{PowerScale{1.0, 2.0, 0.0}, 0.0, {}};
  const auto p = jacobi_perturbation(s, RealSequence::constant(1.0, 1), 0, 0);
  CHECK(p.a(1) == doctest::Approx(1.0));
  CHECK(p.a(3) == doctest::Approx(1.0 / 9.0));
  CHECK(p.b(1) == 0.0);                         // b'_1 never enters
  CHECK(p.b(3) == doctest::Approx(1.0 / 4.0));  // b'_{n+1} = f_b(n)

  L1Spec c;
  c.alpha = L1Channel{PowerScale{0.5, 2.0, 1.0}, 1.0, {}};
  const auto q = cmv_perturbation(c, ComplexSequence::constant(0.0, 0), 0, 0);
  CHECK(std::abs(q(0) - 0.5) < 1e-15);
  CHECK(std::abs(q(2) - 0.5 / 9.0 * std::polar(1.0, 2.0)) < 1e-15);
  CHECK_THROWS_AS(jacobi_perturbation(c, RealSequence::constant(1.0, 1), 0, 0), Error);
}

TEST_CASE("perturbation JSON roundtrip")
{
  const char *texts[] = {
      R"({"kind": "none"})",
      R"({"kind": "l1", "a": {"amplitude": 1.0, "exponent": 2.0}, "b": {"values": [0.1, -0.2]}})",
      R"({"kind": "random", "distribution": "uniform", "b": {"amplitude": 0.5, "exponent": 0.7}})",
      R"({"kind": "oscillatory", "p": 2, "beta": 0.5, "b": [
           {"c": [0.0, -0.5], "phi": -1.0, "envelope": {"kind": "power", "gamma": 1.0}},
           {"c": [0.0, 0.5], "phi": 1.0, "envelope": {"kind": "array", "values": [1, 0.5]}}]})"};
  for (const char *t : texts)
  {
    const auto spec = perturbation_from_json(nlohmann::json::parse(t));
    const auto j = perturbation_to_json(spec);
    const auto again = perturbation_to_json(perturbation_from_json(nlohmann::json::parse(j.dump())));
    CHECK(j == again);
  }
  CHECK_THROWS_AS(perturbation_from_json(nlohmann::json::parse(R"({"kind": "l1", "zzz": 1})")), Error);
  CHECK_THROWS_AS(perturbation_from_json(nlohmann::json::parse(R"({"kind": "weird"})")), Error);
}
