// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "prufer/rng.hpp"
#include "prufer/sequence.hpp"

namespace prufer
{

// Channels. Jacobi: a'_n = f_a(n) and b'_{n+1} = f_b(n) for n >= 1 (b'_1 never enters the
// recursion and is 0). CMV: alpha'_n = f_alpha(n) for n >= 0.
enum class Channel
{
  a = 0,
  b = 1,
  alpha = 2
};

// amplitude * max(n + shift, 1)^{-exponent}
struct PowerScale
{
  double amplitude = 0.0;
  double exponent = 1.0;
  double shift = 0.0;

  double operator()(long n) const;
  bool square_summable() const { return amplitude == 0.0 || exponent > 0.5; }
};

// Deterministic summable sequence: a power law times cos(frequency n) (real channels) or
// e^{i frequency n} (alpha), or explicit values starting at the first index of the channel.
struct L1Channel
{
  PowerScale scale;
  double frequency = 0.0;
  std::optional<std::vector<cplx>> values;

  cplx operator()(long n, long first) const;
};

struct L1Spec
{
  std::optional<L1Channel> a, b, alpha;
};

struct RandomSpec
{
  Distribution distribution = Distribution::rademacher;
  std::optional<PowerScale> a, b, alpha;
};

// Envelope sequence sigma_n, n >= 1.
struct Envelope
{
  enum class Kind
  {
    power,    // n^{-gamma}
    array,    // explicit values from n = 1, zero afterwards
    periodic  // explicit values repeated forever
  } kind = Kind::power;
  double gamma = 1.0;
  std::vector<double> values;

  double operator()(long n) const;
  double sup() const;
  double variation() const;       // may be +inf
  double lp_norm(double p) const;  // may be +inf
};

struct OscTerm
{
  cplx c;
  double phi = 0.0;
  Envelope envelope;
};

// Infinite family c_l = scale * ratio^l (l >= 1), phi_l = phi0 + l * dphi, shared envelope. With
// conjugate_pairs every term comes with its conjugate (conj(c_l), -phi_l).
struct OscSeries
{
  double scale = 1.0;
  double ratio = 0.5;
  double phi0 = 0.0, dphi = 0.0;
  bool conjugate_pairs = false;
  Envelope envelope;
};

struct OscChannel
{
  std::vector<OscTerm> terms;
  std::optional<OscSeries> series;
};

struct OscillatorySpec
{
  int p = 2;
  double beta = 0.5;
  std::optional<OscChannel> a, b, alpha;
};

struct NoPerturbation
{
};

using PerturbationSpec = std::variant<NoPerturbation, L1Spec, RandomSpec, OscillatorySpec>;

// Terms of a channel after truncating the series where the tail of sum |c_l| ||sigma^(l)||_inf
// drops below 1e-14.
struct ExpandedChannel
{
  std::vector<OscTerm> terms;
  long truncated_at = 0;  // number of series terms kept (per conjugate side)
  double dropped_tail = 0.0;
};

ExpandedChannel expand(const OscChannel &ch);

// sum_l c_l e^{-i n phi_l} sigma^(l)_n
cplx sample_oscillatory(const ExpandedChannel &ch, long n);
cplx sample_oscillatory(const OscChannel &ch, long n);

struct RandomDraw
{
  cplx value;
  int repairs = 0;  // rejected draws before `value`
};

// Realization of one channel. `background` is a_n (channel a, positivity a_n + a'_n > 0) or
// alpha_n (channel alpha, |alpha_n + alpha'_n| < 1); channel b needs none.
RandomDraw sample_random(const RandomSpec &spec, Channel ch, std::uint64_t seed,
                         std::uint64_t trial, long n, cplx background = 0.0);

struct ConditionCheck
{
  std::string name;
  double value = 0.0;
  bool pass = false;
  std::string detail;
};

struct ValidationReport
{
  std::vector<ConditionCheck> checks;
  bool pass() const;
};

// `cmv` selects the channel set; Jacobi oscillatory specs must be conjugate-closed.
ValidationReport validate_spec(const PerturbationSpec &spec, bool cmv);

// Lazily evaluated (and on request cached) perturbation sequences for one realization.
struct JacobiPerturbation
{
  RealSequence a = RealSequence::constant(0.0, 1);
  RealSequence b = RealSequence::constant(0.0, 1);
};

JacobiPerturbation jacobi_perturbation(const PerturbationSpec &spec, const RealSequence &background_a,
                                       std::uint64_t seed, std::uint64_t trial);
ComplexSequence cmv_perturbation(const PerturbationSpec &spec,
                                 const ComplexSequence &background_alpha, std::uint64_t seed,
                                 std::uint64_t trial);

// Mean square E|f(n)|^2 of a channel at n (for the random class; |f(n)|^2 otherwise).
double channel_mean_square(const PerturbationSpec &spec, Channel ch, long n);

PerturbationSpec perturbation_from_json(const nlohmann::json &j);
nlohmann::ordered_json perturbation_to_json(const PerturbationSpec &spec);

}  // namespace prufer
