// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prufer/floquet.hpp"
#include "prufer/perturbation.hpp"

namespace prufer
{

enum class Setting
{
  jacobi,
  cmv
};

// Energies (Jacobi) or arc angles theta of z = e^{i theta} (CMV). Points used by experiments must
// satisfy |Delta| < 2 - margin.
struct GridSpec
{
  Grid range;
  std::vector<double> values;
  double margin = 1e-3;

  std::vector<double> points() const;
};

struct MonteCarloOptions
{
  double c_max = 10.0;
  // Square-summable comparison scale for the escape test of divergent scales.
  std::optional<PowerScale> reference_scale;
  double escape_factor = 2.0;
};

struct WvnOptions
{
  double threshold = 0.1;
  std::vector<long> M{0, 1};
};

struct LambdaCase
{
  std::vector<cplx> f;
  double kappa = 0.0;
};

struct SbpCase
{
  std::vector<cplx> f{1.0};
  long M = 1;
  double phi = 1.0;
  Envelope sigma;
  double energy = 0.5;  // or theta for CMV
  long N = 100000;
  // eta from a Prufer trajectory under the configured perturbation; otherwise eta = 0.
  bool from_trajectory = true;
};

struct LambdaOptions
{
  std::vector<LambdaCase> cases;
  long random_count = 0;
  long q_max = 8;
  std::vector<SbpCase> sbp;
};

struct DflyOptions
{
  long samples = 100;
  double radius = 0.95;
};

struct ExperimentConfig
{
  std::string command;  // optional; must match the requested command when set
  Setting setting = Setting::jacobi;
  std::optional<PeriodicJacobi> jacobi;
  std::optional<PeriodicVerblunsky> verblunsky;
  PerturbationSpec perturbation = NoPerturbation{};
  GridSpec grid;
  long horizon = 100000;
  long trials = 200;
  std::uint64_t seed = 1;
  std::vector<long> checkpoints;
  long strip = 0;
  long record_every = 1000;
  long check_every = 1000;
  double tolerance = 1e-7;
  cplx initial{1.0, 0.0};  // Z(1) (Jacobi) or kappa in u(0) = (kappa, conj kappa) (CMV)
  std::string reference = "floquet";  // Jacobi: "floquet" or "unit_wronskian"
  MonteCarloOptions monte_carlo;
  WvnOptions wvn;
  LambdaOptions lambda;
  DflyOptions dfly;
  std::string output;
  std::string format = "csv";

  bool cmv() const { return setting == Setting::cmv; }
  const PeriodicJacobi &jacobi_background() const;
  const PeriodicVerblunsky &cmv_background() const;
};

ExperimentConfig config_from_json(const nlohmann::json &j);
ExperimentConfig load_config(const std::string &path);
ExperimentConfig parse_config(const std::string &text);

}  // namespace prufer
