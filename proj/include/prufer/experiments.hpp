// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "prufer/config.hpp"
#include "prufer/floquet.hpp"
#include "prufer/jacobi_prufer.hpp"
#include "prufer/szego_prufer.hpp"
#include "prufer/table.hpp"

namespace prufer
{

struct TrajectoryOptions
{
  long horizon = 1000;
  long record_every = 1;
  long check_every = 1000;  // cross-validation stride against the direct recursion
  double tolerance = 1e-7;  // relative error budget of a cross-validation
  long strip = 0;           // branch violations at n <= strip are only flagged
  bool enforce_branch = true;
  cplx initial{1.0, 0.0};    // Z(1) (Jacobi) or kappa (CMV)
  double omega_override = 0.0;  // nonzero: Prufer steps use this omega (fault injection)
  bool keep_series = false;     // keep R(n) and eta(n) for every n
};

struct TrajectoryRecord
{
  long n = 0;
  double R = 0.0;
  double eta = 0.0;
  double logR = 0.0;
  int branch_flag = 0;
  double check_error = -1.0;  // negative when no check ran at n
  double direct_log_scale = 0.0;
};

struct TrajectoryResult
{
  std::vector<TrajectoryRecord> records;
  std::vector<double> R, eta;  // indexed from the first trajectory index when kept
  long first = 1;
  double max_check_error = 0.0;
  long checks = 0;
  long branch_flags = 0;
  double sup_R = 0.0;
  double final_R = 0.0;

  double R_at(long n) const { return R.at(static_cast<std::size_t>(n - first)); }
};

// Jacobi: Prufer variables relative to `ref`, from Z(1) = initial through n = horizon, compared
// to direct iteration of the perturbed recursion. Throws contract_violation when a check fails.
TrajectoryResult jacobi_trajectory(const JacobiCoefficients &coeffs, double E,
                                   const JacobiReference &ref, const TrajectoryOptions &opt);

// CMV: reference v = Floquet spinor (|omega| = 1), u(0) = (kappa, conj kappa), n = 0..horizon.
TrajectoryResult cmv_trajectory(const VerblunskySequence &alpha, const FloquetData &floquet,
                                const TrajectoryOptions &opt);

JacobiReference make_reference(const ExperimentConfig &cfg, double E);
FloquetData cmv_floquet(const ExperimentConfig &cfg, double theta);

// Grid points checked against |Delta| < 2 - margin.
std::vector<double> band_interior_points(const ExperimentConfig &cfg);

struct RunResult
{
  Table table;
  int status = 0;  // 0 ok, 2 validation failure, 3 numerical-contract failure
  std::string message;
};

Table band_scan_table(const ExperimentConfig &cfg);
Table trajectory_table(const ExperimentConfig &cfg, int threads);
Table random_mc_table(const ExperimentConfig &cfg, int threads);
Table wvn_scan_table(const ExperimentConfig &cfg, int threads);
RunResult lambda_check(const ExperimentConfig &cfg);
RunResult dfly_check(const ExperimentConfig &cfg);
RunResult validate_spec_table(const ExperimentConfig &cfg);

// Dispatch by command name: band-scan, trajectory, random-mc, wvn-scan, lambda-check, dfly-check,
// validate-spec. threads <= 0 uses the default pool size.
RunResult run_experiment(const ExperimentConfig &cfg, const std::string &command, int threads);

const std::vector<std::string> &command_names();

}  // namespace prufer
