// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "prufer/error.hpp"
#include "prufer/experiments.hpp"

using namespace prufer;

namespace
{

ExperimentConfig parse(const std::string &text) { return parse_config(text); }

const char *free_trajectory = R"({"schema": 1, "background": {"a": [1.0], "b": [0.0]},
  "grid": {"values": [-1.0, 0.5]}, "horizon": 500, "record_every": 50, "check_every": 50})";

}  // namespace

TEST_CASE("table CSV and JSONL output")
{
  Table t({"x", "n", "label"});
  t.add({0.1, std::int64_t(3), std::string("a,b")});
  t.add({std::numeric_limits<double>::quiet_NaN(), std::int64_t(-4), std::string("plain")});
  t.add({1e300, std::int64_t(0), std::string("q\"uote")});

  std::ostringstream csv;
  write_csv(csv, t);
  CHECK(csv.str().rfind("x,n,label\r\n", 0) == 0);
  CHECK(csv.str().find("nan") != std::string::npos);
  CHECK(csv.str().find("\"a,b\"") != std::string::npos);

  std::ostringstream js;
  write_jsonl(js, Table({"x", "n", "label"}));
  CHECK(js.str().empty());

  Table finite({"x", "n", "label"});
  finite.add({0.1, std::int64_t(3), std::string("a,b")});
  finite.add({-2.5e-17, std::int64_t(-4), std::string("q\"uote")});
  std::ostringstream jl;
  write_jsonl(jl, finite);
  std::istringstream in(jl.str());
  CHECK(read_jsonl(in) == finite);

  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_from_string("jsonl") == Format::jsonl);
  CHECK_THROWS_AS(format_from_string("xml"), Error);
  CHECK(finite.number(1, "x") == -2.5e-17);
  CHECK_THROWS_AS(finite.column("nope"), Error);
  CHECK_THROWS_AS(finite.add({1.0}), Error);
}

TEST_CASE("empty table gives a header-only CSV")
{
  std::ostringstream os;
  write_csv(os, Table({"band", "lo", "hi"}));
  CHECK(os.str() == "band,lo,hi\r\n");
  CHECK_THROWS_AS(write_table("/nonexistent/dir/x.csv", Table({"a"}), Format::csv), Error);
}

TEST_CASE("shipped configurations parse and validate")
{
  for (const auto &entry : std::filesystem::directory_iterator(PRUFER_CONFIG_DIR))
  {
    if (entry.path().extension() != ".json")
      continue;
    CAPTURE(entry.path().string());
    const auto cfg = load_config(entry.path().string());
    CHECK(!cfg.command.empty());
    const auto &names = command_names();
    CHECK(std::find(names.begin(), names.end(), cfg.command) != names.end());
    // The negative control is deliberately not square summable.
    const bool control = entry.path().stem() == "random-mc-control";
    if (cfg.command != "validate-spec")
      CHECK(validate_spec(cfg.perturbation, cfg.cmv()).pass() != control);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
  CHECK_THROWS_AS(parse(R"({"schema": 2})"), Error);
  CHECK_THROWS_AS(parse(R"({"schema": 1, "horizon": -3})"), Error);
}

TEST_CASE("command dispatch")
{
  auto cfg = parse(free_trajectory);
  CHECK_THROWS_AS(run_experiment(cfg, "no-such-command", 1), Error);
  cfg.command = "band-scan";
  CHECK_THROWS_AS(run_experiment(cfg, "trajectory", 1), Error);
}

TEST_CASE("trajectory: zero perturbation keeps R constant")
{
  const auto cfg = parse(free_trajectory);
  const auto t = trajectory_table(cfg, 1);
  REQUIRE(t.rows.size() > 4);
  for (std::size_t r = 0; r < t.rows.size(); ++r)
  {
    CHECK(std::abs(t.number(r, "R") - t.number(0, "R")) < 1e-12);
    CHECK(t.number(r, "branch_flag") == 0.0);
  }
  auto cmv = parse(R"({"schema": 1, "setting": "cmv", "background": {"alpha": [[0.3, 0.1]]},
    "grid": {"values": [1.0, 4.0]}, "horizon": 400, "record_every": 100, "check_every": 100})");
  const auto tc = trajectory_table(cmv, 1);
  for (std::size_t r = 0; r < tc.rows.size(); ++r)
    if (tc.number(r, "theta") == tc.number(0, "theta"))
      CHECK(std::abs(tc.number(r, "R") - tc.number(0, "R")) < 1e-12);
}

TEST_CASE("trajectory: summable perturbation, R converges")
{
  auto cfg = parse(R"({"schema": 1, "background": {"a": [1.0], "b": [0.0]},
    "perturbation": {"kind": "l1", "a": {"amplitude": 1.0, "exponent": 2.0},
                     "b": {"amplitude": 1.0, "exponent": 2.0}},
    "grid": {"values": [0.5]}, "horizon": 20000, "record_every": 10000, "check_every": 1000})");
  const auto t = trajectory_table(cfg, 1);
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
  {
    if (t.number(r, "n") == 10000)
      r1 = t.number(r, "R");
    if (t.number(r, "n") == 20000)
      r2 = t.number(r, "R");
  }
  REQUIRE(r1 > 0.0);
  CHECK(std::abs(r2 - r1) < 1e-3 * r1);
}

TEST_CASE("trajectory: wrong omega is caught by cross-validation")
{
  const auto bg = PeriodicJacobi::free();
  const double E = 0.5;
  RealSequence pa = RealSequence::generated([](long n) { return 0.3 / (double(n) * n); }, 1);
  const auto coeffs = bg.coefficients(pa, pa);
  const auto ref = JacobiReference::from_floquet(floquet_solution(bg, E));
  TrajectoryOptions opt;
  opt.horizon = 200;
  opt.check_every = 10;
  CHECK_NOTHROW(jacobi_trajectory(coeffs, E, ref, opt));
  opt.omega_override = 1.5 * ref.omega;
  CHECK_THROWS_AS(jacobi_trajectory(coeffs, E, ref, opt), Error);
}

TEST_CASE("random-mc: zero scale leaves R^4 at its initial value")
{
  auto cfg = parse(R"({"schema": 1, "background": {"a": [1.0]},
    "perturbation": {"kind": "random", "b": {"amplitude": 0.0, "exponent": 0.7}},
    "grid": {"values": [0.5, -1.0]}, "checkpoints": [10, 100], "trials": 4,
    "initial": [2.0, 0.0]})");
  const auto t = random_mc_table(cfg, 1);
  REQUIRE(t.rows.size() == 4);
  for (std::size_t r = 0; r < t.rows.size(); ++r)
  {
    CHECK(t.number(r, "mean_R4") == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(t.number(r, "stderr_R4") == doctest::Approx(0.0));
  }
}

TEST_CASE("random-mc output is independent of the thread count")
{
  auto cfg = parse(R"({"schema": 1, "background": {"a": [1.0]},
    "perturbation": {"kind": "random", "b": {"amplitude": 0.5, "exponent": 0.7}},
    "grid": {"values": [0.5, -1.0]}, "checkpoints": [50, 200], "trials": 6, "seed": 9})");
  // Compared as text: unset columns hold NaN.
  auto csv = [&](int threads) {
    std::ostringstream os;
    write_csv(os, random_mc_table(cfg, threads));
    return os.str();
  };
  CHECK(csv(1) == csv(3));
}

TEST_CASE("wvn-scan limiting cases")
{
  const std::string base = R"({"schema": 1, "background": {"a": [1.0], "b": [0.0]},
    "grid": {"min": -1.5, "max": 1.5, "points": 7, "margin": 0.02}, "horizon": 3000,
    "check_every": 500, "perturbation": {"kind": "oscillatory", "p": 2, "beta": 0.5, "b": [
      {"c": [0.0, AMP_NEG], "phi": -1.0, "envelope": {"kind": "power", "gamma": GAMMA}},
      {"c": [0.0, AMP_POS], "phi": 1.0, "envelope": {"kind": "power", "gamma": GAMMA}}]}})";
  auto make = [&](const char *neg, const char *pos, const char *gamma) {
    std::string s = base;
    for (auto [key, val] : {std::pair{"AMP_NEG", neg}, {"AMP_POS", pos}, {"GAMMA", gamma},
                            {"GAMMA", gamma}})
      s.replace(s.find(key), std::string(key).size(), val);
    return parse(s);
  };
  SUBCASE("zero amplitude")
  {
    const auto t = wvn_scan_table(make("0.0", "0.0", "1.0"), 1);
    for (std::size_t r = 0; r < t.rows.size(); ++r)
    {
      CHECK(t.number(r, "sup_R") == doctest::Approx(t.number(r, "R_final")));
      CHECK(t.number(r, "flagged") == 0.0);
    }
  }
  SUBCASE("fast decay behaves like a summable perturbation")
  {
    const auto t = wvn_scan_table(make("-0.5", "0.5", "3.0"), 1);
    for (std::size_t r = 0; r < t.rows.size(); ++r)
    {
      CHECK(t.number(r, "flagged") == 0.0);
      CHECK(t.number(r, "sup_R") < 10.0);
    }
  }
}

TEST_CASE("band-edge energies are rejected")
{
  auto cfg = parse(R"({"schema": 1, "background": {"a": [1.0]}, "grid": {"values": [1.999]},
    "horizon": 10})");
  CHECK_THROWS_AS(band_interior_points(cfg), Error);
}
