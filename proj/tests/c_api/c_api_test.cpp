// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "prufer/prufer.h"

namespace
{

const char *free_band_scan = R"({"schema": 1, "command": "band-scan",
  "background": {"a": [1.0], "b": [0.0]},
  "grid": {"min": -3.0, "max": 3.0, "points": 61, "margin": 0.0}})";

}  // namespace

TEST_CASE("version and null handling")
{
  CHECK(std::string(prufer_version()) == "0.1.0");
  CHECK(prufer_config_parse(nullptr, nullptr) == PRUFER_ERR_ARGUMENT);
  CHECK(std::string(prufer_last_error_kind()) == "argument");
  CHECK(prufer_table_rows(nullptr) == 0);
  prufer_config_free(nullptr);
  prufer_table_free(nullptr);
}

TEST_CASE("malformed configuration maps to a validation status")
{
  prufer_config *cfg = nullptr;
  CHECK(prufer_config_parse("{\"schema\": 1, \"bogus\": 3}", &cfg) == PRUFER_ERR_VALIDATION);
  CHECK(cfg == nullptr);
  CHECK(std::string(prufer_last_error_kind()) == "invalid_spec");
  CHECK(prufer_config_parse("not json", &cfg) == PRUFER_ERR_VALIDATION);
  CHECK(prufer_config_load("/nonexistent/config.json", &cfg) == PRUFER_ERR_IO);
}

TEST_CASE("band scan through the C interface")
{
  prufer_config *cfg = nullptr;
  REQUIRE(prufer_config_parse(free_band_scan, &cfg) == PRUFER_OK);
  prufer_table *t = nullptr;
  REQUIRE(prufer_run(cfg, "band-scan", 1, &t) == PRUFER_OK);
  REQUIRE(t != nullptr);
  CHECK(prufer_table_rows(t) == 1);
  CHECK(prufer_table_columns(t) == 4);
  CHECK(std::string(prufer_table_column_name(t, 1)) == "lo");
  CHECK(prufer_table_column_name(t, 9) == nullptr);
  double lo = 0.0, hi = 0.0;
  REQUIRE(prufer_table_number(t, 0, 1, &lo) == PRUFER_OK);
  REQUIRE(prufer_table_number(t, 0, 2, &hi) == PRUFER_OK);
  CHECK(std::abs(lo + 2.0) < 1e-10);
  CHECK(std::abs(hi - 2.0) < 1e-10);
  CHECK(std::string(prufer_table_text(t, 0, 0)) == "0");
  CHECK(prufer_table_number(t, 5, 0, &lo) == PRUFER_ERR_ARGUMENT);

  const std::string path = "c_api_test_out.csv";
  REQUIRE(prufer_table_write(t, path.c_str(), "csv") == PRUFER_OK);
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str().rfind("band,lo,hi,width\r\n", 0) == 0);
  std::remove(path.c_str());
  CHECK(prufer_table_write(t, path.c_str(), "xml") == PRUFER_ERR_ARGUMENT);
  CHECK(prufer_table_write(t, "/nonexistent/dir/out.csv", "csv") == PRUFER_ERR_IO);
  prufer_table_free(t);

  CHECK(prufer_run(cfg, "trajectory", 1, &t) == PRUFER_ERR_VALIDATION);
  CHECK(t == nullptr);
  prufer_config_free(cfg);
}

TEST_CASE("band-edge energies are rejected")
{
  const char *json = R"({"schema": 1, "background": {"a": [1.0]},
    "grid": {"values": [2.5]}, "horizon": 10})";
  prufer_config *cfg = nullptr;
  REQUIRE(prufer_config_parse(json, &cfg) == PRUFER_OK);
  prufer_table *t = nullptr;
  CHECK(prufer_run(cfg, "trajectory", 1, &t) == PRUFER_ERR_VALIDATION);
  CHECK(std::string(prufer_last_error_kind()) == "band_edge");
  prufer_config_free(cfg);
}

TEST_CASE("seed override changes random output, identical seeds agree")
{
  const char *json = R"({"schema": 1, "command": "random-mc",
    "background": {"a": [1.0]},
    "perturbation": {"kind": "random", "b": {"amplitude": 0.5, "exponent": 0.7}},
    "grid": {"values": [0.5]}, "horizon": 200, "checkpoints": [100, 200], "trials": 8})";
  auto mean_at = [&](uint64_t seed) {
    prufer_config *cfg = nullptr;
    REQUIRE(prufer_config_parse(json, &cfg) == PRUFER_OK);
    REQUIRE(prufer_config_set_seed(cfg, seed) == PRUFER_OK);
    prufer_table *t = nullptr;
    REQUIRE(prufer_run(cfg, "random-mc", 1, &t) == PRUFER_OK);
    double m = 0.0;
    REQUIRE(prufer_table_number(t, 1, 4, &m) == PRUFER_OK);
    prufer_table_free(t);
    prufer_config_free(cfg);
    return m;
  };
  CHECK(mean_at(3) == mean_at(3));
  CHECK(mean_at(3) != mean_at(4));
}

TEST_CASE("numeric helpers")
{
  const double a[] = {1.0, 1.0}, b[] = {0.0, 0.0};
  double d = 0.0;
  REQUIRE(prufer_jacobi_discriminant(a, b, 2, 1.5, &d) == PRUFER_OK);
  CHECK(d == doctest::Approx(1.5 * 1.5 - 2.0).epsilon(1e-12));

  double k = 0.0, omega = 0.0, phi = 0.0;
  REQUIRE(prufer_jacobi_floquet(a, b, 1, 1.0, &k, &omega, &phi) == PRUFER_OK);
  CHECK(omega == doctest::Approx(2.0 * std::sin(std::acos(0.5))));
  CHECK(phi == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(prufer_jacobi_floquet(a, b, 1, 3.0, &k, &omega, &phi) == PRUFER_ERR_VALIDATION);

  const double fr[] = {1.0}, fi[] = {0.0};
  double gr[1], gi[1];
  REQUIRE(prufer_lambda_kappa(fr, fi, 1, 3.141592653589793, gr, gi) == PRUFER_OK);
  CHECK(std::abs(gr[0] - 0.5) < 1e-15);
  CHECK(std::abs(gi[0]) < 1e-15);
  CHECK(prufer_lambda_kappa(fr, fi, 1, 0.0, gr, gi) == PRUFER_ERR_VALIDATION);
  CHECK(std::string(prufer_last_error_kind()) == "resonance");

  double r = 1.0;
  REQUIRE(prufer_dfly_residual(0.3, 0.1, -0.2, 0.4, 1.0, &r) == PRUFER_OK);
  CHECK(r < 1e-12);
}
