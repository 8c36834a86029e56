// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace prufer
{

using nlohmann::json;

namespace
{

void check_keys(const json &j, std::initializer_list<const char *> allowed, const std::string &where)
{
  if (!j.is_object())
    fail(Errc::invalid_spec, where + " must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key()))
      fail(Errc::invalid_spec, "unknown key \"" + it.key() + "\" in " + where);
}

template <typename T>
T get(const json &j, const char *key, T fallback)
{
  if (!j.contains(key))
    return fallback;
  try
  {
    return j.at(key).get<T>();
  }
  catch (const json::exception &)
  {
    fail(Errc::invalid_spec, std::string("\"") + key + "\" has the wrong type");
  }
}

cplx complex_value(const json &j)
{
  if (j.is_number())
    return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(Errc::invalid_spec, "complex values are numbers or [re, im] pairs");
}

std::vector<cplx> complex_list(const json &j)
{
  if (!j.is_array())
    fail(Errc::invalid_spec, "expected an array of complex values");
  std::vector<cplx> out;
  for (const auto &x : j)
    out.push_back(complex_value(x));
  return out;
}

Envelope envelope_from(const json &j)
{
  // Reuse the perturbation parser through a one-term oscillatory spec.
  json spec = {{"kind", "oscillatory"},
               {"alpha", json::array({{{"c", 0.0}, {"phi", 0.0}, {"envelope", j}}})}};
  const auto s = std::get<OscillatorySpec>(perturbation_from_json(spec));
  return s.alpha->terms.front().envelope;
}

GridSpec grid_from(const json &j)
{
  check_keys(j, {"min", "max", "points", "values", "margin"}, "grid");
  GridSpec g;
  g.margin = get(j, "margin", 1e-3);
  if (j.contains("values"))
    g.values = get(j, "values", std::vector<double>{});
  else
  {
    g.range.min = get(j, "min", 0.0);
    g.range.max = get(j, "max", 0.0);
    g.range.points = get(j, "points", 0L);
    if (g.range.points < 1 || !(g.range.min <= g.range.max))
      fail(Errc::invalid_spec, "grid needs min <= max and points >= 1");
  }
  if (!(g.margin >= 0.0 && g.margin < 2.0))
    fail(Errc::invalid_spec, "grid margin must lie in [0, 2)");
  return g;
}

}  // namespace

std::vector<double> GridSpec::points() const
{
  return values.empty() ? range.values() : values;
}

const PeriodicJacobi &ExperimentConfig::jacobi_background() const
{
  if (!jacobi)
    fail(Errc::invalid_spec, "configuration has no Jacobi background");
  return *jacobi;
}

const PeriodicVerblunsky &ExperimentConfig::cmv_background() const
{
  if (!verblunsky)
    fail(Errc::invalid_spec, "configuration has no Verblunsky background");
  return *verblunsky;
}

ExperimentConfig config_from_json(const json &j)
{
  check_keys(j,
             {"schema", "command", "setting", "background", "perturbation", "grid", "horizon",
              "trials", "seed", "checkpoints", "strip", "record_every", "check_every", "tolerance",
              "initial", "reference", "monte_carlo", "wvn", "lambda", "dfly", "output", "format"},
             "configuration");
  if (!j.contains("schema") || j.at("schema") != 1)
    fail(Errc::invalid_spec, "configuration needs \"schema\": 1");

  ExperimentConfig c;
  c.command = get(j, "command", std::string{});
  const auto setting = get(j, "setting", std::string("jacobi"));
  if (setting == "jacobi")
    c.setting = Setting::jacobi;
  else if (setting == "cmv")
    c.setting = Setting::cmv;
  else
    fail(Errc::invalid_spec, "setting must be \"jacobi\" or \"cmv\"");

  const json bg = j.value("background", json::object());
  if (c.cmv())
  {
    check_keys(bg, {"alpha"}, "background");
    c.verblunsky.emplace(bg.contains("alpha") ? complex_list(bg.at("alpha"))
                                              : std::vector<cplx>{0.0});
  }
  else
  {
    check_keys(bg, {"a", "b"}, "background");
    auto a = get(bg, "a", std::vector<double>{1.0});
    auto b = get(bg, "b", std::vector<double>(a.size(), 0.0));
    c.jacobi.emplace(std::move(a), std::move(b));
  }

  if (j.contains("perturbation"))
    c.perturbation = perturbation_from_json(j.at("perturbation"));
  if (j.contains("grid"))
    c.grid = grid_from(j.at("grid"));

  c.horizon = get(j, "horizon", c.horizon);
  c.trials = get(j, "trials", c.trials);
  c.seed = get(j, "seed", c.seed);
  c.checkpoints = get(j, "checkpoints", std::vector<long>{});
  c.strip = get(j, "strip", c.strip);
  c.record_every = get(j, "record_every", c.record_every);
  c.check_every = get(j, "check_every", c.check_every);
  c.tolerance = get(j, "tolerance", c.tolerance);
  if (j.contains("initial"))
    c.initial = complex_value(j.at("initial"));
  c.reference = get(j, "reference", c.reference);
  c.output = get(j, "output", c.output);
  c.format = get(j, "format", c.format);

  if (c.horizon < 1 || c.trials < 1 || c.record_every < 1 || c.check_every < 1 || c.strip < 0)
    fail(Errc::invalid_spec, "horizon, trials, record_every, check_every must be >= 1, strip >= 0");
  for (long n : c.checkpoints)
    if (n < 1 || n > c.horizon)
      fail(Errc::invalid_spec, "checkpoints must lie in [1, horizon]");
  if (c.reference != "floquet" && c.reference != "unit_wronskian")
    fail(Errc::invalid_spec, "reference must be \"floquet\" or \"unit_wronskian\"");
  if (c.initial == cplx{})
    fail(Errc::degenerate, "initial Prufer data must be nonzero");

  if (j.contains("monte_carlo"))
  {
    const json &m = j.at("monte_carlo");
    check_keys(m, {"c_max", "reference_scale", "escape_factor"}, "monte_carlo");
    c.monte_carlo.c_max = get(m, "c_max", c.monte_carlo.c_max);
    c.monte_carlo.escape_factor = get(m, "escape_factor", c.monte_carlo.escape_factor);
    if (m.contains("reference_scale"))
    {
      const json &s = m.at("reference_scale");
      check_keys(s, {"amplitude", "exponent", "shift"}, "reference_scale");
      c.monte_carlo.reference_scale =
          PowerScale{get(s, "amplitude", 1.0), get(s, "exponent", 1.0), get(s, "shift", 0.0)};
    }
  }
  if (j.contains("wvn"))
  {
    const json &w = j.at("wvn");
    check_keys(w, {"threshold", "M"}, "wvn");
    c.wvn.threshold = get(w, "threshold", c.wvn.threshold);
    c.wvn.M = get(w, "M", c.wvn.M);
  }
  if (j.contains("lambda"))
  {
    const json &l = j.at("lambda");
    check_keys(l, {"cases", "random_count", "q_max", "sbp"}, "lambda");
    for (const auto &x : l.value("cases", json::array()))
    {
      check_keys(x, {"f", "kappa"}, "lambda case");
      c.lambda.cases.push_back({complex_list(x.at("f")), get(x, "kappa", 0.0)});
    }
    c.lambda.random_count = get(l, "random_count", 0L);
    c.lambda.q_max = get(l, "q_max", 8L);
    for (const auto &x : l.value("sbp", json::array()))
    {
      check_keys(x, {"f", "M", "phi", "envelope", "energy", "N", "from_trajectory"}, "sbp case");
      SbpCase s;
      if (x.contains("f"))
        s.f = complex_list(x.at("f"));
      s.M = get(x, "M", s.M);
      s.phi = get(x, "phi", s.phi);
      if (x.contains("envelope"))
        s.sigma = envelope_from(x.at("envelope"));
      s.energy = get(x, "energy", s.energy);
      s.N = get(x, "N", s.N);
      s.from_trajectory = get(x, "from_trajectory", s.from_trajectory);
      if (s.N < 1)
        fail(Errc::invalid_spec, "sbp N must be >= 1");
      c.lambda.sbp.push_back(std::move(s));
    }
  }
  if (j.contains("dfly"))
  {
    const json &d = j.at("dfly");
    check_keys(d, {"samples", "radius"}, "dfly");
    c.dfly.samples = get(d, "samples", c.dfly.samples);
    c.dfly.radius = get(d, "radius", c.dfly.radius);
    if (!(c.dfly.radius > 0.0 && c.dfly.radius < 1.0))
      fail(Errc::invalid_spec, "dfly radius must lie in (0, 1)");
  }
  return c;
}

ExperimentConfig parse_config(const std::string &text)
{
  json j;
  try
  {
    j = json::parse(text);
  }
  catch (const json::exception &e)
  {
    fail(Errc::invalid_spec, std::string("configuration is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig load_config(const std::string &path)
{
  std::ifstream is(path);
  if (!is)
    fail(Errc::io, "cannot open configuration " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

}  // namespace prufer
