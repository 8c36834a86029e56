// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>

namespace prufer
{

using nlohmann::json;
using nlohmann::ordered_json;

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double tail_cutoff = 1e-14;
constexpr int max_repairs = 1000;

// sum_{n >= 1} n^{-s} for s > 1: partial sum plus Euler-Maclaurin tail.
double zeta(double s)
{
  constexpr long N = 1000;
  double sum = 0.0;
  for (long n = N - 1; n >= 1; --n)
    sum += std::pow(static_cast<double>(n), -s);
  const double x = static_cast<double>(N);
  return sum + std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s) +
         s / 12.0 * std::pow(x, -s - 1.0);
}

// sum_{n >= first} scale(n)^power for a power-law scale; +inf when divergent.
double power_sum(const PowerScale &s, long first, double power)
{
  if (s.amplitude == 0.0)
    return 0.0;
  const double e = s.exponent * power;
  if (!(e > 1.0))
    return inf;
  constexpr long N = 100000;
  double sum = 0.0;
  for (long n = N; n >= first; --n)
    sum += std::pow(std::abs(s(n)), power);
  // Integral tail of amplitude^power * (n + shift)^{-e} beyond N.
  const double x = std::max(static_cast<double>(N) + s.shift + 0.5, 1.0);
  return sum + std::pow(std::abs(s.amplitude), power) * std::pow(x, 1.0 - e) / (e - 1.0);
}

void check_keys(const json &j, std::initializer_list<const char *> allowed, const char *where)
{
  if (!j.is_object())
    fail(Errc::invalid_spec, std::string(where) + " must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key()))
      fail(Errc::invalid_spec, std::string("unknown key \"") + it.key() + "\" in " + where);
}

double num(const json &j, const char *key, double fallback)
{
  if (!j.contains(key))
    return fallback;
  if (!j.at(key).is_number())
    fail(Errc::invalid_spec, std::string("\"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

cplx complex_value(const json &j)
{
  if (j.is_number())
    return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(Errc::invalid_spec, "complex values are numbers or [re, im] pairs");
}

ordered_json complex_json(cplx c) { return ordered_json::array({c.real(), c.imag()}); }

PowerScale scale_from(const json &j, const char *where)
{
  check_keys(j, {"amplitude", "exponent", "shift"}, where);
  PowerScale s{num(j, "amplitude", 1.0), num(j, "exponent", 1.0), num(j, "shift", 0.0)};
  if (!std::isfinite(s.amplitude) || !std::isfinite(s.exponent) || !std::isfinite(s.shift))
    fail(Errc::invalid_spec, std::string(where) + " has non-finite parameters");
  return s;
}

ordered_json scale_json(const PowerScale &s)
{
  return {{"amplitude", s.amplitude}, {"exponent", s.exponent}, {"shift", s.shift}};
}

Envelope envelope_from(const json &j)
{
  check_keys(j, {"kind", "gamma", "values"}, "envelope");
  Envelope e;
  const std::string kind = j.value("kind", std::string("power"));
  if (kind == "power")
  {
    e.kind = Envelope::Kind::power;
    e.gamma = num(j, "gamma", 1.0);
  }
  else if (kind == "array" || kind == "periodic")
  {
    e.kind = kind == "array" ? Envelope::Kind::array : Envelope::Kind::periodic;
    if (!j.contains("values") || !j.at("values").is_array())
      fail(Errc::invalid_spec, "envelope of kind " + kind + " needs \"values\"");
    e.values = j.at("values").get<std::vector<double>>();
    if (e.kind == Envelope::Kind::periodic && e.values.empty())
      fail(Errc::invalid_spec, "periodic envelope needs at least one value");
  }
  else
    fail(Errc::invalid_spec, "unknown envelope kind \"" + kind + "\"");
  return e;
}

ordered_json envelope_json(const Envelope &e)
{
  switch (e.kind)
  {
  case Envelope::Kind::power:
    return {{"kind", "power"}, {"gamma", e.gamma}};
  case Envelope::Kind::array:
    return {{"kind", "array"}, {"values", e.values}};
  case Envelope::Kind::periodic:
    return {{"kind", "periodic"}, {"values", e.values}};
  }
  return {};
}

OscTerm term_from(const json &j)
{
  check_keys(j, {"c", "phi", "envelope"}, "oscillatory term");
  if (!j.contains("c"))
    fail(Errc::invalid_spec, "oscillatory term needs \"c\"");
  OscTerm t;
  t.c = complex_value(j.at("c"));
  t.phi = num(j, "phi", 0.0);
  t.envelope = j.contains("envelope") ? envelope_from(j.at("envelope")) : Envelope{};
  return t;
}

OscChannel osc_channel_from(const json &j)
{
  OscChannel ch;
  const json *terms = &j;
  if (j.is_object())
  {
    check_keys(j, {"terms", "series"}, "oscillatory channel");
    terms = j.contains("terms") ? &j.at("terms") : nullptr;
    if (j.contains("series"))
    {
      const json &s = j.at("series");
      check_keys(s, {"scale", "ratio", "phi0", "dphi", "conjugate_pairs", "envelope"}, "series");
      OscSeries se;
      se.scale = num(s, "scale", 1.0);
      se.ratio = num(s, "ratio", 0.5);
      se.phi0 = num(s, "phi0", 0.0);
      se.dphi = num(s, "dphi", 0.0);
      se.conjugate_pairs = s.value("conjugate_pairs", false);
      se.envelope = s.contains("envelope") ? envelope_from(s.at("envelope")) : Envelope{};
      if (!(se.ratio >= 0.0 && se.ratio < 1.0))
        fail(Errc::invalid_spec, "series ratio must lie in [0, 1)");
      ch.series = se;
    }
  }
  if (terms)
  {
    if (!terms->is_array())
      fail(Errc::invalid_spec, "oscillatory terms must be an array");
    for (const auto &t : *terms)
      ch.terms.push_back(term_from(t));
  }
  return ch;
}

ordered_json osc_channel_json(const OscChannel &ch)
{
  ordered_json terms = ordered_json::array();
  for (const auto &t : ch.terms)
    terms.push_back(
        {{"c", complex_json(t.c)}, {"phi", t.phi}, {"envelope", envelope_json(t.envelope)}});
  ordered_json out = {{"terms", terms}};
  if (ch.series)
  {
    const auto &s = *ch.series;
    out["series"] = {{"scale", s.scale},           {"ratio", s.ratio},
                     {"phi0", s.phi0},             {"dphi", s.dphi},
                     {"conjugate_pairs", s.conjugate_pairs}, {"envelope", envelope_json(s.envelope)}};
  }
  return out;
}

L1Channel l1_channel_from(const json &j)
{
  L1Channel ch;
  if (j.is_object() && j.contains("values"))
  {
    check_keys(j, {"values"}, "l1 channel");
    std::vector<cplx> v;
    for (const auto &x : j.at("values"))
      v.push_back(complex_value(x));
    ch.values = std::move(v);
    return ch;
  }
  check_keys(j, {"amplitude", "exponent", "shift", "frequency"}, "l1 channel");
  ch.scale = {num(j, "amplitude", 1.0), num(j, "exponent", 2.0), num(j, "shift", 0.0)};
  ch.frequency = num(j, "frequency", 0.0);
  return ch;
}

ordered_json l1_channel_json(const L1Channel &ch)
{
  if (ch.values)
  {
    ordered_json v = ordered_json::array();
    for (cplx x : *ch.values)
      v.push_back(complex_json(x));
    return {{"values", v}};
  }
  auto out = scale_json(ch.scale);
  out["frequency"] = ch.frequency;
  return out;
}

bool same_envelope(const Envelope &x, const Envelope &y)
{
  return x.kind == y.kind && x.gamma == y.gamma && x.values == y.values;
}

bool conjugate_closed(const std::vector<OscTerm> &terms)
{
  constexpr double tol = 1e-15;
  for (const auto &t : terms)
  {
    const bool found = std::any_of(terms.begin(), terms.end(), [&](const OscTerm &s) {
      return std::abs(s.c - std::conj(t.c)) <= tol * std::max(1.0, std::abs(t.c)) &&
             std::abs(s.phi + t.phi) <= tol * std::max(1.0, std::abs(t.phi)) &&
             same_envelope(s.envelope, t.envelope);
    });
    if (!found)
      return false;
  }
  return true;
}

std::uint64_t channel_id(Channel ch) { return static_cast<std::uint64_t>(ch); }

const std::optional<PowerScale> &random_scale(const RandomSpec &s, Channel ch)
{
  return ch == Channel::a ? s.a : ch == Channel::b ? s.b : s.alpha;
}

template <typename T>
const std::optional<T> &pick(const std::optional<T> &a, const std::optional<T> &b,
                             const std::optional<T> &alpha, Channel ch)
{
  return ch == Channel::a ? a : ch == Channel::b ? b : alpha;
}

// f_ch(n) for a deterministic class, or the random draw; `bg` as in sample_random.
cplx channel_value(const PerturbationSpec &spec, Channel ch, long n, std::uint64_t seed,
                   std::uint64_t trial, cplx bg,
                   const std::shared_ptr<const ExpandedChannel> &expanded)
{
  if (std::holds_alternative<L1Spec>(spec))
  {
    const auto &s = std::get<L1Spec>(spec);
    const auto &c = pick(s.a, s.b, s.alpha, ch);
    return c ? (*c)(n, ch == Channel::alpha ? 0 : 1) : cplx{};
  }
  if (std::holds_alternative<RandomSpec>(spec))
    return sample_random(std::get<RandomSpec>(spec), ch, seed, trial, n, bg).value;
  if (std::holds_alternative<OscillatorySpec>(spec))
    return expanded ? sample_oscillatory(*expanded, n) : cplx{};
  return {};
}

std::shared_ptr<const ExpandedChannel> expanded_channel(const PerturbationSpec &spec, Channel ch)
{
  if (!std::holds_alternative<OscillatorySpec>(spec))
    return nullptr;
  const auto &s = std::get<OscillatorySpec>(spec);
  const auto &c = pick(s.a, s.b, s.alpha, ch);
  return c ? std::make_shared<const ExpandedChannel>(expand(*c)) : nullptr;
}

void require_channels(const PerturbationSpec &spec, bool cmv)
{
  auto bad = [&](bool has_a, bool has_b, bool has_alpha) {
    if (cmv && (has_a || has_b))
      fail(Errc::invalid_spec, "CMV perturbations use only the \"alpha\" channel");
    if (!cmv && has_alpha)
      fail(Errc::invalid_spec, "Jacobi perturbations use only the \"a\" and \"b\" channels");
  };
  std::visit(
      [&](const auto &s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (!std::is_same_v<S, NoPerturbation>)
          bad(s.a.has_value(), s.b.has_value(), s.alpha.has_value());
      },
      spec);
}

}  // namespace

double PowerScale::operator()(long n) const
{
  if (amplitude == 0.0)
    return 0.0;
  return amplitude * std::pow(std::max(static_cast<double>(n) + shift, 1.0), -exponent);
}

cplx L1Channel::operator()(long n, long first) const
{
  if (values)
  {
    const long idx = n - first;
    return idx >= 0 && idx < static_cast<long>(values->size())
               ? (*values)[static_cast<std::size_t>(idx)]
               : cplx{};
  }
  return scale(n) * std::polar(1.0, frequency * static_cast<double>(n));
}

double Envelope::operator()(long n) const
{
  switch (kind)
  {
  case Kind::power:
    return std::pow(static_cast<double>(std::max(n, 1L)), -gamma);
  case Kind::array:
    return n >= 1 && n <= static_cast<long>(values.size()) ? values[static_cast<std::size_t>(n - 1)]
                                                           : 0.0;
  case Kind::periodic:
  {
    const long q = static_cast<long>(values.size());
    return values[static_cast<std::size_t>(((std::max(n, 1L) - 1) % q))];
  }
  }
  return 0.0;
}

double Envelope::sup() const
{
  if (kind == Kind::power)
    return gamma >= 0.0 ? 1.0 : inf;
  double s = 0.0;
  for (double v : values)
    s = std::max(s, std::abs(v));
  return s;
}

double Envelope::variation() const
{
  switch (kind)
  {
  case Kind::power:
    // Monotone from sigma_1 = 1 to the limit.
    return gamma > 0.0 ? 1.0 : gamma == 0.0 ? 0.0 : inf;
  case Kind::array:
  {
    double v = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
      v += std::abs(values[i + 1] - values[i]);
    return values.empty() ? 0.0 : v + std::abs(values.back());
  }
  case Kind::periodic:
  {
    const bool constant = std::all_of(values.begin(), values.end(),
                                      [&](double x) { return x == values.front(); });
    return constant ? 0.0 : inf;
  }
  }
  return inf;
}

double Envelope::lp_norm(double p) const
{
  switch (kind)
  {
  case Kind::power:
    return p * gamma > 1.0 ? std::pow(zeta(p * gamma), 1.0 / p) : inf;
  case Kind::array:
  {
    double s = 0.0;
    for (double v : values)
      s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
  }
  case Kind::periodic:
    return sup() == 0.0 ? 0.0 : inf;
  }
  return inf;
}

ExpandedChannel expand(const OscChannel &ch)
{
  ExpandedChannel out;
  out.terms = ch.terms;
  if (!ch.series)
    return out;
  const OscSeries &s = *ch.series;
  const double per = std::abs(s.scale) * s.envelope.sup() * (s.conjugate_pairs ? 2.0 : 1.0);
  // tail after keeping l = 1..L is per * r^{L+1} / (1 - r)
  long L = 0;
  auto tail = [&](long kept) {
    return s.ratio == 0.0 ? 0.0 : per * std::pow(s.ratio, kept + 1) / (1.0 - s.ratio);
  };
  while (tail(L) >= tail_cutoff && L < 100000)
    ++L;
  for (long l = 1; l <= L; ++l)
  {
    const cplx c = s.scale * std::pow(s.ratio, l);
    const double phi = s.phi0 + s.dphi * static_cast<double>(l);
    out.terms.push_back({c, phi, s.envelope});
    if (s.conjugate_pairs)
      out.terms.push_back({std::conj(c), -phi, s.envelope});
  }
  out.truncated_at = L;
  out.dropped_tail = tail(L);
  return out;
}

cplx sample_oscillatory(const ExpandedChannel &ch, long n)
{
  cplx sum{};
  for (const auto &t : ch.terms)
  {
    const double env = t.envelope(n);
    if (env != 0.0 && t.c != cplx{})
      sum += t.c * std::polar(env, -t.phi * static_cast<double>(n));
  }
  return sum;
}

cplx sample_oscillatory(const OscChannel &ch, long n) { return sample_oscillatory(expand(ch), n); }

RandomDraw sample_random(const RandomSpec &spec, Channel ch, std::uint64_t seed,
                         std::uint64_t trial, long n, cplx background)
{
  const auto &scale = random_scale(spec, ch);
  if (!scale)
    return {};
  const double s = (*scale)(n);
  if (!(s >= 0.0) || !std::isfinite(s))
    fail(Errc::invalid_spec, "random scale must be finite and nonnegative");
  if (s == 0.0)
    return {};
  RandomDraw out;
  for (int attempt = 0; attempt <= max_repairs; ++attempt)
  {
    const DrawKey key{seed, trial, channel_id(ch), n, static_cast<std::uint64_t>(attempt)};
    cplx v;
    if (ch == Channel::alpha)
      v = s * cplx{draw_standard(spec.distribution, key, 0), draw_standard(spec.distribution, key, 1)} /
          std::sqrt(2.0);
    else
      v = s * draw_standard(spec.distribution, key, 0);
    const bool ok = ch == Channel::a       ? background.real() + v.real() > 0.0
                    : ch == Channel::alpha ? std::norm(background + v) < 1.0
                                           : true;
    if (ok)
    {
      out.value = v;
      out.repairs = attempt;
      return out;
    }
  }
  fail(Errc::invalid_spec, "random draw at n = " + std::to_string(n) +
                               " violates positivity/disk after repeated resampling");
}

bool ValidationReport::pass() const
{
  return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
}

ValidationReport validate_spec(const PerturbationSpec &spec, bool cmv)
{
  ValidationReport r;
  auto add = [&](std::string name, double value, bool pass, std::string detail = {}) {
    r.checks.push_back({std::move(name), value, pass, std::move(detail)});
  };
  auto channel_names = [&](auto &&fn) {
    if (cmv)
      fn("alpha", Channel::alpha);
    else
    {
      fn("a", Channel::a);
      fn("b", Channel::b);
    }
  };
  try
  {
    require_channels(spec, cmv);
  }
  catch (const Error &e)
  {
    add("channels", 0.0, false, e.what());
    return r;
  }

  if (std::holds_alternative<NoPerturbation>(spec))
  {
    add("kind", 0.0, true, "none");
    return r;
  }
  if (std::holds_alternative<L1Spec>(spec))
  {
    const auto &s = std::get<L1Spec>(spec);
    channel_names([&](const char *name, Channel ch) {
      const auto &c = pick(s.a, s.b, s.alpha, ch);
      double norm = 0.0;
      if (c && c->values)
        for (cplx v : *c->values)
          norm += std::abs(v);
      else if (c)
        norm = power_sum(c->scale, ch == Channel::alpha ? 0 : 1, 1.0);
      add(std::string("l1_norm.") + name, norm, std::isfinite(norm));
    });
    return r;
  }
  if (std::holds_alternative<RandomSpec>(spec))
  {
    const auto &s = std::get<RandomSpec>(spec);
    channel_names([&](const char *name, Channel ch) {
      const auto &sc = random_scale(s, ch);
      double sum = 0.0;
      bool nonneg = true;
      if (sc)
      {
        sum = power_sum(*sc, ch == Channel::alpha ? 0 : 1, 2.0);
        nonneg = sc->amplitude >= 0.0;
      }
      add(std::string("square_summable.") + name, sum, std::isfinite(sum),
          "sum of s_n^2 over the channel");
      add(std::string("scale_nonnegative.") + name, sc ? sc->amplitude : 0.0, nonneg);
    });
    return r;
  }

  const auto &s = std::get<OscillatorySpec>(spec);
  add("p", s.p, s.p >= 2, "integer p >= 2");
  const double beta_max = s.p >= 2 ? 1.0 / (s.p - 1) : 0.0;
  add("beta", s.beta, s.beta > 0.0 && s.beta < beta_max, "beta in (0, 1/(p-1))");
  double tau = 0.0, sigma = 0.0, csum = 0.0;
  bool decays = true;
  channel_names([&](const char *name, Channel ch) {
    const auto &c = pick(s.a, s.b, s.alpha, ch);
    if (!c)
      return;
    const ExpandedChannel ex = expand(*c);
    for (const auto &t : c->terms)
      csum += std::pow(std::abs(t.c), s.beta);
    std::vector<const Envelope *> envs;
    for (const auto &t : c->terms)
      envs.push_back(&t.envelope);
    if (c->series)
    {
      const auto &se = *c->series;
      const double rb = std::pow(se.ratio, s.beta);
      csum += (se.conjugate_pairs ? 2.0 : 1.0) * std::pow(std::abs(se.scale), s.beta) * rb /
              (1.0 - rb);
      envs.push_back(&se.envelope);
      add(std::string("truncation.") + name, static_cast<double>(ex.truncated_at), true,
          "series terms kept; dropped tail " + std::to_string(ex.dropped_tail));
    }
    for (const Envelope *e : envs)
    {
      tau = std::max(tau, e->variation());
      sigma = std::max(sigma, e->lp_norm(s.p));
      const bool zero_limit = e->kind == Envelope::Kind::power ? e->gamma > 0.0
                              : e->kind == Envelope::Kind::array
                                  ? true
                                  : e->sup() == 0.0;
      decays = decays && zero_limit;
    }
    if (!cmv)
      add(std::string("conjugate_closed.") + name, 0.0, conjugate_closed(ex.terms),
          "every term has its complex conjugate");
  });
  add("tau", tau, std::isfinite(tau), "(i) sup_l Var(sigma^(l))");
  add("sigma", sigma, std::isfinite(sigma), "(ii) sup_l ||sigma^(l)||_p");
  add("coefficient_sum", csum, std::isfinite(csum), "(iii) sum_l |c_l|^beta");
  add("envelopes_decay", 0.0, decays, "sigma_n -> 0");
  return r;
}

JacobiPerturbation jacobi_perturbation(const PerturbationSpec &spec, const RealSequence &background_a,
                                       std::uint64_t seed, std::uint64_t trial)
{
  require_channels(spec, false);
  JacobiPerturbation out;
  if (std::holds_alternative<NoPerturbation>(spec))
    return out;
  auto sp = std::make_shared<const PerturbationSpec>(spec);
  auto ea = expanded_channel(spec, Channel::a);
  auto eb = expanded_channel(spec, Channel::b);
  const RealSequence bg = background_a;
  out.a = RealSequence::generated(
      [sp, ea, bg, seed, trial](long n) {
        return channel_value(*sp, Channel::a, n, seed, trial, bg(n), ea).real();
      },
      1);
  out.b = RealSequence::generated(
      [sp, eb, seed, trial](long m) {
        return m < 2 ? 0.0 : channel_value(*sp, Channel::b, m - 1, seed, trial, 0.0, eb).real();
      },
      1);
  return out;
}

ComplexSequence cmv_perturbation(const PerturbationSpec &spec,
                                 const ComplexSequence &background_alpha, std::uint64_t seed,
                                 std::uint64_t trial)
{
  require_channels(spec, true);
  if (std::holds_alternative<NoPerturbation>(spec))
    return ComplexSequence::constant(0.0, 0);
  auto sp = std::make_shared<const PerturbationSpec>(spec);
  auto ex = expanded_channel(spec, Channel::alpha);
  const ComplexSequence bg = background_alpha;
  return ComplexSequence::generated(
      [sp, ex, bg, seed, trial](long n) {
        return channel_value(*sp, Channel::alpha, n, seed, trial, bg(n), ex);
      },
      0);
}

double channel_mean_square(const PerturbationSpec &spec, Channel ch, long n)
{
  if (std::holds_alternative<RandomSpec>(spec))
  {
    const auto &sc = random_scale(std::get<RandomSpec>(spec), ch);
    return sc ? std::pow((*sc)(n), 2) : 0.0;
  }
  return std::norm(channel_value(spec, ch, n, 0, 0, 0.0, expanded_channel(spec, ch)));
}

PerturbationSpec perturbation_from_json(const json &j)
{
  if (!j.is_object())
    fail(Errc::invalid_spec, "perturbation must be a JSON object");
  if (j.contains("schema") && j.at("schema") != 1)
    fail(Errc::invalid_spec, "unsupported perturbation schema version");
  const std::string kind = j.value("kind", std::string("none"));
  if (kind == "none")
  {
    check_keys(j, {"schema", "kind"}, "perturbation");
    return NoPerturbation{};
  }
  if (kind == "l1")
  {
    check_keys(j, {"schema", "kind", "a", "b", "alpha"}, "l1 perturbation");
    L1Spec s;
    if (j.contains("a"))
      s.a = l1_channel_from(j.at("a"));
    if (j.contains("b"))
      s.b = l1_channel_from(j.at("b"));
    if (j.contains("alpha"))
      s.alpha = l1_channel_from(j.at("alpha"));
    return s;
  }
  if (kind == "random")
  {
    check_keys(j, {"schema", "kind", "distribution", "a", "b", "alpha"}, "random perturbation");
    RandomSpec s;
    const std::string d = j.value("distribution", std::string("rademacher"));
    if (d == "rademacher")
      s.distribution = Distribution::rademacher;
    else if (d == "uniform")
      s.distribution = Distribution::uniform;
    else
      fail(Errc::invalid_spec, "unknown distribution \"" + d + "\"");
    if (j.contains("a"))
      s.a = scale_from(j.at("a"), "random channel a");
    if (j.contains("b"))
      s.b = scale_from(j.at("b"), "random channel b");
    if (j.contains("alpha"))
      s.alpha = scale_from(j.at("alpha"), "random channel alpha");
    for (const auto *sc : {&s.a, &s.b, &s.alpha})
      if (*sc && (*sc)->amplitude < 0.0)
        fail(Errc::invalid_spec, "random scale amplitude must be nonnegative");
    return s;
  }
  if (kind == "oscillatory")
  {
    check_keys(j, {"schema", "kind", "p", "beta", "a", "b", "alpha"}, "oscillatory perturbation");
    OscillatorySpec s;
    s.p = static_cast<int>(num(j, "p", 2.0));
    if (static_cast<double>(s.p) != num(j, "p", 2.0))
      fail(Errc::invalid_spec, "p must be an integer");
    s.beta = num(j, "beta", 0.5);
    if (j.contains("a"))
      s.a = osc_channel_from(j.at("a"));
    if (j.contains("b"))
      s.b = osc_channel_from(j.at("b"));
    if (j.contains("alpha"))
      s.alpha = osc_channel_from(j.at("alpha"));
    return s;
  }
  fail(Errc::invalid_spec, "unknown perturbation kind \"" + kind + "\"");
}

ordered_json perturbation_to_json(const PerturbationSpec &spec)
{
  ordered_json out = {{"schema", 1}};
  std::visit(
      [&](const auto &s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NoPerturbation>)
          out["kind"] = "none";
        else if constexpr (std::is_same_v<S, L1Spec>)
        {
          out["kind"] = "l1";
          if (s.a)
            out["a"] = l1_channel_json(*s.a);
          if (s.b)
            out["b"] = l1_channel_json(*s.b);
          if (s.alpha)
            out["alpha"] = l1_channel_json(*s.alpha);
        }
        else if constexpr (std::is_same_v<S, RandomSpec>)
        {
          out["kind"] = "random";
          out["distribution"] =
              s.distribution == Distribution::rademacher ? "rademacher" : "uniform";
          if (s.a)
            out["a"] = scale_json(*s.a);
          if (s.b)
            out["b"] = scale_json(*s.b);
          if (s.alpha)
            out["alpha"] = scale_json(*s.alpha);
        }
        else
        {
          out["kind"] = "oscillatory";
          out["p"] = s.p;
          out["beta"] = s.beta;
          if (s.a)
            out["a"] = osc_channel_json(*s.a);
          if (s.b)
            out["b"] = osc_channel_json(*s.b);
          if (s.alpha)
            out["alpha"] = osc_channel_json(*s.alpha);
        }
      },
      spec);
  return out;
}

}  // namespace prufer
