// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "prufer/oscillatory.hpp"

namespace prufer
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

template <typename F>
void parallel_indices(std::size_t count, int threads, F &&fn)
{
  tbb::task_arena arena(threads > 0 ? threads : tbb::task_arena::automatic);
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, count), [&](const auto &r) {
      for (std::size_t i = r.begin(); i != r.end(); ++i)
        fn(i);
    });
  });
}

bool is_checkpoint(long n, long stride, long first, long last)
{
  return n == first || n == last || n % stride == 0;
}

// Relative distance between x_prufer and exp(log_scale) x_direct.
template <typename V>
double relative_error(const V &prufer, const V &direct, double log_scale)
{
  const double np = prufer.norm();
  if (!(np > 0.0))
    return std::numeric_limits<double>::infinity();
  return (prufer / np - direct * std::exp(log_scale - std::log(np))).norm();
}

void check_failed(double err, long n, double tol)
{
  fail(Errc::contract_violation, "Prufer trajectory disagrees with the direct recursion at n = " +
                                     std::to_string(n) + " (relative error " + format_double(err) +
                                     ", budget " + format_double(tol) + ")");
}

JacobiCoefficients jacobi_coeffs(const ExperimentConfig &cfg, std::uint64_t trial, long last)
{
  const auto &bg = cfg.jacobi_background();
  const auto p =
      jacobi_perturbation(cfg.perturbation, RealSequence::periodic(bg.a, 1), cfg.seed, trial);
  return bg.coefficients(p.a, p.b).cached(last);
}

VerblunskySequence cmv_alpha(const ExperimentConfig &cfg, std::uint64_t trial, long last)
{
  const auto &bg = cfg.cmv_background();
  return bg
      .sequence(cmv_perturbation(cfg.perturbation, ComplexSequence::periodic(bg.alpha, 0),
                                 cfg.seed, trial))
      .cached(last);
}

// Indices in [first, last] whose random draw needed a positivity/disk repair.
long count_repairs(const ExperimentConfig &cfg, std::uint64_t trial, long last)
{
  if (!std::holds_alternative<RandomSpec>(cfg.perturbation))
    return 0;
  const auto &spec = std::get<RandomSpec>(cfg.perturbation);
  long count = 0;
  if (cfg.cmv())
  {
    if (!spec.alpha)
      return 0;
    const auto bg = ComplexSequence::periodic(cfg.cmv_background().alpha, 0);
    for (long n = 0; n <= last; ++n)
      count += sample_random(spec, Channel::alpha, cfg.seed, trial, n, bg(n)).repairs > 0;
  }
  else
  {
    if (!spec.a)
      return 0;
    const auto bg = RealSequence::periodic(cfg.jacobi_background().a, 1);
    for (long n = 1; n <= last; ++n)
      count += sample_random(spec, Channel::a, cfg.seed, trial, n, bg(n)).repairs > 0;
  }
  return count;
}

std::vector<long> checkpoints_of(const ExperimentConfig &cfg)
{
  std::set<long> s(cfg.checkpoints.begin(), cfg.checkpoints.end());
  if (s.empty())
    s.insert(cfg.horizon);
  return {s.begin(), s.end()};
}

// Largest singular value of a 2x2 matrix, to the fourth power.
template <typename M>
double norm4(const M &T)
{
  const double f2 = T.squaredNorm();
  const double d = std::abs(T.determinant());
  const double s2 = 0.5 * (f2 + std::sqrt(std::max(f2 * f2 - 4.0 * d * d, 0.0)));
  return s2 * s2;
}

struct Moments
{
  double mean = 0.0, stderr_ = 0.0, median = 0.0;
};

Moments moments(std::vector<double> v)
{
  Moments m;
  const double T = static_cast<double>(v.size());
  for (double x : v)
    m.mean += x;
  m.mean /= T;
  double ss = 0.0;
  for (double x : v)
    ss += (x - m.mean) * (x - m.mean);
  m.stderr_ = v.size() > 1 ? std::sqrt(ss / (T - 1.0) / T) : 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  m.median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  return m;
}

// log of prod_{m < n} (1 + C phi inc[m]) where inc[m] holds the step variance of step m.
double log_envelope(const std::vector<double> &inc, long n, double C, double phi)
{
  double s = 0.0;
  for (long m = 0; m < n && m < static_cast<long>(inc.size()); ++m)
    s += std::log1p(C * phi * inc[static_cast<std::size_t>(m)]);
  return s;
}

// Smallest C >= 0 with base * envelope(C) >= target; +inf if none below 1e6.
double fit_constant(const std::vector<double> &inc, long n, double phi, double log_base,
                    double target)
{
  const double lt = std::log(target);
  auto enough = [&](double C) { return log_base + log_envelope(inc, n, C, phi) >= lt; };
  if (enough(0.0))
    return 0.0;
  double hi = 1.0;
  while (!enough(hi))
  {
    hi *= 2.0;
    if (hi > 1e6)
      return std::numeric_limits<double>::infinity();
  }
  double lo = 0.0;
  for (int i = 0; i < 60; ++i)
  {
    const double mid = 0.5 * (lo + hi);
    (enough(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<double> oscillation_frequencies(const PerturbationSpec &spec)
{
  std::vector<double> out;
  if (!std::holds_alternative<OscillatorySpec>(spec))
    return out;
  const auto &s = std::get<OscillatorySpec>(spec);
  for (const auto *ch : {&s.a, &s.b, &s.alpha})
    if (*ch)
      for (const auto &t : expand(**ch).terms)
        out.push_back(t.phi);
  return out;
}

const char *grid_label(const ExperimentConfig &cfg) { return cfg.cmv() ? "theta" : "E"; }

// Once |log2 R| passes 512, Z is rescaled by an exact power of two and the exponent carried
// separately. The Prufer ratio depends on Z only through its phase, so nothing else changes.
template <typename State>
void rebalance(State &st, long &exponent)
{
  int e = 0;
  std::frexp(st.R, &e);
  if (std::abs(e) < 512)
    return;
  st.Z = {std::ldexp(st.Z.real(), -e), std::ldexp(st.Z.imag(), -e)};
  st.R = std::ldexp(st.R, -e);
  exponent += e;
}

TrajectoryOptions options_from(const ExperimentConfig &cfg)
{
  TrajectoryOptions o;
  o.horizon = cfg.horizon;
  o.record_every = cfg.record_every;
  o.check_every = cfg.check_every;
  o.tolerance = cfg.tolerance;
  o.strip = cfg.strip;
  o.initial = cfg.initial;
  return o;
}

}  // namespace

TrajectoryResult jacobi_trajectory(const JacobiCoefficients &coeffs, double E,
                                   const JacobiReference &ref, const TrajectoryOptions &opt)
{
  if (opt.horizon < 1)
    fail(Errc::out_of_range, "trajectory horizon must be >= 1");
  TrajectoryResult res;
  res.first = 1;
  const double omega = opt.omega_override != 0.0 ? opt.omega_override : ref.omega;
  PruferState st = make_prufer_state(opt.initial, 1, omega);
  SolutionWindow direct = solution_from_z(opt.initial, ref.window(1), coeffs).to_window(coeffs);
  double log_scale = 0.0;
  long exponent = 0;  // R = st.R * 2^exponent
  int pending_flag = 0;
  if (opt.keep_series)
  {
    res.R.reserve(static_cast<std::size_t>(opt.horizon));
    res.eta.reserve(static_cast<std::size_t>(opt.horizon));
  }

  for (long n = 1;; ++n)
  {
    const SolutionWindow phi = ref.window(n);
    const double logR = std::log(st.R) + static_cast<double>(exponent) * std::numbers::ln2;
    const double R = std::exp(logR);
    TrajectoryRecord rec{n, R, st.eta, logR, pending_flag, -1.0, log_scale};
    if (is_checkpoint(n, opt.check_every, 1, opt.horizon))
    {
      const WeightedPair w = solution_from_z(st.Z, phi, coeffs);
      const Vec2 xp(w.weighted_curr, w.prev);
      const Vec2 xd(coeffs.total_a(n) * direct.curr.real(), direct.prev.real());
      const double err =
          relative_error(xp, xd, log_scale - static_cast<double>(exponent) * std::numbers::ln2);
      rec.check_error = err;
      res.max_check_error = std::max(res.max_check_error, err);
      ++res.checks;
      if (!(err <= opt.tolerance))
        check_failed(err, n, opt.tolerance);
      const double nd = xd.norm();
      log_scale += std::log(nd);
      direct.prev /= nd;
      direct.curr /= nd;
      rec.direct_log_scale = log_scale;
    }
    if (is_checkpoint(n, opt.record_every, 1, opt.horizon))
      res.records.push_back(rec);
    if (opt.keep_series)
    {
      res.R.push_back(R);
      res.eta.push_back(st.eta);
    }
    res.sup_R = std::max(res.sup_R, R);
    res.final_R = R;
    if (n == opt.horizon)
      break;

    const PruferState next = prufer_step_jacobi(st, coeffs, PhasePair::from_window(phi));
    pending_flag = std::abs(next.Z / st.Z - 1.0) >= 1.0;
    if (pending_flag)
    {
      ++res.branch_flags;
      if (opt.enforce_branch && n > opt.strip)
        fail(Errc::branch_violation, "|Z(n+1)/Z(n) - 1| >= 1 at n = " + std::to_string(n) +
                                         " beyond the strip offset " + std::to_string(opt.strip));
    }
    direct = step_jacobi(coeffs, E, direct, true);
    st = next;
    rebalance(st, exponent);
  }
  return res;
}

TrajectoryResult cmv_trajectory(const VerblunskySequence &alpha, const FloquetData &floquet,
                                const TrajectoryOptions &opt)
{
  if (opt.horizon < 1)
    fail(Errc::out_of_range, "trajectory horizon must be >= 1");
  TrajectoryResult res;
  res.first = 0;
  const Spinor u0 = cmv_initial_u(opt.initial, floquet.branch);
  const double omega_true = cmv_omega(floquet.v_at(0));
  const double omega = opt.omega_override != 0.0 ? opt.omega_override : omega_true;
  CmvPruferState st = make_cmv_prufer_state(z_decompose(u0, floquet.v_at(0), omega_true), 0, omega);
  Spinor direct = u0;
  double log_scale = 0.0;
  long exponent = 0;  // R = st.R * 2^exponent
  int pending_flag = 0;

  for (long n = 0;; ++n)
  {
    const Spinor v = floquet.v_at(n);
    const double logR = std::log(st.R) + static_cast<double>(exponent) * std::numbers::ln2;
    const double R = std::exp(logR);
    TrajectoryRecord rec{n, R, st.eta, logR, pending_flag, -1.0, log_scale};
    if (is_checkpoint(n, opt.check_every, 0, opt.horizon))
    {
      const CVec2 xp = reconstruct_u(st.Z, v).vec();
      const CVec2 xd = direct.vec();
      const double err =
          relative_error(xp, xd, log_scale - static_cast<double>(exponent) * std::numbers::ln2);
      rec.check_error = err;
      res.max_check_error = std::max(res.max_check_error, err);
      ++res.checks;
      if (!(err <= opt.tolerance))
        check_failed(err, n, opt.tolerance);
      const double nd = xd.norm();
      log_scale += std::log(nd);
      direct.v1 /= nd;
      direct.v2 /= nd;
      rec.direct_log_scale = log_scale;
    }
    if (is_checkpoint(n, opt.record_every, 0, opt.horizon))
      res.records.push_back(rec);
    if (opt.keep_series)
    {
      res.R.push_back(R);
      res.eta.push_back(st.eta);
    }
    res.sup_R = std::max(res.sup_R, R);
    res.final_R = R;
    if (n == opt.horizon)
      break;

    const cplx total = alpha.total(n);
    const CmvPruferState next = prufer_step_szego(st, v, alpha.alpha(n), alpha.pert(n));
    pending_flag = std::abs(next.Z / st.Z - 1.0) >= 1.0;
    if (pending_flag)
    {
      ++res.branch_flags;
      if (opt.enforce_branch && n > opt.strip)
        fail(Errc::branch_violation, "|Z(n+1)/Z(n) - 1| >= 1 at n = " + std::to_string(n) +
                                         " beyond the strip offset " + std::to_string(opt.strip));
    }
    direct = szego_step(direct, total);
    st = next;
    rebalance(st, exponent);
  }
  return res;
}

JacobiReference make_reference(const ExperimentConfig &cfg, double E)
{
  const auto &bg = cfg.jacobi_background();
  FloquetData f = floquet_solution(bg, E);
  if (cfg.reference == "unit_wronskian")
    return JacobiReference::unit_wronskian(std::move(f), bg.a.front());
  return JacobiReference::from_floquet(std::move(f));
}

FloquetData cmv_floquet(const ExperimentConfig &cfg, double theta)
{
  return floquet_solution(cfg.cmv_background(), SqrtBranch::from_angle(theta));
}

std::vector<double> band_interior_points(const ExperimentConfig &cfg)
{
  const auto pts = cfg.grid.points();
  if (pts.empty())
    fail(Errc::invalid_spec, "experiment grid is empty");
  for (double x : pts)
  {
    const double d = cfg.cmv() ? discriminant(cfg.cmv_background(), SqrtBranch::from_angle(x))
                               : discriminant(cfg.jacobi_background(), x);
    if (!(std::abs(d) < 2.0 - cfg.grid.margin))
      fail(Errc::band_edge, std::string("grid point ") + grid_label(cfg) + " = " +
                                format_double(x) + " is not inside a band after the margin " +
                                format_double(cfg.grid.margin));
  }
  return pts;
}

Table band_scan_table(const ExperimentConfig &cfg)
{
  if (cfg.grid.range.points < 1)
    fail(Errc::invalid_spec, "band-scan needs a grid range (min, max, points)");
  const auto bands = cfg.cmv() ? band_scan(cfg.cmv_background(), cfg.grid.range, cfg.grid.margin)
                               : band_scan(cfg.jacobi_background(), cfg.grid.range, cfg.grid.margin);
  Table t({"band", "lo", "hi", "width"});
  for (std::size_t i = 0; i < bands.size(); ++i)
    t.add({static_cast<std::int64_t>(i), bands[i].lo, bands[i].hi, bands[i].hi - bands[i].lo});
  return t;
}

Table trajectory_table(const ExperimentConfig &cfg, int threads)
{
  const auto pts = band_interior_points(cfg);
  const TrajectoryOptions opt = options_from(cfg);
  std::vector<TrajectoryResult> results(pts.size());
  const long repairs = count_repairs(cfg, 0, cfg.horizon + 1);
  if (cfg.cmv())
  {
    const auto alpha = cmv_alpha(cfg, 0, cfg.horizon + 1);
    parallel_indices(pts.size(), threads, [&](std::size_t i) {
      results[i] = cmv_trajectory(alpha, cmv_floquet(cfg, pts[i]), opt);
    });
  }
  else
  {
    const auto coeffs = jacobi_coeffs(cfg, 0, cfg.horizon + 2);
    parallel_indices(pts.size(), threads, [&](std::size_t i) {
      results[i] = jacobi_trajectory(coeffs, pts[i], make_reference(cfg, pts[i]), opt);
    });
  }
  Table t({grid_label(cfg), "n", "R", "eta", "logR", "branch_flag", "check_error",
           "direct_log_scale", "repairs"});
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (const auto &r : results[i].records)
      t.add({pts[i], static_cast<std::int64_t>(r.n), r.R, r.eta, r.logR,
             static_cast<std::int64_t>(r.branch_flag), r.check_error, r.direct_log_scale,
             static_cast<std::int64_t>(repairs)});
  return t;
}

Table random_mc_table(const ExperimentConfig &cfg, int threads)
{
  if (!std::holds_alternative<RandomSpec>(cfg.perturbation))
    fail(Errc::invalid_spec, "random-mc needs a random perturbation");
  const auto pts = band_interior_points(cfg);
  const auto cps = checkpoints_of(cfg);
  const long H = cps.back();
  const std::size_t P = pts.size(), T = static_cast<std::size_t>(cfg.trials), C = cps.size();
  const bool cmv = cfg.cmv();

  // Step variances: inc[m] bounds the growth of E R^4 over step m (Jacobi: Z(m+1) -> Z(m+2)).
  std::vector<double> inc(static_cast<std::size_t>(H), 0.0), inc_ref(inc.size(), 0.0);
  for (long m = 0; m < H; ++m)
  {
    const long idx = cmv ? m : m + 1;
    inc[static_cast<std::size_t>(m)] =
        cmv ? channel_mean_square(cfg.perturbation, Channel::alpha, idx)
            : channel_mean_square(cfg.perturbation, Channel::a, idx) +
                  channel_mean_square(cfg.perturbation, Channel::b, idx);
    if (cfg.monte_carlo.reference_scale)
      inc_ref[static_cast<std::size_t>(m)] = std::pow((*cfg.monte_carlo.reference_scale)(idx), 2);
  }
  // Number of steps between the first index and checkpoint n.
  const long first = cmv ? 0 : 1;

  std::vector<double> phiE(P), r4(P * T * C), t4(P * T * C);
  // R at the first index: |Z(1)| for Jacobi, |Z(0)| from the decomposition of u(0) for CMV.
  std::vector<double> log_base(P, 4.0 * std::log(std::abs(cfg.initial)));
  std::vector<long> repairs(T);
  const cplx z1 = cfg.initial;

  if (cmv)
  {
    std::vector<FloquetData> fl(P);
    std::vector<std::vector<Spinor>> vs(P);
    parallel_indices(P, threads, [&](std::size_t e) {
      fl[e] = cmv_floquet(cfg, pts[e]);
      phiE[e] = fl[e].phi_E;
      vs[e].reserve(static_cast<std::size_t>(H + 1));
      for (long n = 0; n <= H; ++n)
        vs[e].push_back(fl[e].v_at(n));
      const cplx z0 = z_decompose(cmv_initial_u(cfg.initial, fl[e].branch), vs[e][0], fl[e].omega);
      log_base[e] = 4.0 * std::log(std::abs(z0));
    });
    parallel_indices(T, threads, [&](std::size_t t) { repairs[t] = count_repairs(cfg, t, H); });
    parallel_indices(P * T, threads, [&](std::size_t task) {
      const std::size_t e = task / T, t = task % T;
      const auto alpha = cmv_alpha(cfg, t, H + 1);
      const double omega = fl[e].omega;
      auto run = [&](cplx kappa, auto &&visit) {
        const Spinor u0 = cmv_initial_u(kappa, fl[e].branch);
        CmvPruferState st = make_cmv_prufer_state(z_decompose(u0, vs[e][0], omega), 0, omega);
        for (long n = 0; n <= H; ++n)
        {
          visit(n, st.Z);
          if (n < H)
            st = prufer_step_szego(st, vs[e][static_cast<std::size_t>(n)], alpha.alpha(n),
                                   alpha.pert(n));
        }
      };
      std::size_t c = 0;
      std::vector<CVec2> col1(C), col2(C);
      run(z1, [&](long n, cplx Z) {
        if (c < C && n == cps[c])
          r4[(e * T + t) * C + c++] = std::pow(std::abs(Z), 4);
      });
      c = 0;
      run(1.0, [&](long n, cplx Z) {
        if (c < C && n == cps[c])
          col1[c++] = reconstruct_u(Z, vs[e][static_cast<std::size_t>(n)]).vec();
      });
      c = 0;
      run(I, [&](long n, cplx Z) {
        if (c < C && n == cps[c])
          col2[c++] = reconstruct_u(Z, vs[e][static_cast<std::size_t>(n)]).vec();
      });
      for (std::size_t k = 0; k < C; ++k)
      {
        CMat2 M;
        M << col1[k], col2[k];
        t4[(e * T + t) * C + k] = norm4(M);
      }
    });
  }
  else
  {
    std::vector<JacobiReference> refs;
    refs.reserve(P);
    const auto &bg = cfg.jacobi_background();
    for (double E : pts)
      refs.push_back(JacobiReference::unit_wronskian(floquet_solution(bg, E), bg.a.front()));
    std::vector<std::vector<PhasePair>> pairs(P);
    parallel_indices(P, threads, [&](std::size_t e) {
      phiE[e] = refs[e].floquet.phi_E;
      pairs[e].reserve(static_cast<std::size_t>(H + 1));
      for (long n = 1; n <= H + 1; ++n)
        pairs[e].push_back(PhasePair::from_window(refs[e].window(n)));
    });
    parallel_indices(T, threads, [&](std::size_t t) { repairs[t] = count_repairs(cfg, t, H + 1); });
    parallel_indices(P * T, threads, [&](std::size_t task) {
      const std::size_t e = task / T, t = task % T;
      const auto coeffs = jacobi_coeffs(cfg, t, H + 3);
      const double omega = refs[e].omega;
      auto run = [&](cplx Z1, long last, auto &&visit) {
        PruferState st = make_prufer_state(Z1, 1, omega);
        for (long n = 1; n <= last; ++n)
        {
          visit(n, st.Z);
          if (n < last)
            st = prufer_step_jacobi(st, coeffs, pairs[e][static_cast<std::size_t>(n - 1)]);
        }
      };
      std::size_t c = 0;
      run(z1, H, [&](long n, cplx Z) {
        if (c < C && n == cps[c])
          r4[(e * T + t) * C + c++] = std::pow(std::abs(Z), 4);
      });
      // Transfer matrices from the solutions with Z(1) = 1 and Z(1) = i, read at n + 1.
      std::vector<Vec2> col1(C), col2(C);
      for (int j = 0; j < 2; ++j)
      {
        c = 0;
        auto &col = j == 0 ? col1 : col2;
        run(j == 0 ? cplx{1.0} : I, H + 1, [&](long n, cplx Z) {
          if (c < C && n == cps[c] + 1)
          {
            const auto w = solution_from_z(Z, refs[e].window(n), coeffs);
            col[c++] = Vec2(w.weighted_curr, w.prev);
          }
        });
      }
      for (std::size_t k = 0; k < C; ++k)
      {
        Mat2 M;
        M << col1[k], col2[k];
        t4[(e * T + t) * C + k] = norm4(M);
      }
    });
  }

  const long total_repairs = std::accumulate(repairs.begin(), repairs.end(), 0L);
  Table tab({grid_label(cfg), "n", "phi_E", "trials", "mean_R4", "stderr_R4", "median_R4",
             "mean_T4", "stderr_T4", "envelope_cmax", "C_fit", "within_envelope",
             "ref_envelope", "escaped", "repairs", "last_simon_proxy"});
  // Trapezoid rule over the (sorted) grid of the mean ||T||^4 at the largest checkpoint.
  std::vector<std::size_t> order(P);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return pts[x] < pts[y]; });
  std::vector<Moments> last_t(P);
  std::vector<double> collect(T);
  auto gather = [&](const std::vector<double> &src, std::size_t e, std::size_t c) {
    for (std::size_t t = 0; t < T; ++t)
      collect[t] = src[(e * T + t) * C + c];
    return moments(collect);
  };
  for (std::size_t e = 0; e < P; ++e)
    last_t[e] = gather(t4, e, C - 1);
  double proxy = 0.0;
  for (std::size_t i = 1; i < P; ++i)
    proxy += 0.5 * (pts[order[i]] - pts[order[i - 1]]) *
             (last_t[order[i]].mean + last_t[order[i - 1]].mean);

  for (std::size_t e = 0; e < P; ++e)
    for (std::size_t c = 0; c < C; ++c)
    {
      const long steps = cps[c] - first;
      const Moments mr = gather(r4, e, c), mt = gather(t4, e, c);
      const double env = std::exp(log_base[e] + log_envelope(inc, steps, cfg.monte_carlo.c_max, phiE[e]));
      const double target = mr.mean + 3.0 * mr.stderr_;
      const double cfit = fit_constant(inc, steps, phiE[e], log_base[e], target);
      double ref_env = nan;
      std::int64_t escaped = 0;
      if (cfg.monte_carlo.reference_scale)
      {
        ref_env = std::exp(log_base[e] + log_envelope(inc_ref, steps, cfg.monte_carlo.c_max, phiE[e]));
        escaped = mr.median > cfg.monte_carlo.escape_factor * ref_env;
      }
      tab.add({pts[e], static_cast<std::int64_t>(cps[c]), phiE[e], static_cast<std::int64_t>(T),
               mr.mean, mr.stderr_, mr.median, mt.mean, mt.stderr_, env, cfit,
               static_cast<std::int64_t>(target <= env), ref_env, escaped,
               static_cast<std::int64_t>(total_repairs), c + 1 == C ? proxy : nan});
    }
  return tab;
}

Table wvn_scan_table(const ExperimentConfig &cfg, int threads)
{
  if (!std::holds_alternative<OscillatorySpec>(cfg.perturbation))
    fail(Errc::invalid_spec, "wvn-scan needs an oscillatory perturbation");
  const auto pts = band_interior_points(cfg);
  const auto freqs = oscillation_frequencies(cfg.perturbation);
  TrajectoryOptions opt = options_from(cfg);
  opt.record_every = cfg.horizon;
  opt.enforce_branch = false;

  struct Row
  {
    double k = 0.0, phi = 0.0, sup = 0.0, fin = 0.0, div = 0.0, err = 0.0;
    long flags = 0;
  };
  std::vector<Row> rows(pts.size());
  auto divisor = [&](double k, long q) {
    double d = std::numeric_limits<double>::infinity();
    for (long M : cfg.wvn.M)
      for (double ph : freqs)
        d = std::min(d, small_divisor(-2.0 * static_cast<double>(M) * k - ph, q));
    return d;
  };
  if (cfg.cmv())
  {
    const auto alpha = cmv_alpha(cfg, 0, cfg.horizon + 1);
    parallel_indices(pts.size(), threads, [&](std::size_t i) {
      const FloquetData f = cmv_floquet(cfg, pts[i]);
      const auto r = cmv_trajectory(alpha, f, opt);
      rows[i] = {f.k, f.phi_E, r.sup_R, r.final_R, divisor(f.k, f.q), r.max_check_error,
                 r.branch_flags};
    });
  }
  else
  {
    const auto coeffs = jacobi_coeffs(cfg, 0, cfg.horizon + 2);
    parallel_indices(pts.size(), threads, [&](std::size_t i) {
      const JacobiReference ref = make_reference(cfg, pts[i]);
      const auto r = jacobi_trajectory(coeffs, pts[i], ref, opt);
      rows[i] = {ref.floquet.k, ref.floquet.phi_E, r.sup_R, r.final_R,
                 divisor(ref.floquet.k, ref.floquet.q), r.max_check_error, r.branch_flags};
    });
  }
  Table t({grid_label(cfg), "k", "phi_E", "sup_R", "R_final", "min_divisor", "flagged",
           "max_check_error", "branch_flags"});
  for (std::size_t i = 0; i < pts.size(); ++i)
    t.add({pts[i], rows[i].k, rows[i].phi, rows[i].sup, rows[i].fin, rows[i].div,
           static_cast<std::int64_t>(rows[i].div < cfg.wvn.threshold), rows[i].err,
           static_cast<std::int64_t>(rows[i].flags)});
  return t;
}

RunResult lambda_check(const ExperimentConfig &cfg)
{
  RunResult out;
  out.table = Table({"kind", "index", "q", "kappa", "residual", "lhs", "rhs", "holds"});
  bool ok = true;
  auto add_lambda = [&](const char *kind, std::size_t idx, const std::vector<cplx> &f, double kappa) {
    const PeriodicSequence fs(f);
    const PeriodicSequence g = lambda_kappa(fs, kappa);
    const double res = lambda_residual(fs, g, kappa);
    const auto [lhs, rhs] = lambda_norm_bound(fs, kappa);
    const bool holds = res <= 1e-12 && lhs <= rhs + 1e-12;
    ok = ok && holds;
    out.table.add({std::string(kind), static_cast<std::int64_t>(idx),
                   static_cast<std::int64_t>(f.size()), kappa, res, lhs, rhs,
                   static_cast<std::int64_t>(holds)});
  };
  for (std::size_t i = 0; i < cfg.lambda.cases.size(); ++i)
    add_lambda("case", i, cfg.lambda.cases[i].f, cfg.lambda.cases[i].kappa);

  // Random draws keep |e^{i kappa q} - 1| >= 0.05 so rounding in g stays below 1e-12.
  constexpr std::uint64_t lambda_channel = 100;
  for (long i = 0; i < cfg.lambda.random_count; ++i)
  {
    for (std::uint64_t attempt = 0;; ++attempt)
    {
      const DrawKey key{cfg.seed, static_cast<std::uint64_t>(i), lambda_channel, 0, attempt};
      const long q = 1 + static_cast<long>(draw_unit(key, 0) * static_cast<double>(cfg.lambda.q_max));
      const double kappa = two_pi * draw_unit(key, 1);
      if (small_divisor(kappa, q) < 0.05)
        continue;
      std::vector<cplx> f;
      for (long j = 0; j < q; ++j)
        f.emplace_back(2.0 * draw_unit(key, 2 + 2 * j) - 1.0, 2.0 * draw_unit(key, 3 + 2 * j) - 1.0);
      add_lambda("random", static_cast<std::size_t>(i), f, kappa);
      break;
    }
  }

  for (std::size_t i = 0; i < cfg.lambda.sbp.size(); ++i)
  {
    const SbpCase &s = cfg.lambda.sbp[i];
    std::vector<double> eta(static_cast<std::size_t>(s.N + 1), 0.0);
    double k = 0.0;
    TrajectoryOptions opt = options_from(cfg);
    opt.horizon = s.N + 1;
    opt.record_every = opt.horizon;
    opt.enforce_branch = false;
    opt.keep_series = true;
    if (cfg.cmv())
    {
      const FloquetData f = cmv_floquet(cfg, s.energy);
      k = f.k;
      if (s.from_trajectory)
      {
        const auto r = cmv_trajectory(cmv_alpha(cfg, 0, s.N + 2), f, opt);
        std::copy(r.eta.begin() + 1, r.eta.begin() + 1 + static_cast<long>(eta.size()), eta.begin());
      }
    }
    else
    {
      ExperimentConfig c2 = cfg;
      c2.reference = "floquet";
      const JacobiReference ref = make_reference(c2, s.energy);
      k = ref.floquet.k;
      if (s.from_trajectory)
      {
        const auto r = jacobi_trajectory(jacobi_coeffs(cfg, 0, s.N + 3), s.energy, ref, opt);
        std::copy(r.eta.begin(), r.eta.begin() + static_cast<long>(eta.size()), eta.begin());
      }
    }
    const auto r = sbp_residual(PeriodicSequence(s.f), s.M, s.phi, s.sigma, eta, k, s.N);
    ok = ok && r.holds();
    out.table.add({std::string("sbp"), static_cast<std::int64_t>(i),
                   static_cast<std::int64_t>(s.f.size()), r.kappa, nan, r.lhs, r.rhs,
                   static_cast<std::int64_t>(r.holds())});
  }
  if (!ok)
  {
    out.status = 3;
    out.message = "a periodic-summation residual or bound check failed";
  }
  return out;
}

RunResult dfly_check(const ExperimentConfig &cfg)
{
  RunResult out;
  out.table = Table({"sample", "alpha_even_re", "alpha_even_im", "alpha_odd_re", "alpha_odd_im",
                     "theta", "residual", "holds"});
  constexpr std::uint64_t dfly_channel = 200;
  bool ok = true;
  for (long i = 0; i < cfg.dfly.samples; ++i)
  {
    const DrawKey key{cfg.seed, static_cast<std::uint64_t>(i), dfly_channel, 0, 0};
    auto disk = [&](std::uint64_t lane) {
      return std::polar(cfg.dfly.radius * std::sqrt(draw_unit(key, lane)),
                        two_pi * draw_unit(key, lane + 1));
    };
    const cplx ae = disk(0), ao = disk(2);
    const double theta = two_pi * draw_unit(key, 4);
    const double r = dfly_residual(ae, ao, std::polar(1.0, theta));
    const bool holds = r <= 1e-12;
    ok = ok && holds;
    out.table.add({static_cast<std::int64_t>(i), ae.real(), ae.imag(), ao.real(), ao.imag(), theta,
                   r, static_cast<std::int64_t>(holds)});
  }
  if (!ok)
  {
    out.status = 3;
    out.message = "DFLY residual above 1e-12";
  }
  return out;
}

RunResult validate_spec_table(const ExperimentConfig &cfg)
{
  RunResult out;
  out.table = Table({"check", "value", "pass", "detail"});
  const auto report = validate_spec(cfg.perturbation, cfg.cmv());
  for (const auto &c : report.checks)
    out.table.add({c.name, c.value, static_cast<std::int64_t>(c.pass), c.detail});
  if (!report.pass())
  {
    out.status = 2;
    out.message = "perturbation specification fails validation";
  }
  return out;
}

const std::vector<std::string> &command_names()
{
  static const std::vector<std::string> names{"band-scan",   "trajectory", "random-mc",
                                              "wvn-scan",    "lambda-check", "dfly-check",
                                              "validate-spec"};
  return names;
}

RunResult run_experiment(const ExperimentConfig &cfg, const std::string &command, int threads)
{
  if (!cfg.command.empty() && cfg.command != command)
    fail(Errc::invalid_spec, "configuration is for \"" + cfg.command + "\", not \"" + command + "\"");
  if (command == "band-scan")
    return {band_scan_table(cfg), 0, {}};
  if (command == "trajectory")
    return {trajectory_table(cfg, threads), 0, {}};
  if (command == "random-mc")
    return {random_mc_table(cfg, threads), 0, {}};
  if (command == "wvn-scan")
    return {wvn_scan_table(cfg, threads), 0, {}};
  if (command == "lambda-check")
    return lambda_check(cfg);
  if (command == "dfly-check")
    return dfly_check(cfg);
  if (command == "validate-spec")
    return validate_spec_table(cfg);
  fail(Errc::invalid_spec, "unknown command \"" + command + "\"");
}

}  // namespace prufer
