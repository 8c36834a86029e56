// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "prufer/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace prufer
{

namespace
{

constexpr double bisection_tol = 1e-10;

template <typename F>
std::vector<Band> scan(const Grid &grid, double margin, F &&delta)
{
  const auto xs = grid.values();
  if (xs.empty())
    fail(Errc::invalid_spec, "band scan needs a nonempty grid");
  if (!(margin >= 0.0 && margin < 2.0))
    fail(Errc::invalid_spec, "band margin must lie in [0, 2)");
  auto inside = [&](double x) { return std::abs(delta(x)) < 2.0 - margin; };
  // Bisect between an inside and an outside point.
  auto edge = [&](double in, double out) {
    while (std::abs(out - in) > bisection_tol)
    {
      const double mid = 0.5 * (in + out);
      (inside(mid) ? in : out) = mid;
    }
    return 0.5 * (in + out);
  };

  std::vector<Band> bands;
  bool open = inside(xs[0]);
  double lo = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i)
  {
    const bool now = inside(xs[i]);
    if (now && !open)
      lo = edge(xs[i], xs[i - 1]);
    else if (!now && open)
      bands.push_back({lo, edge(xs[i - 1], xs[i])});
    open = now;
  }
  if (open)
    bands.push_back({lo, xs.back()});
  return bands;
}

// Eigenvector of M for eigenvalue lam, using whichever row of (M - lam I) is better conditioned.
CVec2 eigenvector(const CMat2 &M, cplx lam)
{
  const CVec2 x1(M(0, 1), lam - M(0, 0));
  const CVec2 x2(lam - M(1, 1), M(1, 0));
  return x1.norm() >= x2.norm() ? x1 : x2;
}

cplx upper_eigenvalue(double delta)
{
  return {0.5 * delta, std::sqrt(1.0 - 0.25 * delta * delta)};
}

void require_interior(double delta, const std::string &where)
{
  if (!(std::abs(delta) < 2.0))
    fail(Errc::band_edge, where + " is not strictly inside a band (|Delta| = " +
                              std::to_string(std::abs(delta)) + ")");
}

void fill_phases(FloquetData &f, const std::vector<cplx> &samples)
{
  f.modulus.clear();
  f.varpi.clear();
  double gamma = 0.0;
  for (long n = 0; n < f.q; ++n)
  {
    const cplx s = samples[static_cast<std::size_t>(n)];
    const double arg = std::arg(s);
    gamma = n == 0 ? wrap_two_pi(arg) : gamma + wrap_two_pi(arg - gamma);
    f.modulus.push_back(std::abs(s));
    f.varpi.push_back(gamma - f.k * static_cast<double>(n));
  }
}

template <typename F>
double sup_phi(double lo, double hi, long points, F &&solve)
{
  if (points < 1 || !(lo <= hi))
    fail(Errc::invalid_spec, "phi_bound needs lo <= hi and at least one point");
  const Grid g{lo, hi, points};
  double sup = 0.0;
  for (double x : g.values())
    sup = std::max(sup, solve(x).phi_E);
  return sup;
}

}  // namespace

PeriodicJacobi::PeriodicJacobi(std::vector<double> a_, std::vector<double> b_)
  : a(std::move(a_)), b(std::move(b_))
{
  if (a.empty() || a.size() != b.size())
    fail(Errc::invalid_coefficients, "periodic background needs q >= 1 values of both a and b");
  for (double x : a)
    if (!(x > 0.0) || !std::isfinite(x))
      fail(Errc::invalid_coefficients, "periodic a entries must be positive and finite");
  for (double x : b)
    if (!std::isfinite(x))
      fail(Errc::invalid_coefficients, "periodic b entries must be finite");
}

PeriodicJacobi PeriodicJacobi::free(long q)
{
  return PeriodicJacobi(std::vector<double>(static_cast<std::size_t>(q), 1.0),
                        std::vector<double>(static_cast<std::size_t>(q), 0.0));
}

JacobiCoefficients PeriodicJacobi::coefficients(RealSequence pert_a, RealSequence pert_b) const
{
  return JacobiCoefficients(RealSequence::periodic(a, 1), RealSequence::periodic(b, 1),
                            std::move(pert_a), std::move(pert_b));
}

PeriodicVerblunsky::PeriodicVerblunsky(std::vector<cplx> alpha_) : alpha(std::move(alpha_))
{
  if (alpha.empty())
    fail(Errc::disk_violation, "periodic Verblunsky background needs q >= 1 values");
  for (cplx x : alpha)
    if (!(std::norm(x) < 1.0) || !std::isfinite(x.real()) || !std::isfinite(x.imag()))
      fail(Errc::disk_violation, "periodic alpha entries must lie in the open unit disk");
}

VerblunskySequence PeriodicVerblunsky::sequence(ComplexSequence pert) const
{
  return VerblunskySequence(ComplexSequence::periodic(alpha, 0), std::move(pert));
}

Mat2 monodromy(const PeriodicJacobi &bg, double E)
{
  return transfer_matrix(bg.coefficients(), E, bg.period(), false);
}

CMat2 monodromy(const PeriodicVerblunsky &bg, const SqrtBranch &z)
{
  CMat2 M = CMat2::Identity();
  for (cplx a : bg.alpha)
    M = (a_matrix(a, z.z) / z.sqrt_z) * M;
  return M;
}

double discriminant(const PeriodicJacobi &bg, double E) { return monodromy(bg, E).trace(); }

double discriminant(const PeriodicVerblunsky &bg, const SqrtBranch &z)
{
  return monodromy(bg, z).trace().real();
}

std::vector<double> Grid::values() const
{
  std::vector<double> out;
  if (points <= 0)
    return out;
  if (points == 1)
    return {min};
  out.reserve(static_cast<std::size_t>(points));
  const double h = (max - min) / static_cast<double>(points - 1);
  for (long i = 0; i < points; ++i)
    out.push_back(i + 1 == points ? max : min + h * static_cast<double>(i));
  return out;
}

std::vector<Band> band_scan(const PeriodicJacobi &bg, const Grid &grid, double margin)
{
  return scan(grid, margin, [&](double E) { return discriminant(bg, E); });
}

std::vector<Band> band_scan(const PeriodicVerblunsky &bg, const Grid &grid, double margin)
{
  return scan(grid, margin,
              [&](double t) { return discriminant(bg, SqrtBranch::from_angle(t)); });
}

FloquetData floquet_solution(const PeriodicJacobi &bg, double E)
{
  const Mat2 M = monodromy(bg, E);
  const double delta = M.trace();
  require_interior(delta, "E = " + std::to_string(E));

  FloquetData f;
  f.q = bg.period();
  f.lambda = upper_eigenvalue(delta);
  f.k = std::arg(f.lambda) / static_cast<double>(f.q);

  const CVec2 x = eigenvector(M.cast<cplx>(), f.lambda);
  // x = (a_1 phi(1), phi(0)); phi(0) != 0 since a real-ratio eigenvector cannot carry a
  // non-real eigenvalue.
  const cplx phi0 = x(1);
  if (std::abs(phi0) == 0.0)
    fail(Errc::degenerate, "Floquet eigenvector has phi(0) = 0");
  const JacobiCoefficients c = bg.coefficients();
  SolutionWindow w{1, 1.0, x(0) / phi0 / c.a(1)};
  f.phi = {w.prev, w.curr};
  for (long n = 1; n < f.q; ++n)
  {
    w = step_jacobi(c, E, w, false);
    f.phi.push_back(w.curr);
  }
  f.phi.resize(static_cast<std::size_t>(f.q));
  fill_phases(f, f.phi);
  f.omega = 2.0 * c.a(1) * (std::conj(f.phi_at(0)) * f.phi_at(1)).imag();
  if (!(std::abs(f.omega) > Tolerance::exact))
    fail(Errc::degenerate, "Floquet solution has omega = 0");
  double sup = 0.0;
  for (double m : f.modulus)
    sup = std::max(sup, m * m);
  f.phi_E = sup / std::abs(f.omega);
  return f;
}

FloquetData floquet_solution(const PeriodicVerblunsky &bg, const SqrtBranch &z)
{
  const CMat2 M = monodromy(bg, z);
  const double delta = M.trace().real();
  require_interior(delta, "theta = " + std::to_string(z.theta));

  FloquetData f;
  f.q = bg.period();
  f.branch = z;
  f.lambda = upper_eigenvalue(delta);
  f.k = std::arg(f.lambda) / static_cast<double>(f.q);

  CVec2 x = eigenvector(M, f.lambda);
  double omega = std::norm(x(1)) - std::norm(x(0));
  if (!(std::abs(omega) > Tolerance::exact * x.squaredNorm()))
    fail(Errc::degenerate, "Floquet spinor has v and v* dependent");
  // |omega| = 1 and v2(0) real positive when possible.
  x /= std::sqrt(std::abs(omega));
  if (std::abs(x(1)) > 0.0)
    x *= std::conj(x(1)) / std::abs(x(1));
  // Phases follow the dominant component; |v1| != |v2| throughout since omega is conserved.
  const int c = std::abs(x(1)) >= std::abs(x(0)) ? 1 : 0;
  Spinor v{x(0), x(1), 0, z};
  std::vector<cplx> comp;
  for (long n = 0; n < f.q; ++n)
  {
    f.v.push_back(v.vec());
    comp.push_back(v.vec()(c));
    v = szego_step(v, bg.alpha[static_cast<std::size_t>(n)]);
  }
  f.omega = std::norm(f.v[0](1)) - std::norm(f.v[0](0));
  fill_phases(f, comp);
  double sup = 0.0;
  for (std::size_t n = 0; n < f.v.size(); ++n)
  {
    f.modulus[n] = f.v[n].norm();
    sup = std::max(sup, f.v[n].squaredNorm());
  }
  f.phi_E = sup / std::abs(f.omega);
  return f;
}

namespace
{

// e^{i k q m}. A double product k * (q m) carries rounding noise of order n * 1e-16 that differs
// from sample to sample; the extended-precision product keeps consecutive samples coherent.
cplx bloch_factor(double k, long qm)
{
  const long double two_pi_l = 2.0L * std::numbers::pi_v<long double>;
  const long double a = std::fmod(static_cast<long double>(k) * static_cast<long double>(qm), two_pi_l);
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

}  // namespace

cplx FloquetData::phi_at(long n) const
{
  if (n < 0 || phi.empty())
    fail(Errc::out_of_range, "Floquet phi index " + std::to_string(n));
  const long m = n / q;
  return bloch_factor(k, q * m) * phi[static_cast<std::size_t>(n % q)];
}

Spinor FloquetData::v_at(long n) const
{
  if (n < 0 || v.empty())
    fail(Errc::out_of_range, "Floquet spinor index " + std::to_string(n));
  const long m = n / q;
  const cplx s = bloch_factor(k, q * m);
  const CVec2 &x = v[static_cast<std::size_t>(n % q)];
  return {s * x(0), s * x(1), n, branch};
}

double phi_bound(const PeriodicJacobi &bg, double lo, double hi, long points)
{
  return sup_phi(lo, hi, points, [&](double E) { return floquet_solution(bg, E); });
}

double phi_bound(const PeriodicVerblunsky &bg, double lo, double hi, long points)
{
  return sup_phi(lo, hi, points,
                 [&](double t) { return floquet_solution(bg, SqrtBranch::from_angle(t)); });
}

cplx JacobiReference::at(long n) const
{
  const cplx p = floquet.phi_at(n);
  return c1 * p + c2 * std::conj(p);
}

JacobiReference JacobiReference::from_floquet(FloquetData f)
{
  JacobiReference r;
  r.omega = f.omega;
  r.floquet = std::move(f);
  return r;
}

JacobiReference JacobiReference::unit_wronskian(FloquetData f, double a1)
{
  // Solve c1 p + c2 conj(p) = (1, i / a1) at n = 0, 1.
  const cplx p0 = f.phi_at(0), p1 = f.phi_at(1);
  const cplx t0 = 1.0, t1 = I / a1;
  const cplx det = p0 * std::conj(p1) - std::conj(p0) * p1;
  JacobiReference r;
  r.c1 = (t0 * std::conj(p1) - std::conj(p0) * t1) / det;
  r.c2 = (p0 * t1 - t0 * p1) / det;
  r.omega = (std::norm(r.c1) - std::norm(r.c2)) * f.omega;
  r.floquet = std::move(f);
  return r;
}

}  // namespace prufer
