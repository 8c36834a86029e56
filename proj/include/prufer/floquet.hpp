// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "prufer/jacobi.hpp"
#include "prufer/szego.hpp"

namespace prufer
{

// a[j], b[j] are a_{j+1}, b_{j+1}; the pattern repeats with period q = a.size().
struct PeriodicJacobi
{
  std::vector<double> a, b;

  PeriodicJacobi(std::vector<double> a, std::vector<double> b);
  static PeriodicJacobi free(long q = 1);

  long period() const { return static_cast<long>(a.size()); }
  JacobiCoefficients coefficients(RealSequence pert_a = RealSequence::constant(0.0),
                                  RealSequence pert_b = RealSequence::constant(0.0)) const;
};

// alpha[j] is alpha_j; period q = alpha.size().
struct PeriodicVerblunsky
{
  std::vector<cplx> alpha;

  explicit PeriodicVerblunsky(std::vector<cplx> alpha);

  long period() const { return static_cast<long>(alpha.size()); }
  VerblunskySequence sequence(ComplexSequence pert = ComplexSequence::constant(0.0)) const;
};

// One period of transfer factors. Jacobi: acts on (a_1 u(1), u(0)). CMV: product of
// z^{-1/2} A(alpha_j, z), j = 0..q-1, determinant 1 and real trace.
Mat2 monodromy(const PeriodicJacobi &bg, double E);
CMat2 monodromy(const PeriodicVerblunsky &bg, const SqrtBranch &z);

double discriminant(const PeriodicJacobi &bg, double E);
double discriminant(const PeriodicVerblunsky &bg, const SqrtBranch &z);

struct Band
{
  double lo, hi;
};

struct Grid
{
  double min = 0.0, max = 0.0;
  long points = 0;
  std::vector<double> values() const;
};

// Intervals of the grid span where |Delta| < 2 - margin; interior endpoints bisected to 1e-10.
// `x` is E (Jacobi) or the arc angle theta (CMV).
std::vector<Band> band_scan(const PeriodicJacobi &bg, const Grid &grid, double margin = 0.0);
std::vector<Band> band_scan(const PeriodicVerblunsky &bg, const Grid &grid, double margin = 0.0);

// Floquet solution at a strict band-interior point: phi(n + q) = lambda phi(n), lambda = e^{ikq},
// Im lambda > 0 so k is in (0, pi/q). Samples cover one period; phi_at() extends them exactly.
struct FloquetData
{
  long q = 1;
  double k = 0.0;
  cplx lambda{1.0, 0.0};
  std::vector<double> modulus;  // |phi(n)|, n = 0..q-1 (Jacobi); |v(n)| (CMV)
  std::vector<double> varpi;    // gamma(n) - k n
  double omega = 0.0;
  double phi_E = 0.0;  // ||phi||_inf^2 / |omega|

  // Jacobi: phi(n), n >= 0, |phi(0)| = 1.
  std::vector<cplx> phi;
  cplx phi_at(long n) const;

  // CMV: v(n) for n = 0..q-1 on the branch of the energy, |omega| = 1.
  std::vector<CVec2> v;
  SqrtBranch branch;
  Spinor v_at(long n) const;
};

FloquetData floquet_solution(const PeriodicJacobi &bg, double E);
FloquetData floquet_solution(const PeriodicVerblunsky &bg, const SqrtBranch &z);

// sup of Phi(E) over `points` uniformly spaced energies of [lo, hi]; every point must be a strict
// band-interior energy.
double phi_bound(const PeriodicJacobi &bg, double lo, double hi, long points);
double phi_bound(const PeriodicVerblunsky &bg, double lo, double hi, long points);

// c1 phi + c2 conj(phi) for a Floquet solution phi. Evaluated in O(1) at any n >= 0.
struct JacobiReference
{
  FloquetData floquet;
  cplx c1{1.0, 0.0}, c2{0.0, 0.0};
  double omega = 0.0;

  cplx at(long n) const;
  SolutionWindow window(long n) const { return {n, at(n - 1), at(n)}; }

  static JacobiReference from_floquet(FloquetData f);
  // phi(0) = 1, a_1 phi(1) = i, so omega = 2.
  static JacobiReference unit_wronskian(FloquetData f, double a1);
};

}  // namespace prufer
