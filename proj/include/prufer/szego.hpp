// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "prufer/sequence.hpp"
#include "prufer/types.hpp"

namespace prufer
{

// Background Verblunsky coefficients alpha_n (n >= 0) plus a perturbation alpha'_n. Every queried
// alpha_n and alpha_n + alpha'_n must lie in the open unit disk.
class VerblunskySequence
{
public:
  explicit VerblunskySequence(ComplexSequence background,
                              ComplexSequence pert = ComplexSequence::constant(0.0));

  cplx alpha(long n) const;
  cplx pert(long n) const;
  cplx total(long n) const;
  cplx alpha(long n, bool perturbed) const { return perturbed ? total(n) : alpha(n); }
  double rho(long n) const;
  double rho_total(long n) const;

  VerblunskySequence cached(long last) const;
  VerblunskySequence with_perturbation(ComplexSequence pert) const;

private:
  ComplexSequence alpha_, pert_;
};

// z on the unit circle with the square root fixed once: z = e^{i theta}, theta in [0, 2pi),
// z^{1/2} = e^{i theta / 2}.
struct SqrtBranch
{
  cplx z{1.0, 0.0};
  cplx sqrt_z{1.0, 0.0};
  double theta = 0.0;

  static SqrtBranch from_angle(double theta);
  static SqrtBranch from_z(cplx z);
  bool same_as(const SqrtBranch &o) const { return sqrt_z == o.sqrt_z; }
};

struct Spinor
{
  cplx v1{}, v2{};
  long n = 0;
  SqrtBranch branch{};

  CVec2 vec() const { return {v1, v2}; }
};

// (1/sqrt(1 - |alpha|^2)) [[z, -conj(alpha)], [-alpha z, 1]]
CMat2 a_matrix(cplx alpha, cplx z);

// v(n+1) = z^{-1/2} A(alpha, z) v(n), with the branch carried by v.
Spinor szego_step(const Spinor &v, cplx alpha);
// Same, reading alpha_n (or alpha_n + alpha'_n) at index v.n.
Spinor szego_step(const VerblunskySequence &alpha, const Spinor &v, bool perturbed);

// C(w1, w2) = (conj(w2), conj(w1)).
Spinor conjugation_star(const Spinor &v);

// W(f, g) = f2 g1 - g2 f1.
cplx spinor_wronskian(const Spinor &f, const Spinor &g);

// N x N truncation of the CMV matrix built from alpha_0, ..., alpha_N (perturbed totals if asked).
Eigen::MatrixXcd cmv_matrix(const VerblunskySequence &alpha, long N, bool perturbed = false);

// Largest entry of (C^* C - I) over rows whose band lies inside the truncation.
double cmv_interior_unitarity_defect(const Eigen::MatrixXcd &C);

struct GzPair
{
  cplx U{}, V{};
};

// R_n(alpha, z) with parity chosen by n:
//   odd:  (1/rho) [[-conj(alpha), z], [1/z, -alpha]]
//   even: (1/rho) [[-alpha, 1], [1, -conj(alpha)]]
CMat2 gz_matrix(cplx alpha, cplx z, long n);
GzPair gz_step(const GzPair &prev, cplx alpha, cplx z, long n);

// Entries k = 0..count-1 generated by (U_k, V_k) = R_k(alpha_{k-1}, z) (U_{k-1}, V_{k-1}) from
// arbitrary initial data, with alpha_{-1} := 0. With the CMV matrix of cmv_matrix(), the V entries
// satisfy (C V)_k = z V_k and the U entries (C^T U)_k = z U_k on rows away from the top boundary
// and the truncation edge.
std::vector<GzPair> gz_solution(const VerblunskySequence &alpha, cplx z, GzPair initial,
                                long count, bool perturbed = false);

// max |z^{-1} A(alpha_odd,z) A(alpha_even,z) - D R_odd R_even D^{-1}|, D = diag(1, z).
double dfly_residual(cplx alpha_even, cplx alpha_odd, cplx z);

}  // namespace prufer
