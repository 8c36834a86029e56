// Copyright prufer contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "prufer/szego.hpp"

namespace prufer
{

struct CmvPruferState
{
  cplx Z;
  double R = 0.0;
  double eta = 0.0;  // unwrapped
  long n = 0;
  double omega = 0.0;  // |v2|^2 - |v1|^2 of the reference solution
};

CmvPruferState make_cmv_prufer_state(cplx Z, long n, double omega);

// omega = W(v, v*) = |v2|^2 - |v1|^2; throws if v and v* are (numerically) dependent.
double cmv_omega(const Spinor &v);

// Z(n) = W(u, v*)(n) / omega for a C-fixed solution u.
cplx z_decompose(const Spinor &u, const Spinor &v, double omega);

// Z v + conj(Z) v*.
Spinor reconstruct_u(cplx Z, const Spinor &v);

// sqrt(1 - |alpha + alpha'|^2) - sqrt(1 - |alpha|^2).
double rho_prime(cplx alpha, cplx alpha_prime);

// W(u, v*)(n+1) - W(u, v*)(n) written with the data at n, for u solving the recursion with
// alpha + alpha' and v with alpha.
cplx cmv_wronskian_increment(const Spinor &u, const Spinor &v, cplx alpha, cplx alpha_prime);

// Z(n+1)/Z(n) from the closed-form recursion at v(n), alpha_n, alpha'_n.
cplx prufer_ratio_szego(const CmvPruferState &state, const Spinor &v, cplx alpha,
                        cplx alpha_prime);

CmvPruferState prufer_step_szego(const CmvPruferState &state, const Spinor &v, cplx alpha,
                                 cplx alpha_prime);

cplx log_ratio_cmv(const CmvPruferState &before, const CmvPruferState &after);

// 2 i omega R_1 R_2 sin(eta_1 - eta_2), which equals W(u_1, u_2)(n).
cplx prufer_wronskian_cmv(const CmvPruferState &u1, const CmvPruferState &u2);

// u(0) = (kappa, conj(kappa)).
Spinor cmv_initial_u(cplx kappa, const SqrtBranch &branch);

// The (1, lambda) initial data equals conj(kappa) (kappa, conj(kappa)) for kappa = conj(sqrt(lambda))
// (principal root); returns that kappa.
cplx kappa_from_lambda(cplx lambda);

}  // namespace prufer
