/***********************************************************************
*
*  Copyright 2026 the nscascade authors
*
*  Licensed under the Apache License, Version 2.0 (the "License");
*  you may not use this file except in compliance with the License.
*  You may obtain a copy of the License at
*
*      http://www.apache.org/licenses/LICENSE-2.0
*
*  Unless required by applicable law or agreed to in writing, software
*  distributed under the License is distributed on an "AS IS" BASIS,
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
*  implied.  See the License for the specific language governing
*  permissions and limitations under the License.
*
************************************************************************/

#ifndef NSC_SPECTRAL_OPS_HPP
#define NSC_SPECTRAL_OPS_HPP

#include <vector>

#include "nsc/spectral/field.hpp"

namespace nsc::spectral {

// Divergence-free projection, mode-wise u - xi (xi . u)/|xi|^2.  The zero
// mode is untouched (constants are divergence-free).
void leray_project(VectorField& u);

// Multiply every coefficient by exp(-|xi|^2 t).
void heat_propagate(SpectralField& f, double t);
void heat_propagate(VectorField& u, double t);

// Gaussian mollifier at length ell: multiply by exp(-|xi|^2 ell^2 / 2).
void mollify(SpectralField& f, double ell);
void mollify(VectorField& u, double ell);

// Two-thirds rule: zero every mode with any |xi_i| > n/3.
void dealias(SpectralField& f);
void dealias(VectorField& u);

// div u = sum_i d_i u_i
SpectralField divergence(const VectorField& u);
// (div T)_i = sum_j d_j T_ij for symmetric T
VectorField tensor_divergence(const SymTensorField& T);
// gradient of a scalar
VectorField gradient(const SpectralField& f);

// Modified symmetric gradient D f = (grad f + grad f^T)/2 - (div f) Id.
// Its divergence is (1/2) P Laplace f, which couples the stress layer to
// the projected Laplacian; tensor_divergence + leray reproduce that
// identity mode by mode.
SymTensorField modified_sym_gradient(const VectorField& f);

// Right inverse of the divergence on zero-mean fields: returns symmetric
// T with div T = V.  Mode-wise,
//   T_ij = i [ xi_i xi_j (xi.V)/(2|xi|^4) + delta_ij (xi.V)/(2|xi|^2)
//              - (xi_i V_j + xi_j V_i)/|xi|^2 ].
// The zero mode of V must vanish and is dropped.
SymTensorField anti_divergence(const VectorField& V);

// Laplacian and projected Laplacian
void laplacian(SpectralField& f);
VectorField projected_laplacian(const VectorField& f);

// Pointwise Euclidean sup over the collocation grid (3 inverse
// transforms, streamed max).
double sup_norm(const VectorField& u);
// Same on the 2x half-shifted lattice; used for reported norms.
double oversampled_sup(const VectorField& u);
// Largest |entry| of a tensor field over the 2x lattice, component by
// component (max commutes with the shift loop).
double oversampled_sup_maxentry(const SymTensorField& T);

// Advection term P div(u (x) u) computed with collocation products: three
// inverse transforms for the components, six forward transforms for the
// distinct products, divergence accumulated mode by mode, then projected.
// With mask set, modes beyond the two-thirds cutoff are zeroed so the
// quadratic images introduced by the grid products are discarded.
VectorField convective_term(const VectorField& u, bool mask);

// Parseval energy (cell average of |u|^2) and enstrophy (of |grad u|^2).
double mean_square(const VectorField& u);
double mean_square_gradient(const VectorField& u);

// out[m] = max over components and multi-indices |alpha| = m of
// sup_x |d^alpha u_c|, for m = 0..n_max.  One inverse transform per
// component and multi-index.
std::vector<double> derivative_sup_norms(const VectorField& u, int n_max);

// Fraction of the Parseval energy carried by modes beyond the two-thirds
// cutoff.  Quadratic diagnostics require this to be tiny on input.
double energy_fraction_above_cutoff(const VectorField& u);

// max_xi |xi . hat u(xi)| over stored modes; zero for projected fields up
// to rounding.
double divergence_sup_spectral(const VectorField& u);

// Relative L2 distance between fields, sqrt(sum |a-b|^2 / sum |b|^2).
double rel_l2_error(const SpectralField& a, const SpectralField& b);
double rel_l2_error(const VectorField& a, const VectorField& b);

} // namespace nsc::spectral

#endif
