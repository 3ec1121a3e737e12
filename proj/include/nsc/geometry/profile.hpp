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

#ifndef NSC_GEOMETRY_PROFILE_HPP
#define NSC_GEOMETRY_PROFILE_HPP

#include <complex>
#include "nsc/geometry/mikado.hpp"

namespace nsc::geometry {

// C-infinity step that is 0 for u <= 0 and 1 for u >= 1, built from
// f(u) = exp(-1/u):  S(u) = f(u) / (f(u) + f(1-u)).
double smoothstep(double u);

// Radial tube cross-section: chi = 1 on [0, (1-s) delta0], descends by a
// smoothstep over [(1-s) delta0, delta0], and vanishes beyond.  The
// transition fraction s is root-found so that
//     20 pi^2 int_0^delta0 chi^2 r dr = (10 pi^2 - eps0) delta0^2,
// i.e. the squared profile fills the cylinder volume up to the prescribed
// deficit eps0.
struct TubeProfile {
    double delta0 = 1.0 / 15.0;
    double eps0 = 0.5;
    double s = 0.0;

    double plateau_radius() const { return (1.0 - s) * delta0; }
    double chi(double r) const;

    // int_0^delta0 chi^2 r dr (plateau part analytic, transition by
    // composite Gauss-Legendre)
    double chi_sq_moment() const;

    // H(kappa) = 2 pi int_0^delta0 chi(r) J0(kappa r) r dr; the radial
    // (Hankel) transform of the cross-section.
    double hankel(double kappa) const;
};

TubeProfile make_tube_profile(double delta0 = 1.0 / 15.0, double eps0 = 0.5);

// Fourier coefficient of the periodized five-strand tube field of line j
// at a lattice vector zeta orthogonal to theta_j:
//     phi_hat_j(zeta) = 5 / (4 pi^2) H(|zeta|) exp(-i zeta . x_j).
std::complex<double> tube_fourier_coefficient(const TubeProfile& p,
                                              const MikadoLines& lines,
                                              int j, const Vec3I& zeta);

} // namespace nsc::geometry

#endif
