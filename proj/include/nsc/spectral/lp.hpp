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

#ifndef NSC_SPECTRAL_LP_HPP
#define NSC_SPECTRAL_LP_HPP

#include <vector>
#include "nsc/spectral/field.hpp"

namespace nsc::spectral {

// Radial low-pass symbol: 1 on [0, 2/3], smoothstep descent on
// [2/3, 3/4], 0 beyond.  Built from exp(-1/x) bump pieces, so the dyadic
// differences telescope exactly.
double lowpass_symbol(double r);

// Band symbol psi(r) = lowpass_symbol(r/2) - lowpass_symbol(r), supported
// on (2/3, 3/2) with psi(1) = 1.
double band_symbol(double r);

// P_N: multiply by band_symbol(|xi| / N).
void project_band(SpectralField& f, double N);
void project_band(VectorField& u, double N);

// Annulus indicator (N / sqrt 2, sqrt 2 N] used for the cascade shell
// diagnostics (each ladder frequency owns one band even when the ladder
// is not dyadic).
void project_shell_annulus(SpectralField& f, double N);
void project_shell_annulus(VectorField& u, double N);

// Dyadic frequencies N = 2^j whose band can intersect the stored modes
// of this grid (the cubic storage corner reaches sqrt(3) n/2).
std::vector<double> dyadic_frequencies(const Grid& g);

// Besov norm || N^s sup_x |P_N u| ||_{l^q over dyadic N} for p = infinity,
// and the Parseval route for p = 2.  q may be 1, 2, or 0 meaning infinity.
// For zero-mean fields the low-pass block vanishes identically (the
// symbol is zero at every nonzero lattice point below the first band), so
// only the bands contribute; a nonzero mean adds |mean| at N = 1 weight.
// When `oversample` is set, sup norms use the half-shifted 2x lattice.
double besov_norm_sup(const VectorField& u, double s, int q, bool oversample = false);
double besov_norm_l2(const VectorField& u, double s, int q);

// Per-band sup amplitudes (pairs of N and sup |P_N u|), for reports.
std::vector<std::pair<double, double>> band_profile(const VectorField& u,
                                                    bool oversample = false);

} // namespace nsc::spectral

#endif
