/******************************************************************************
*                                                                             *
*  Copyright 2026 the nscascade authors                                       *
*                                                                             *
*  Licensed under the Apache License, Version 2.0 (the "License");            *
*  you may not use this file except in compliance with the License.           *
*  You may obtain a copy of the License at                                    *
*                                                                             *
*      http://www.apache.org/licenses/LICENSE-2.0                             *
*                                                                             *
*  Unless required by applicable law or agreed to in writing, software        *
*  distributed under the License is distributed on an "AS IS" BASIS,          *
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.   *
*  See the License for the specific language governing permissions and        *
*  limitations under the License.                                             *
*                                                                             *
******************************************************************************/

#ifndef NSC_CONSTRUCTION_PRINCIPAL_HPP
#define NSC_CONSTRUCTION_PRINCIPAL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nsc/construction/scales.hpp"
#include "nsc/geometry/mikado.hpp"
#include "nsc/geometry/nash.hpp"
#include "nsc/geometry/profile.hpp"
#include "nsc/spectral/field.hpp"
#include "nsc/spectral/grid.hpp"

namespace nsc::construction {

// Everything measured while building one induction stage k >= 1.
struct StageDiagnostics {
    int k = 0;
    std::array<double, 6> B{};             // realized mean squares of the six waves
    std::array<std::size_t, 6> modes{};    // lattice harmonics kept per wave
    double S = 0.0;                        // sup of the driving deformation tensor
    double p = 0.0;                        // isotropic pressure constant
    double identity_residual = 0.0;        // relative to 4 N_{k-1} S
    double eps_max = 0.0;                  // worst matrix-argument entry (<= 1/7)
    double a_min = 0.0;
    double a_max = 0.0;
};

// The assembled construction: one vector potential per stage plus the
// measured constants that certify the inter-stage identities.
struct CoefficientTable {
    ScaleTable scales;
    spectral::Grid grid;
    geometry::NashFrame frame;
    geometry::MikadoLines lines;
    geometry::TubeProfile profile;

    double c_star = 0.0;                      // largest entry of the unit shear pair
    double a0 = 0.0;                          // the single k = 0 coefficient
    std::vector<StageDiagnostics> stages;     // k = 1 .. k_star
    std::vector<double> dpsi_sup;             // deformation sups, k = 0 .. k_star
    std::vector<spectral::VectorField> psi;   // initial potentials psi_k, k = 0 .. k_star

    // Scalar time factor of component k and its exact derivative.  The flow
    // is v(x,t) = sum_k time_factor(k,t) P Laplace psi_k.
    double time_factor(int k, double t) const;
    double time_factor_dt(int k, double t) const;
    // |eta_star|^2 for k = 0, N_k^2 otherwise: the heat rate of the carrier.
    double carrier_rate(int k) const;
};

// Runs the stage induction on the grid recorded in the scale table.
CoefficientTable build_coefficients(const ScaleTable& scales);

// One tube-carried wave: the tube envelope of line j sampled on the lattice
// of frequency M, multiplied by sin(N eta_j . x).  Only envelope harmonics
// whose two carrier sidebands stay inside the radial band [3N/4, 4N/3] and
// inside the dealiased cube are realized; the surviving set is symmetric, so
// the wave is real.  `kept` receives the number of surviving harmonics.
spectral::SpectralField synthesize_wave(const spectral::Grid& g,
                                        const geometry::NashFrame& frame,
                                        const geometry::MikadoLines& lines,
                                        const geometry::TubeProfile& profile,
                                        int j, long N, long M,
                                        std::size_t* kept = nullptr);

// P Laplace psi_k, the spatial shape of component k.
spectral::VectorField flow_component(const CoefficientTable& table, int k);

// v(.,t), or a single component of it.  t must be nonnegative.
spectral::VectorField assemble_v(const CoefficientTable& table, double t);
spectral::VectorField assemble_v_single(const CoefficientTable& table, int k, double t);

// Splits component k into the transport-normalized part built directly from
// the coefficient fields and the remainder (activation deficit, smoothing,
// and operator corrections).  principal + error = assemble_v_single exactly.
struct FlowSplit {
    spectral::VectorField principal;
    spectral::VectorField error;
};
FlowSplit split_component(const CoefficientTable& table, int k, double t);

// Initial data u0 = v(.,0) together with its frequency-localization report.
struct NormReport {
    double sup = 0.0;                 // pointwise Euclidean sup
    double besov = 0.0;               // sum over dyadic bands of N^{-1} ||P_N u||_inf
    double mean_abs = 0.0;            // |cell average|, zero by construction
    std::vector<std::pair<double, double>> bands;  // (N, ||P_N u||_inf)
    double peak_band = 0.0;
    double peak_band_sup = 0.0;
    double leakage = 0.0;             // worst off-target band sup / peak band sup
};
struct InitialData {
    spectral::VectorField u0;
    NormReport norms;
};
InitialData assemble_u0(const CoefficientTable& table);

// Checks that the divergence of the slow stress layer of stage k+1 matches
// the designed transfer onto stage k.  Both sides are assembled through
// independent routes: the left from the coefficient fields pointwise, the
// right from the stored potential spectrally.  Requires 0 <= k < k_star.
struct CancellationReport {
    double lhs_sup = 0.0;
    double rhs_sup = 0.0;
    double residual = 0.0;  // relative to rhs_sup
};
CancellationReport verify_key_cancellation(const CoefficientTable& table, int k, double t);

// Force residual g(t) = d_t v - Laplace v + P div(v (x) v) with the time
// derivative taken analytically.  `ratio` compares the residual against the
// advection term it rides on; `bound_shape` evaluates the configured
// reference envelope A^-beta (N0^2 t)^(alpha/2+beta) e^(-N0^2 t) t^-(2+alpha)/2.
struct ForceSample {
    double t = 0.0;
    double g_sup = 0.0;
    double transport_sup = 0.0;
    double ratio = 0.0;
    double bound_shape = 0.0;
};
ForceSample force_residual(const CoefficientTable& table, double t,
                           double alpha, double beta);
// Samples the residual on a geometric grid of `per_decade` points per decade
// spanning [t0, t1] (both endpoints included).
std::vector<ForceSample> force_profile(const CoefficientTable& table,
                                       double t0, double t1, int per_decade,
                                       double alpha, double beta);

// The default diagnostic exponents min((b-1)/16, (gamma b - 1)/4).
double default_force_exponent(double b, double gamma);

// The degenerate one-mode family: v = theta_star sin(x . eta_star) e^(-|eta|^2 t).
// A shear flow solves the equations with no force at all, so the returned
// residual must vanish to rounding; this anchors the residual machinery.
ForceSample shear_force_check(const TargetSpec& target, const spectral::Grid& g, double t);

// JSON document with the ladder, stage diagnostics, and measured norms.
std::string table_summary_json(const CoefficientTable& table);

}  // namespace nsc::construction

#endif
