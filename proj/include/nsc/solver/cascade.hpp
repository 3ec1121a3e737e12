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

#ifndef NSC_SOLVER_CASCADE_HPP
#define NSC_SOLVER_CASCADE_HPP

#include <string>
#include <utility>
#include <vector>

#include "nsc/construction/principal.hpp"
#include "nsc/solver/integrator.hpp"

namespace nsc::solver {

// One diagnostic record.  Shell amplitudes are sup norms of the sharp
// annulus (N_k / sqrt 2, sqrt 2 N_k] projections, one per ladder stage.
// grad_E[m] = sup |d^m (u - shear)| and w_weighted[m] = t^{(1+m)/2} sup
// |d^m (u - v)| for m = 0..n_max.  w_ratio compares |w| against the
// largest single flow component at the same time.
struct CascadeSample {
    double t = 0.0;
    std::vector<double> shell_amp;
    double besov_inf = 0.0;  // sup_N N^{-1} sup|P_N u|
    double besov_one = 0.0;  // sum_N N^{-1} sup|P_N u|
    double energy = 0.0;
    double enstrophy = 0.0;
    std::vector<double> grad_E;
    std::vector<double> w_weighted;
    double w_ratio = 0.0;
};

struct CascadeSeries {
    std::vector<double> shell_centers;  // the ladder frequencies N_k
    double horizon = 0.0;
    std::vector<CascadeSample> samples;
    std::vector<double> activation_time;  // argmax_t of each shell amplitude
    std::vector<double> peak_amp;
    long steps = 0;
    long rejects = 0;
    double runtime_seconds = 0.0;
    bool blew_up = false;
    double blowup_time = 0.0;
    std::vector<std::pair<double, std::string>> snapshots;  // (time, path)
};

struct RunOptions {
    int per_decade = 16;         // geometric sampling density
    double horizon_factor = 8.0; // T_end = factor / N_0^2
    StepPolicy policy;
    int n_max = 1;
    std::vector<double> snapshot_times;
    std::string snapshot_dir;
};

// Integrate the unforced equations from the constructed initial data and
// collect the staged-cascade diagnostics.  The table is taken by value:
// the driver caches the flow components and releases the potentials to
// keep the resident set within a desktop budget.  Samples land exactly on
// a geometric grid plus forced times at every N_k^{-2} and at
// {1/2, 1, 2} |eta|^{-2}.  A blow-up aborts the integration but the series
// collected so far is still returned, with the flag set.
CascadeSeries run_cascade(construction::CoefficientTable table, const RunOptions& opt);

// Error field and perturbation norms at one instant: grad_E compares the
// velocity against the decaying target shear, w_weighted against the full
// constructed flow v(t).
struct ErrorReport {
    std::vector<double> grad_E;
    std::vector<double> w_weighted;
    double w_ratio = 0.0;
};
ErrorReport error_and_perturbation(const construction::CoefficientTable& table,
                                   const spectral::VectorField& u, double t,
                                   int n_max);

std::string series_csv(const CascadeSeries& s);
std::string series_summary_json(const CascadeSeries& s);

// Inverse of series_summary_json.  The JSON document carries every sample
// field, so a series re-rendered from disk reproduces series_csv byte for
// byte.  Wall-clock runtime is not archived and reads back as zero.
// Throws std::runtime_error on malformed or version-mismatched input.
CascadeSeries series_from_json(const std::string& text);

} // namespace nsc::solver

#endif
