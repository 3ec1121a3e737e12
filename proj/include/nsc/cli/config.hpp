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

#ifndef NSC_CLI_CONFIG_HPP
#define NSC_CLI_CONFIG_HPP

#include <array>
#include <string>
#include <vector>

#include "nsc/construction/scales.hpp"

namespace nsc::cli {

// One experiment, fully described by a flat key = value file.  The file
// format is deliberately dumb so runs stay archivable and diffable: `#`
// starts a comment, keys may appear once, and the `schema` key must come
// out to the version this binary understands.
//
// Keys (defaults in parentheses):
//   schema          = 1                      required
//   theta_star      = <3 reals>              target shear amplitude
//   eta_star        = <3 integers>           target shear frequency
//   b               = <real>       (1.5)     frequency growth exponent
//   gamma           = <real>       (0.85)    localization exponent
//   A               = <real>       (16)      amplitude growth base
//   epsilon0        = <real>       (0.5)     tube profile volume deficit
//   k_star          = <int>|auto   (auto)    stage count
//   n               = <int>        (256)     collocation grid size
//   K               = <real>       (8)       horizon factor, T_end = K/N_0^2
//   cfl             = <real>       (0.75)    advective step fraction
//   max_dt          = <real>       (0.02)    upper bound on the step
//   alpha           = <real>|auto  (auto)    residual envelope exponent
//   beta            = <real>|auto  (auto)    residual envelope exponent
//   output          = <path>       (out)     artifact directory
//   per_decade      = <int>        (16)      sample density in time
//   snapshot_times  = <reals>      (empty)   field dumps at these times
//   n_max           = <int>        (1)       derivative count in reports
struct ExperimentConfig {
    int schema = 1;
    std::array<double, 3> theta_star{32.0, 0.0, 0.0};
    std::array<long, 3> eta_star{0, 0, 2};
    double b = 1.5;
    double gamma = 0.85;
    double A = 16.0;
    double epsilon0 = 0.5;
    int k_star = 0;  // <= 0 requests the automatic stage count
    int n = 256;
    double K = 8.0;
    double cfl = 0.75;
    double max_dt = 0.02;
    // negative means "derive from b and gamma at use time"
    double alpha = -1.0;
    double beta = -1.0;
    std::string output = "out";
    int per_decade = 16;
    std::vector<double> snapshot_times;
    int n_max = 1;

    // Resolved diagnostic exponents: explicit values if set, otherwise
    // min((b-1)/16, (gamma b - 1)/4) for both.
    double alpha_resolved() const;
    double beta_resolved() const;

    construction::TargetSpec target() const;

    // Checks the runner-level preconditions (cadence, step policy,
    // snapshot times); ladder inequalities are enforced by the scale
    // builder itself.  Throws ConfigurationError naming the violated
    // inequality.
    void validate() const;

    // validate() plus the full ladder construction.
    construction::ScaleTable build_scales() const;
};

// Parses a config document.  `origin` names the source in error messages
// (a path, or a tag for in-memory text).  Throws ConfigurationError on
// unknown keys, duplicates, malformed values, or a schema mismatch.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);

// JSON echo of a parsed config, written next to the run artifacts.
std::string config_json(const ExperimentConfig& cfg);

} // namespace nsc::cli

#endif
