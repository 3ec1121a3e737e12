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

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsc::construction {

// Raised when a requested experiment violates one of the admissibility
// inequalities.  The message always names the violated inequality.
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configuration error specifically caused by the grid being too coarse for
// the requested frequency ladder.
class ResolutionError : public ConfigurationError {
public:
    using ConfigurationError::ConfigurationError;
};

// Raised by runtime diagnostics when a numerical precondition fails, for
// example when a quadratic product would wrap around the resolved band.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The pair of vectors the cascade is asked to reproduce at late time: an
// amplitude direction and an integer frequency, which must be orthogonal.
struct TargetSpec {
    std::array<double, 3> theta_star{32.0, 0.0, 0.0};
    std::array<long, 3> eta_star{0, 0, 2};
    double error_tolerance = 1e-2;  // requested closeness of the final shear
    int n_max = 1;                  // derivative count carried in error reports

    double theta_norm() const;
    double eta_norm() const;
    double eta_norm_sq() const;     // exact integer sum of squares
    double amplitude_ratio() const; // |theta_star| / |eta_star|

    // Throws ConfigurationError naming the violated inequality.
    void validate() const;
};

// Geometric ladders shared by every stage of the construction.  N_k carries
// the oscillation frequency of stage k, M_k the spatial localization of its
// tube envelope, ell_k the smoothing length used between stages, and C_k the
// peak amplitude the stage reaches.
struct ScaleTable {
    TargetSpec target;
    double b = 1.5;
    double gamma = 0.85;
    double A = 16.0;
    double eps0 = 0.5;
    int k_star = 2;
    int n = 256;  // grid size the ladder was validated against

    std::vector<long> N;      // k = 0 .. k_star
    std::vector<long> M;      // k = 0 .. k_star, entry 0 unused
    std::vector<double> C;    // k = 0 .. k_star
    std::vector<double> ell;  // k = 0 .. k_star, nonzero for 1 <= k <= k_star-1

    // Largest relative defect of C_{k+1}^2 = N_k^{-1} N_{k+1}^2 C_k over the
    // ladder.  The closed form used to fill C makes this a rounding check.
    double recursion_defect() const;
};

// Smallest k >= 1 such that the residual amplitude mismatch
// ratio^(2^-k) drops below 101/100.  Requires ratio >= 1.
int choose_kstar(double amplitude_ratio);

// Builds and validates the ladder.  Passing k_star <= 0 requests the
// automatic choice from choose_kstar.  Throws ConfigurationError (or its
// ResolutionError refinement) with the violated inequality named.
ScaleTable build_scales(const TargetSpec& target, double b, double gamma,
                        double A, int k_star, double eps0, int n);

}  // namespace nsc::construction
