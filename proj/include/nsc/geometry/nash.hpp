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

#ifndef NSC_GEOMETRY_NASH_HPP
#define NSC_GEOMETRY_NASH_HPP

#include <array>
#include "nsc/geometry/rational.hpp"

namespace nsc::geometry {

using Vec3Q = std::array<Rat, 3>;
using Vec3I = std::array<int, 3>;

// Symmetric 3x3 tensors are stored as 6-vectors in the fixed order
//   (11, 22, 33, 12, 13, 23).
inline constexpr int kSymPairs[6][2] = {{0,0},{1,1},{2,2},{0,1},{0,2},{1,2}};

// Six unit directions theta_j with 5*theta_j integral, each paired with a
// coordinate axis eta_j orthogonal to it (the zero component of theta_j).
// Together they satisfy sum_j theta_j (x) theta_j = 2 Id, which makes the
// family a Nash-type frame: every symmetric M near the identity decomposes
// as M = sum_j Gamma_j^2(M) theta_j (x) theta_j with affine Gamma_j^2.
struct NashFrame {
    static constexpr int count = 6;

    std::array<Vec3Q, 6> theta;          // exact unit tangents (fifths)
    std::array<Vec3I, 6> eta;            // carrier axis, unit integer vector
    std::array<Vec3I, 6> complement;     // w_j = 5 theta_j x eta_j, |w_j| = 5

    // Gamma_j^2(Id + eps) = 1/2 + sum_p b[j][p] * eps[p], eps in sym-6 order.
    // Derived at construction by exactly inverting the frame map; no entry
    // is hard-coded.
    std::array<std::array<Rat, 6>, 6> b;

    // sum over j of |b[j][p]| summed over p; equals 25/8 for every j.
    Rat abs_row_sum(int j) const;

    // Gamma_j^2 evaluated at Id + eps (eps entries in sym-6 order).
    double gamma_squared(int j, const std::array<double, 6>& eps) const;

    // Reconstruct sum_j Gamma_j^2(Id+eps) theta_j (x) theta_j, sym-6 order.
    std::array<double, 6> reconstruct(const std::array<double, 6>& eps) const;

    // Exact sum of outer products theta_j (x) theta_j.
    std::array<Rat, 6> theta_outer_sum() const;
};

// Builds the frame and solves the 6x6 rational system for b.
NashFrame make_nash_frame();

// Largest-magnitude entry of eta_j (.) theta_j where a (.) b is the
// symmetrized outer product; equals 2/5 for every j in this frame.
Rat eta_theta_sym_max(const NashFrame& f, int j);

} // namespace nsc::geometry

#endif
