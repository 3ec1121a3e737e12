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

#ifndef NSC_GEOMETRY_MIKADO_HPP
#define NSC_GEOMETRY_MIKADO_HPP

#include <array>
#include <complex>
#include "nsc/geometry/nash.hpp"

namespace nsc::geometry {

// Anchor points for the six periodized lines {x_j + t theta_j} on the
// 2 pi torus.  Because 5 theta_j is integral, each line closes after one
// 10 pi period and traces five parallel strands through the fundamental
// cell, spaced 2 pi / 5 apart in the cross-section.
struct MikadoLines {
    NashFrame frame;
    std::array<Vec3Q, 6> anchor;

    // Minimal distance between the periodized lines j and l (0-based),
    // computed as min over integer shifts m of |(x_j - x_l + 2 pi m) . n|
    // with n the unit normal to both directions.  The difference vector is
    // first reduced to [-pi, pi)^3; `range` bounds the shift search
    // (entries of m run through [-range, range]).
    double line_distance(int j, int l, int range = 2) const;

    // All 15 unordered pair distances in the order
    // (0,1),(0,2),...,(0,5),(1,2),...,(4,5).
    std::array<double, 15> distance_table(int range = 2) const;
};

MikadoLines make_mikado_lines();

// Closed forms for the 15 distances: value = |P + Q pi| / (100 sqrt(s)).
struct DistanceClosedForm {
    long long P;
    long long Q;
    long long s;
    double value() const;
};

// Same pair order as distance_table.
const std::array<DistanceClosedForm, 15>& distance_closed_forms();

// The smallest pairwise distance, 8(49 - 15 pi)/(5 sqrt(481)), and the
// separation threshold 2.01/15 it must clear (twice the tube radius plus
// a safety margin, in units where delta_0 = 1/15).
double min_line_distance_closed_form();
double separation_threshold();

} // namespace nsc::geometry

#endif
