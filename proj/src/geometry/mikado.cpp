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

#include "nsc/geometry/mikado.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace nsc::geometry {

namespace {
constexpr double kPi = std::numbers::pi;
}

MikadoLines make_mikado_lines()
{
    MikadoLines m;
    m.frame = make_nash_frame();
    m.anchor = {{
        {Rat(21,100), Rat(26,25),  Rat(47,50)},
        {Rat(37,50),  Rat(467,100),Rat(357,100)},
        {Rat(7,5),    Rat(126,25), Rat(91,100)},
        {Rat(393,100),Rat(104,25), Rat(341,100)},
        {Rat(3,4),    Rat(617,100),Rat(153,25)},
        {Rat(261,100),Rat(307,50), Rat(339,100)},
    }};
    return m;
}

double MikadoLines::line_distance(int j, int l, int range) const
{
    // Unit normal to both lines: cross product of the directions.
    const auto& tj = frame.theta[j];
    const auto& tl = frame.theta[l];
    double cj[3], cl[3], dx[3];
    for (int i = 0; i < 3; ++i) {
        cj[i] = tj[i].to_double();
        cl[i] = tl[i].to_double();
        dx[i] = (anchor[j][i] - anchor[l][i]).to_double();
    }
    double n[3] = {cj[1]*cl[2] - cj[2]*cl[1],
                   cj[2]*cl[0] - cj[0]*cl[2],
                   cj[0]*cl[1] - cj[1]*cl[0]};
    const double nn = std::sqrt(n[0]*n[0] + n[1]*n[1] + n[2]*n[2]);
    for (double& c : n) c /= nn;

    // reduce the anchor difference to [-pi, pi)^3
    for (double& c : dx) c -= 2.0 * kPi * std::round(c / (2.0 * kPi));

    double best = std::numeric_limits<double>::infinity();
    for (int m0 = -range; m0 <= range; ++m0)
        for (int m1 = -range; m1 <= range; ++m1)
            for (int m2 = -range; m2 <= range; ++m2) {
                const double v = (dx[0] + 2.0*kPi*m0) * n[0]
                               + (dx[1] + 2.0*kPi*m1) * n[1]
                               + (dx[2] + 2.0*kPi*m2) * n[2];
                best = std::min(best, std::abs(v));
            }
    return best;
}

std::array<double, 15> MikadoLines::distance_table(int range) const
{
    std::array<double, 15> out{};
    int p = 0;
    for (int j = 0; j < 6; ++j)
        for (int l = j + 1; l < 6; ++l)
            out[p++] = line_distance(j, l, range);
    return out;
}

double DistanceClosedForm::value() const
{
    return std::abs(static_cast<double>(P) + static_cast<double>(Q) * kPi)
         / (100.0 * std::sqrt(static_cast<double>(s)));
}

const std::array<DistanceClosedForm, 15>& distance_closed_forms()
{
    // Derived by exact minimization over lattice shifts; each distance is
    // |P + Q pi| / (100 sqrt(s)).  Pair order matches distance_table.
    static const std::array<DistanceClosedForm, 15> table = {{
        {-8487,  2800, 481},   // (1,2)
        { 1569,  -400,  34},   // (1,3)
        {  312,     0,   1},   // (1,4)
        {-12257, 4000, 481},   // (1,5)
        {-1780,   600,  41},   // (1,6)
        {   66,     0,   1},   // (2,3)
        {-1024,   400,  41},   // (2,4)
        { 4079, -1200, 481},   // (2,5)
        {-1095,   400,  34},   // (2,6)
        { 7840, -2400, 481},   // (3,4)
        { 1485,  -400,  41},   // (3,5)
        { 1559,  -400, 481},   // (3,6)
        {-1062,   400,  34},   // (4,5)
        { 1566,  -400, 481},   // (4,6)
        {  273,     0,   1},   // (5,6)
    }};
    return table;
}

double min_line_distance_closed_form()
{
    return 8.0 * (49.0 - 15.0 * kPi) / (5.0 * std::sqrt(481.0));
}

double separation_threshold()
{
    return (201.0 / 100.0) / 15.0;
}

} // namespace nsc::geometry
