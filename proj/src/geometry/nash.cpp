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

#include "nsc/geometry/nash.hpp"

#include <stdexcept>

namespace nsc::geometry {

namespace {

// Gaussian elimination over the rationals; A is 6x6, rhs one column.
std::array<Rat, 6> solve6(std::array<std::array<Rat, 6>, 6> A, std::array<Rat, 6> rhs)
{
    for (int col = 0; col < 6; ++col) {
        int piv = -1;
        for (int r = col; r < 6; ++r) {
            if (A[r][col].num != 0) { piv = r; break; }
        }
        if (piv < 0) throw std::runtime_error("nash frame map is singular");
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        const Rat inv = Rat(1) / A[col][col];
        for (int c = col; c < 6; ++c) A[col][c] = A[col][c] * inv;
        rhs[col] = rhs[col] * inv;
        for (int r = 0; r < 6; ++r) {
            if (r == col || A[r][col].num == 0) continue;
            const Rat f = A[r][col];
            for (int c = col; c < 6; ++c) A[r][c] = A[r][c] - f * A[col][c];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    return rhs;
}

std::array<Rat, 6> sym_outer(const Vec3Q& v)
{
    std::array<Rat, 6> out;
    for (int p = 0; p < 6; ++p)
        out[p] = v[kSymPairs[p][0]] * v[kSymPairs[p][1]];
    return out;
}

} // namespace

NashFrame make_nash_frame()
{
    NashFrame f;
    const Rat z(0), a(3, 5), bq(4, 5);
    f.theta = {{{bq, z, a}, {z, -a, bq}, {z, bq, a}, {a, z, -bq}, {a, bq, z}, {-bq, a, z}}};
    f.eta = {{{0,1,0}, {1,0,0}, {1,0,0}, {0,1,0}, {0,0,1}, {0,0,1}}};

    for (int j = 0; j < 6; ++j) {
        // w_j = 5 theta_j x eta_j (integral since 5 theta_j is)
        const auto& t = f.theta[j];
        const auto& e = f.eta[j];
        const Rat w0 = (t[1] * Rat(e[2]) - t[2] * Rat(e[1])) * Rat(5);
        const Rat w1 = (t[2] * Rat(e[0]) - t[0] * Rat(e[2])) * Rat(5);
        const Rat w2 = (t[0] * Rat(e[1]) - t[1] * Rat(e[0])) * Rat(5);
        if (w0.den != 1 || w1.den != 1 || w2.den != 1)
            throw std::runtime_error("nash frame: non-integral complement");
        f.complement[j] = {static_cast<int>(w0.num), static_cast<int>(w1.num),
                           static_cast<int>(w2.num)};
    }

    // Frame map G: column j holds theta_j (x) theta_j in sym-6 coordinates.
    std::array<std::array<Rat, 6>, 6> G;
    for (int p = 0; p < 6; ++p)
        for (int j = 0; j < 6; ++j)
            G[p][j] = sym_outer(f.theta[j])[p];

    // For each symmetric basis element E_p (E_kk = ek (x) ek, and
    // E_kl = ek (x) el + el (x) ek for k < l) solve G c = vec(E_p);
    // then b[j][p] = c_j, because expanding M = Id + eps in that basis
    // gives Gamma_j^2 = 1/2 + sum_p c_j(p) eps_p with the 1/2 coming from
    // Id = (1/2) sum_j theta_j (x) theta_j.
    for (int p = 0; p < 6; ++p) {
        std::array<Rat, 6> rhs{};
        rhs[p] = Rat(1);
        const auto c = solve6(G, rhs);
        for (int j = 0; j < 6; ++j) f.b[j][p] = c[j];
    }
    return f;
}

Rat NashFrame::abs_row_sum(int j) const
{
    Rat s(0);
    for (int p = 0; p < 6; ++p) s = s + b[j][p].abs();
    return s;
}

double NashFrame::gamma_squared(int j, const std::array<double, 6>& eps) const
{
    double g = 0.5;
    for (int p = 0; p < 6; ++p) g += b[j][p].to_double() * eps[p];
    return g;
}

std::array<double, 6> NashFrame::reconstruct(const std::array<double, 6>& eps) const
{
    std::array<double, 6> out{};
    for (int j = 0; j < 6; ++j) {
        const double g = gamma_squared(j, eps);
        const auto tt = sym_outer(theta[j]);
        for (int p = 0; p < 6; ++p) out[p] += g * tt[p].to_double();
    }
    return out;
}

std::array<Rat, 6> NashFrame::theta_outer_sum() const
{
    std::array<Rat, 6> s{};
    for (int p = 0; p < 6; ++p) s[p] = Rat(0);
    for (int j = 0; j < 6; ++j) {
        const auto tt = sym_outer(theta[j]);
        for (int p = 0; p < 6; ++p) s[p] = s[p] + tt[p];
    }
    return s;
}

Rat eta_theta_sym_max(const NashFrame& f, int j)
{
    // a (.) b = (1/2)(a b^T + b a^T); return the largest |entry|.
    Rat best(0);
    for (int p = 0; p < 6; ++p) {
        const int k = kSymPairs[p][0], l = kSymPairs[p][1];
        const Rat e = (Rat(f.eta[j][k]) * f.theta[j][l] + Rat(f.eta[j][l]) * f.theta[j][k]) * Rat(1, 2);
        if (best < e.abs()) best = e.abs();
    }
    return best;
}

} // namespace nsc::geometry
