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

#include "nsc/spectral/lp.hpp"

#include <cmath>

#include "nsc/geometry/profile.hpp"
#include "nsc/spectral/ops.hpp"

namespace nsc::spectral {

double lowpass_symbol(double r)
{
    if (r <= 2.0 / 3.0) return 1.0;
    if (r >= 3.0 / 4.0) return 0.0;
    return 1.0 - nsc::geometry::smoothstep((r - 2.0 / 3.0) / (3.0 / 4.0 - 2.0 / 3.0));
}

double band_symbol(double r)
{
    return lowpass_symbol(0.5 * r) - lowpass_symbol(r);
}

namespace {

template <class Fn>
void apply_radial(SpectralField& f, Fn&& sym)
{
    const Grid& g = f.grid();
    auto* a = f.data();
    const int n = g.n, nzc = g.nz();
    for (int i = 0; i < n; ++i) {
        const int x1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int x2 = g.wavenumber(j);
            const std::size_t base = g.index(i, j, 0);
            for (int k = 0; k < nzc; ++k) {
                const double r = std::sqrt(double(x1) * x1 + double(x2) * x2
                                           + double(k) * k);
                a[base + k] *= sym(r);
            }
        }
    }
}

} // namespace

void project_band(SpectralField& f, double N)
{
    apply_radial(f, [N](double r) { return band_symbol(r / N); });
}

void project_band(VectorField& u, double N)
{
    for (int i = 0; i < 3; ++i) project_band(u[i], N);
}

void project_shell_annulus(SpectralField& f, double N)
{
    const double lo = N / std::sqrt(2.0), hi = N * std::sqrt(2.0);
    apply_radial(f, [lo, hi](double r) { return (r > lo && r <= hi) ? 1.0 : 0.0; });
}

void project_shell_annulus(VectorField& u, double N)
{
    for (int i = 0; i < 3; ++i) project_shell_annulus(u[i], N);
}

std::vector<double> dyadic_frequencies(const Grid& g)
{
    std::vector<double> out;
    const double corner = std::sqrt(3.0) * (g.n / 2.0);
    for (double N = 1.0; 2.0 * N / 3.0 <= corner; N *= 2.0)
        out.push_back(N);
    return out;
}

namespace {

double band_sup(const VectorField& u, double N, bool oversample)
{
    VectorField b(u.grid());
    for (int i = 0; i < 3; ++i) b[i] = u[i];
    project_band(b, N);
    return oversample ? oversampled_sup(b) : sup_norm(b);
}

double aggregate(std::vector<double>& terms, int q)
{
    double out = 0.0;
    if (q == 1) {
        for (double t : terms) out += t;
    } else if (q == 2) {
        for (double t : terms) out += t * t;
        out = std::sqrt(out);
    } else {
        for (double t : terms) out = std::max(out, t);
    }
    return out;
}

} // namespace

double besov_norm_sup(const VectorField& u, double s, int q, bool oversample)
{
    std::vector<double> terms;
    for (double N : dyadic_frequencies(u.grid()))
        terms.push_back(std::pow(N, s) * band_sup(u, N, oversample));
    // a nonzero mean sits below every band; count it at unit weight
    double m2 = 0.0;
    for (int i = 0; i < 3; ++i) m2 += std::norm(u[i].mean());
    if (m2 > 0.0) terms.push_back(std::sqrt(m2));
    return aggregate(terms, q);
}

double besov_norm_l2(const VectorField& u, double s, int q)
{
    std::vector<double> terms;
    for (double N : dyadic_frequencies(u.grid())) {
        VectorField b(u.grid());
        for (int i = 0; i < 3; ++i) b[i] = u[i];
        project_band(b, N);
        terms.push_back(std::pow(N, s) * std::sqrt(mean_square(b)));
    }
    double m2 = 0.0;
    for (int i = 0; i < 3; ++i) m2 += std::norm(u[i].mean());
    if (m2 > 0.0) terms.push_back(std::sqrt(m2));
    return aggregate(terms, q);
}

std::vector<std::pair<double, double>> band_profile(const VectorField& u, bool oversample)
{
    std::vector<std::pair<double, double>> out;
    for (double N : dyadic_frequencies(u.grid()))
        out.emplace_back(N, band_sup(u, N, oversample));
    return out;
}

} // namespace nsc::spectral
