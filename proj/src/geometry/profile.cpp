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

#include "nsc/geometry/profile.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace nsc::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

// 32-point Gauss-Legendre nodes/weights on [-1, 1], generated once by
// Newton iteration on the Legendre recurrence.
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int npts)
    {
        x.resize(npts);
        w.resize(npts);
        for (int i = 0; i < npts; ++i) {
            double t = std::cos(kPi * (i + 0.75) / (npts + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int k = 0; k < npts; ++k) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
                }
                pp = npts * (t * p0 - p1) / (t * t - 1.0);
                const double dt = p0 / pp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
        }
    }
};

const GaussRule& rule32()
{
    static const GaussRule r(32);
    return r;
}

// Composite Gauss on [a, b] split into `pieces` equal panels.
template <class F>
double integrate(F&& f, double a, double b, int pieces)
{
    const auto& g = rule32();
    double total = 0.0;
    const double h = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h, half = 0.5 * h;
        double acc = 0.0;
        for (size_t i = 0; i < g.x.size(); ++i)
            acc += g.w[i] * f(mid + half * g.x[i]);
        total += acc * half;
    }
    return total;
}

} // namespace

double smoothstep(double u)
{
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

double TubeProfile::chi(double r) const
{
    const double r0 = plateau_radius();
    if (r <= r0) return 1.0;
    if (r >= delta0) return 0.0;
    return 1.0 - smoothstep((r - r0) / (s * delta0));
}

double TubeProfile::chi_sq_moment() const
{
    const double r0 = plateau_radius();
    const double transition = integrate(
        [this](double r) { const double c = chi(r); return c * c * r; }, r0, delta0, 8);
    return 0.5 * r0 * r0 + transition;
}

double TubeProfile::hankel(double kappa) const
{
    const double r0 = plateau_radius();
    double plateau;
    if (kappa == 0.0) {
        plateau = 0.5 * r0 * r0;
    } else {
        // int_0^r0 J0(k r) r dr = r0 J1(k r0) / k
        plateau = r0 * std::cyl_bessel_j(1, kappa * r0) / kappa;
    }
    const double transition = integrate(
        [this, kappa](double r) { return chi(r) * std::cyl_bessel_j(0, kappa * r) * r; },
        r0, delta0, 8);
    return 2.0 * kPi * (plateau + transition);
}

TubeProfile make_tube_profile(double delta0, double eps0)
{
    TubeProfile p;
    p.delta0 = delta0;
    p.eps0 = eps0;
    const double target = delta0 * delta0 * (0.5 - eps0 / (20.0 * kPi * kPi));

    // chi_sq_moment decreases as s grows; bisect on the deficit.
    double lo = 1e-9, hi = 0.999;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        p.s = mid;
        if (p.chi_sq_moment() > target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-16 * hi) break;
    }
    p.s = 0.5 * (lo + hi);
    return p;
}

std::complex<double> tube_fourier_coefficient(const TubeProfile& p,
                                              const MikadoLines& lines,
                                              int j, const Vec3I& zeta)
{
    const double norm = std::sqrt(double(zeta[0]) * zeta[0] + double(zeta[1]) * zeta[1]
                                  + double(zeta[2]) * zeta[2]);
    double phase = 0.0;
    for (int i = 0; i < 3; ++i)
        phase -= zeta[i] * lines.anchor[j][i].to_double();
    const double amp = 5.0 / (4.0 * kPi * kPi) * p.hankel(norm);
    return std::polar(amp, phase);
}

} // namespace nsc::geometry
