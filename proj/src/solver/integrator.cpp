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

#include "nsc/solver/integrator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nsc/spectral/ops.hpp"

namespace nsc::solver {

using spectral::Grid;
using spectral::VectorField;

namespace {

// Multiply every mode by the viscous factor e^{-|xi|^2 h}.
void viscous_factor(VectorField& u, double h)
{
    const Grid& g = u.grid();
    const int n = g.n, nzc = g.nz();
    for (int c = 0; c < 3; ++c) {
        auto* a = u[c].data();
        for (int i = 0; i < n; ++i) {
            const double x1 = g.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const double x2 = g.wavenumber(j);
                const std::size_t base = g.index(i, j, 0);
                const double r = x1 * x1 + x2 * x2;
                for (int k = 0; k < nzc; ++k)
                    a[base + k] *= std::exp(-(r + double(k) * k) * h);
            }
        }
    }
}

// K holds +P div(u x u); the scheme consumes -K, so every coefficient on a
// stage value below carries a flipped sign.
VectorField transport(const SolverState& s, const VectorField& u)
{
    if (!s.policy.advect) {
        VectorField z(u.grid());
        z.zero();
        return z;
    }
    return spectral::convective_term(u, true);
}

}  // namespace

SolverState make_state(VectorField u0, const StepPolicy& policy, double t0)
{
    SolverState s;
    s.t = t0;
    s.u = std::move(u0);
    s.policy = policy;
    spectral::leray_project(s.u);
    spectral::dealias(s.u);
    s.initial_sup = spectral::sup_norm(s.u);
    return s;
}

void step(SolverState& s, double dt)
{
    const double h = dt;
    VectorField au = s.u;
    viscous_factor(au, h / 2);
    VectorField acc = au;
    viscous_factor(acc, h / 2);  // acc = a^2 u

    VectorField k = transport(s, s.u);  // k1
    viscous_factor(k, h / 2);
    VectorField stage = au;
    for (int c = 0; c < 3; ++c) stage[c].accumulate(k[c], -h / 2);  // a(u + h/2 k1)
    viscous_factor(k, h / 2);
    for (int c = 0; c < 3; ++c) acc[c].accumulate(k[c], -h / 6);  // a^2 k1

    k = VectorField();
    k = transport(s, stage);  // k2
    stage = au;
    for (int c = 0; c < 3; ++c) stage[c].accumulate(k[c], -h / 2);  // a u + h/2 k2
    viscous_factor(k, h / 2);
    for (int c = 0; c < 3; ++c) acc[c].accumulate(k[c], -h / 3);  // a k2

    k = VectorField();
    k = transport(s, stage);  // k3
    stage = au;
    for (int c = 0; c < 3; ++c) stage[c].accumulate(k[c], -h);
    viscous_factor(stage, h / 2);  // a(a u + h k3)
    viscous_factor(k, h / 2);
    for (int c = 0; c < 3; ++c) acc[c].accumulate(k[c], -h / 3);  // a k3

    k = VectorField();
    k = transport(s, stage);  // k4
    for (int c = 0; c < 3; ++c) acc[c].accumulate(k[c], -h / 6);
    k = VectorField();
    stage = VectorField();
    au = VectorField();

    s.u = std::move(acc);
    spectral::leray_project(s.u);
    spectral::dealias(s.u);
    s.t += dt;
    ++s.steps;
}

double admissible_dt(const Grid& g, const StepPolicy& policy, double sup)
{
    const double dx = 2.0 * std::numbers::pi / g.n;
    if (!(sup > 0.0)) return policy.max_dt;
    return std::min(policy.max_dt, policy.cfl * dx / sup);
}

void advance_to(SolverState& s, double target)
{
    while (s.t < target) {
        const double sup = spectral::sup_norm(s.u);
        if (!std::isfinite(sup) || sup > s.policy.blowup_factor * s.initial_sup) {
            std::ostringstream msg;
            msg << "blow-up detected at t = " << s.t << ": sup = " << sup
                << " against initial " << s.initial_sup;
            throw BlowUpError(msg.str(), s.t);
        }
        const double bound = admissible_dt(s.u.grid(), s.policy, sup);
        double dt = std::min(s.policy.max_dt, target - s.t);
        int halvings = 0;
        while (dt > bound) {
            dt *= 0.5;
            ++s.rejects;
            if (++halvings > s.policy.max_halvings)
                throw BlowUpError("step size collapsed under the advective bound", s.t);
        }
        const bool last = (s.t + dt >= target - 1e-15 * std::max(1.0, target));
        step(s, dt);
        if (last) s.t = target;
    }
}

} // namespace nsc::solver
