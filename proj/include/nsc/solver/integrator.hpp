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

#ifndef NSC_SOLVER_INTEGRATOR_HPP
#define NSC_SOLVER_INTEGRATOR_HPP

#include <stdexcept>

#include "nsc/spectral/field.hpp"

namespace nsc::solver {

// Raised when the sup norm grows past the safety factor or coefficients go
// non-finite.  The state that produced the detection is left untouched in
// the caller's SolverState, so partial results can still be reported.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
    double time() const { return t_; }
private:
    double t_;
};

struct StepPolicy {
    double cfl = 0.75;         // advective bound dt <= cfl * dx / sup|u|
    double max_dt = 0.02;
    double blowup_factor = 1e6;
    int max_halvings = 60;     // proposal rejections per step before giving up
    bool advect = true;        // false integrates the pure heat flow
};

struct SolverState {
    double t = 0.0;
    spectral::VectorField u;
    StepPolicy policy;
    double initial_sup = 0.0;  // reference level for the blow-up sentinel
    long steps = 0;
    long rejects = 0;
};

SolverState make_state(spectral::VectorField u0, const StepPolicy& policy,
                       double t0 = 0.0);

// One integrating-factor Runge-Kutta step of classical order four.  The
// viscous semigroup is applied exactly through e^{-|xi|^2 h} factors; the
// transport term is evaluated pseudospectrally with the two-thirds mask and
// the result is re-projected divergence-free.  The caller is responsible
// for choosing dt within the advective stability bound.
void step(SolverState& s, double dt);

// Largest admissible step at the given sup norm under the policy.
double admissible_dt(const spectral::Grid& g, const StepPolicy& policy, double sup);

// Advance to the target time with the adaptive policy: each proposal is
// clipped to land exactly on the target, halved while it violates the
// advective bound, and preceded by the blow-up sentinel check.
void advance_to(SolverState& s, double target);

} // namespace nsc::solver

#endif
