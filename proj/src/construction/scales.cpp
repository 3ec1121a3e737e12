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

#include "nsc/construction/scales.hpp"

#include <cmath>
#include <sstream>

namespace nsc::construction {

namespace {

// Ceiling with a guard against arguments that are integers up to rounding
// noise, e.g. 2 * 16^(5/4) evaluating to 63.999999999999993.
long ceil_snap(double y)
{
    const double r = std::round(y);
    if (std::abs(y - r) < 1e-7 * std::max(1.0, std::abs(y)))
        return static_cast<long>(r);
    return static_cast<long>(std::ceil(y));
}

[[noreturn]] void reject(const std::string& what)
{
    throw ConfigurationError("configuration rejected: " + what);
}

}  // namespace

double TargetSpec::theta_norm() const
{
    return std::sqrt(theta_star[0] * theta_star[0] + theta_star[1] * theta_star[1] +
                     theta_star[2] * theta_star[2]);
}

double TargetSpec::eta_norm_sq() const
{
    return static_cast<double>(eta_star[0] * eta_star[0] + eta_star[1] * eta_star[1] +
                               eta_star[2] * eta_star[2]);
}

double TargetSpec::eta_norm() const
{
    return std::sqrt(eta_norm_sq());
}

double TargetSpec::amplitude_ratio() const
{
    return theta_norm() / eta_norm();
}

void TargetSpec::validate() const
{
    if (theta_norm() == 0.0)
        reject("target amplitude must satisfy |theta_star| > 0");
    if (eta_norm_sq() == 0.0)
        reject("target frequency must satisfy |eta_star| > 0");
    double dot = 0.0;
    for (int i = 0; i < 3; ++i)
        dot += theta_star[i] * static_cast<double>(eta_star[i]);
    if (dot != 0.0)
        reject("target vectors must satisfy theta_star . eta_star = 0");
    if (!(error_tolerance > 0.0))
        reject("error tolerance must satisfy eps_target > 0");
    if (n_max < 0)
        reject("derivative count must satisfy n_max >= 0");
}

double ScaleTable::recursion_defect() const
{
    double worst = 0.0;
    for (int k = 0; k + 1 <= k_star; ++k) {
        const double lhs = C[k + 1] * C[k + 1];
        const double rhs = static_cast<double>(N[k + 1]) * static_cast<double>(N[k + 1]) *
                           C[k] / static_cast<double>(N[k]);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    return worst;
}

int choose_kstar(double amplitude_ratio)
{
    if (!(amplitude_ratio >= 1.0))
        reject("automatic stage count requires |theta_star|/|eta_star| >= 1");
    int k = 1;
    while (std::pow(amplitude_ratio, std::pow(2.0, -k)) > 1.01) {
        ++k;
        if (k > 64)
            reject("automatic stage count failed to converge (amplitude ratio too large)");
    }
    return k;
}

ScaleTable build_scales(const TargetSpec& target, double b, double gamma,
                        double A, int k_star, double eps0, int n)
{
    target.validate();
    if (!(b > 1.0 && b < 2.0))
        reject("exponent must satisfy 1 < b < 2");
    if (!(gamma > (b + 1.0) / (2.0 * b)))
        reject("localization exponent must satisfy gamma > (b+1)/(2b)");
    if (!(gamma < (5.0 - b) / 4.0))
        reject("localization exponent must satisfy gamma < (5-b)/4");
    if (!(A > 1.0))
        reject("growth base must satisfy A > 1");
    if (!(eps0 > 0.0 && eps0 < 1.0))
        reject("profile margin must satisfy 0 < epsilon0 < 1");
    if (n < 4 || n % 2 != 0)
        reject("grid size must satisfy n >= 4 and n even");

    ScaleTable table;
    table.target = target;
    table.b = b;
    table.gamma = gamma;
    table.A = A;
    table.eps0 = eps0;
    table.n = n;
    table.k_star = (k_star <= 0) ? choose_kstar(target.amplitude_ratio()) : k_star;
    if (table.k_star < 1)
        reject("stage count must satisfy k_star >= 1");

    const double eta = target.eta_norm();
    const double ratio = target.amplitude_ratio();
    const int ks = table.k_star;
    table.N.resize(ks + 1);
    table.M.assign(ks + 1, 0);
    table.C.resize(ks + 1);
    table.ell.assign(ks + 1, 0.0);

    for (int k = 0; k <= ks; ++k) {
        const double yn = eta * std::pow(A, std::pow(b, k) - 1.0);
        if (yn > 4.5e18) {
            std::ostringstream msg;
            msg << "grid resolution violates n >= 4 N_{k_star}: N_" << k
                << " ~ " << yn << " exceeds the representable range (k_star = " << ks
                << ", n = " << n << ")";
            throw ResolutionError(msg.str());
        }
        table.N[k] = ceil_snap(yn);
        if (k >= 1) {
            const double ym = eta * std::pow(A, gamma * std::pow(b, k) - 1.0);
            table.M[k] = ceil_snap(ym);
            if (!(table.M[k] < table.N[k])) {
                std::ostringstream msg;
                msg << "configuration rejected: ladder must satisfy M_k < N_k (M_" << k
                    << " = " << table.M[k] << ", N_" << k << " = " << table.N[k] << ")";
                throw ConfigurationError(msg.str());
            }
        }
        table.C[k] = static_cast<double>(table.N[k]) * std::pow(ratio, std::pow(2.0, -k));
    }
    for (int k = 1; k <= ks - 1; ++k)
        table.ell[k] = std::pow(static_cast<double>(table.N[k]), -0.75) *
                       std::pow(static_cast<double>(table.N[k + 1]), -0.25);

    if (static_cast<long>(n) < 4 * table.N[ks]) {
        std::ostringstream msg;
        msg << "grid resolution violates n >= 4 N_{k_star}: n = " << n
            << ", N_" << ks << " = " << table.N[ks] << " (k_star = " << ks << ")";
        throw ResolutionError(msg.str());
    }
    return table;
}

}  // namespace nsc::construction
