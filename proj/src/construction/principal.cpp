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

#include "nsc/construction/principal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "nsc/spectral/lp.hpp"
#include "nsc/spectral/ops.hpp"

namespace nsc::construction {

using geometry::NashFrame;
using geometry::Vec3I;
using spectral::Grid;
using spectral::RealBuffer;
using spectral::SpectralField;
using spectral::SymTensorField;
using spectral::VectorField;

namespace {

template <class F>
void for_each_mode(const Grid& g, F&& f)
{
    const int n = g.n, nzc = g.nz();
    for (int i = 0; i < n; ++i) {
        const int x1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int x2 = g.wavenumber(j);
            const std::size_t base = g.index(i, j, 0);
            for (int k = 0; k < nzc; ++k)
                f(base + k, x1, x2, k);
        }
    }
}

// f(x) = sum_c amp[c] sin(x . K) e_c as a sparse spectral field.
VectorField sine_field(const Grid& g, const std::array<long, 3>& K,
                       const std::array<double, 3>& amp)
{
    VectorField out(g);
    out.zero();
    for (int c = 0; c < 3; ++c)
        out[c].set_mode(static_cast<int>(K[0]), static_cast<int>(K[1]),
                        static_cast<int>(K[2]),
                        std::complex<double>(0.0, -0.5) * amp[c]);
    return out;
}

// Pointwise evaluation kernel for the six coefficient fields of one stage:
// a_j(x) = alpha_j sqrt(1/2 + sum_p b[j][p] eps_p(x)) with eps = -D/(7S).
struct CoeffKernel {
    double bd[6][6];
    double th[6][3];    // theta_j as doubles
    double thth[6][6];  // theta_j (x) theta_j in sym-6 order
    double alpha[6];
    double inv7S = 0.0;

    static CoeffKernel make(const NashFrame& frame, const std::array<double, 6>& B,
                            double n_prev, double S)
    {
        CoeffKernel k;
        k.inv7S = 1.0 / (7.0 * S);
        for (int j = 0; j < 6; ++j) {
            for (int p = 0; p < 6; ++p)
                k.bd[j][p] = frame.b[j][p].to_double();
            for (int c = 0; c < 3; ++c)
                k.th[j][c] = frame.theta[j][c].to_double();
            for (int p = 0; p < 6; ++p)
                k.thth[j][p] = k.th[j][geometry::kSymPairs[p][0]] *
                               k.th[j][geometry::kSymPairs[p][1]];
            k.alpha[j] = std::sqrt(28.0 * n_prev * S / B[j]);
        }
        return k;
    }

    double value(int j, const double* const d[6], std::size_t i) const
    {
        double gs = 0.5;
        for (int p = 0; p < 6; ++p)
            gs -= bd[j][p] * d[p][i] * inv7S;
        return alpha[j] * std::sqrt(std::max(gs, 0.0));
    }
};

// Deformation tensor of the previous potential as real cubes, plus its
// oversampled sup.  This is the quantity every stage normalizes against.
struct StagePrep {
    double S = 0.0;
    std::vector<RealBuffer> d;  // six components in sym-6 order
};

StagePrep prepare_stage(const Grid& g, const VectorField& psi_prev)
{
    StagePrep prep;
    SymTensorField D = spectral::modified_sym_gradient(psi_prev);
    prep.S = spectral::oversampled_sup_maxentry(D);
    if (!(prep.S > 0.0))
        throw NumericalError("degenerate induction: the driving deformation vanishes");
    prep.d.reserve(6);
    for (int p = 0; p < 6; ++p) {
        prep.d.emplace_back(g);
        D[p].to_real(prep.d.back().data());
    }
    return prep;
}

void check_argument_domain(const Grid& g, const StagePrep& prep, int k)
{
    double worst = 0.0;
    std::size_t at = 0;
    const std::size_t m = prep.d[0].size();
    for (int p = 0; p < 6; ++p) {
        const double* dp = prep.d[p].data();
        for (std::size_t i = 0; i < m; ++i) {
            const double a = std::abs(dp[i]);
            if (a > worst) { worst = a; at = i; }
        }
    }
    const double eps = worst / (7.0 * prep.S);
    if (eps > 1.0 / 7.0 + 1e-12) {
        const int n = g.n;
        const std::size_t plane = static_cast<std::size_t>(n) * n;
        std::ostringstream msg;
        msg << "stage " << k << ": matrix argument left the admissible ball, "
            << "worst entry " << eps << " > 1/7 at grid point ("
            << at / plane << ", " << (at / n) % n << ", " << at % n
            << "); increase the growth base A";
        throw NumericalError(msg.str());
    }
}

double max_abs(const std::vector<RealBuffer>& cubes, double scale)
{
    double worst = 0.0;
    for (const auto& c : cubes) {
        const double* p = c.data();
        for (std::size_t i = 0; i < c.size(); ++i)
            worst = std::max(worst, std::abs(p[i]));
    }
    return worst * scale;
}

// Direct (unsmoothed, unscaled) stage assembly sum_j a_j wave_j theta_j in
// spectral form.  Shared by the flow split; the builder keeps its own loop
// because it also accumulates the identity diagnostics.
VectorField assemble_direct(const CoefficientTable& table, int k)
{
    const Grid& g = table.grid;
    const ScaleTable& sc = table.scales;
    const StageDiagnostics& st = table.stages.at(k - 1);
    StagePrep prep = prepare_stage(g, table.psi.at(k - 1));
    const CoeffKernel kern =
        CoeffKernel::make(table.frame, st.B, double(sc.N[k - 1]), prep.S);
    const double* dptr[6];
    for (int p = 0; p < 6; ++p) dptr[p] = prep.d[p].data();

    std::vector<RealBuffer> acc;
    for (int c = 0; c < 3; ++c) { acc.emplace_back(g); acc.back().zero(); }
    RealBuffer wave(g);
    const std::size_t m = wave.size();
    for (int j = 0; j < 6; ++j) {
        SpectralField w = synthesize_wave(g, table.frame, table.lines, table.profile,
                                          j, sc.N[k], sc.M[k]);
        w.to_real(wave.data());
        for (std::size_t i = 0; i < m; ++i) {
            const double a = kern.value(j, dptr, i);
            const double aw = a * wave[i];
            for (int c = 0; c < 3; ++c) acc[c][i] += aw * kern.th[j][c];
        }
    }
    VectorField out(g);
    for (int c = 0; c < 3; ++c) out[c].from_real(acc[c].data());
    return out;
}

}  // namespace

SpectralField synthesize_wave(const Grid& g, const NashFrame& frame,
                              const geometry::MikadoLines& lines,
                              const geometry::TubeProfile& profile,
                              int j, long N, long M, std::size_t* kept)
{
    SpectralField out(g);
    out.zero();
    const Vec3I& eta = frame.eta[j];
    const Vec3I& w = frame.complement[j];
    const long lim = g.dealias_limit();
    const long pmax = (7 * N) / (3 * M) + 1;
    const long qmax = (7 * N) / (15 * M) + 1;
    const auto admissible = [&](const std::array<long, 3>& mvec) {
        const long r2 = mvec[0] * mvec[0] + mvec[1] * mvec[1] + mvec[2] * mvec[2];
        if (16 * r2 < 9 * N * N || 9 * r2 > 16 * N * N) return false;
        return std::abs(mvec[0]) <= lim && std::abs(mvec[1]) <= lim &&
               std::abs(mvec[2]) <= lim;
    };
    std::size_t count = 0;
    for (long p = -pmax; p <= pmax; ++p) {
        for (long q = -qmax; q <= qmax; ++q) {
            std::array<long, 3> zeta{}, plus{}, minus{};
            for (int c = 0; c < 3; ++c) {
                zeta[c] = p * eta[c] + q * w[c];
                plus[c] = M * zeta[c] + N * eta[c];
                minus[c] = M * zeta[c] - N * eta[c];
            }
            if (!admissible(plus) || !admissible(minus)) continue;
            const Vec3I zi{static_cast<int>(zeta[0]), static_cast<int>(zeta[1]),
                           static_cast<int>(zeta[2])};
            const std::complex<double> coef =
                geometry::tube_fourier_coefficient(profile, lines, j, zi);
            // add_mode fills the conjugate cell as well, which is exactly the
            // lower sideband of the mirrored lattice point -zeta; one call per
            // zeta therefore realizes both sidebands exactly once.
            out.add_mode(static_cast<int>(plus[0]), static_cast<int>(plus[1]),
                         static_cast<int>(plus[2]),
                         coef * std::complex<double>(0.0, -0.5));
            ++count;
        }
    }
    if (kept) *kept = count;
    return out;
}

double CoefficientTable::carrier_rate(int k) const
{
    if (k == 0) return scales.target.eta_norm_sq();
    const double nk = static_cast<double>(scales.N.at(k));
    return nk * nk;
}

double CoefficientTable::time_factor(int k, double t) const
{
    const double lam = carrier_rate(k);
    const double decay = std::exp(-lam * t);
    if (k == scales.k_star) return scales.C[k] * decay;
    const double n1 = static_cast<double>(scales.N.at(k + 1));
    return scales.C[k] * (-std::expm1(-2.0 * n1 * n1 * t)) * decay;
}

double CoefficientTable::time_factor_dt(int k, double t) const
{
    const double lam = carrier_rate(k);
    const double decay = std::exp(-lam * t);
    if (k == scales.k_star) return -lam * scales.C[k] * decay;
    const double r = 2.0 * scales.N.at(k + 1) * scales.N.at(k + 1);
    const double act = -std::expm1(-r * t);
    return scales.C[k] * decay * (r * std::exp(-r * t) - lam * act);
}

CoefficientTable build_coefficients(const ScaleTable& scales)
{
    CoefficientTable table;
    table.scales = scales;
    table.grid = Grid(scales.n);
    table.frame = geometry::make_nash_frame();
    table.lines = geometry::make_mikado_lines();
    table.profile = geometry::make_tube_profile(1.0 / 15.0, scales.eps0);

    const Grid& g = table.grid;
    const TargetSpec& tg = scales.target;
    const double eta = tg.eta_norm();
    const double theta = tg.theta_norm();

    // Largest entry of the symmetrized outer product of the two unit target
    // directions; the lower bound every stage sup traces back to.
    {
        double worst = 0.0;
        for (int p = 0; p < 6; ++p) {
            const int a = geometry::kSymPairs[p][0], b = geometry::kSymPairs[p][1];
            const double ea = tg.eta_star[a] / eta, eb = tg.eta_star[b] / eta;
            const double ta = tg.theta_star[a] / theta, tb = tg.theta_star[b] / theta;
            worst = std::max(worst, std::abs(0.5 * (ea * tb + eb * ta)));
        }
        table.c_star = worst;
    }

    const double n0 = static_cast<double>(scales.N[0]);
    table.a0 = -n0 / eta;

    // Stage 0: a single shear mode.  The potential is normalized so that
    // its projected Laplacian carries exactly the target direction.
    {
        const double coef = table.a0 / (n0 * n0);
        std::array<double, 3> amp{};
        for (int c = 0; c < 3; ++c) amp[c] = coef * tg.theta_star[c] / theta;
        table.psi.push_back(sine_field(g, tg.eta_star, amp));
    }

    table.dpsi_sup.assign(scales.k_star + 1, 0.0);
    for (int k = 1; k <= scales.k_star; ++k) {
        StagePrep prep = prepare_stage(g, table.psi.back());
        table.dpsi_sup[k - 1] = prep.S;
        check_argument_domain(g, prep, k);

        StageDiagnostics diag;
        diag.k = k;
        diag.S = prep.S;
        diag.eps_max = max_abs(prep.d, 1.0 / (7.0 * prep.S));

        const double n_prev = static_cast<double>(scales.N[k - 1]);
        const std::size_t m = prep.d[0].size();
        const double* dptr[6];
        for (int p = 0; p < 6; ++p) dptr[p] = prep.d[p].data();

        // First pass: realize the six waves to fix their mean squares.
        std::array<double, 6> B{};
        std::vector<SpectralField> wave_spec;
        wave_spec.reserve(6);
        for (int j = 0; j < 6; ++j) {
            std::size_t cnt = 0;
            wave_spec.push_back(synthesize_wave(g, table.frame, table.lines,
                                                table.profile, j, scales.N[k],
                                                scales.M[k], &cnt));
            diag.modes[j] = cnt;
            B[j] = wave_spec.back().mean_square();
            if (!(B[j] > 0.0))
                throw NumericalError("degenerate wave: a realized tube wave has zero energy");
        }
        diag.B = B;
        const CoeffKernel kern = CoeffKernel::make(table.frame, B, n_prev, prep.S);

        std::vector<RealBuffer> acc;
        for (int c = 0; c < 3; ++c) { acc.emplace_back(g); acc.back().zero(); }
        std::vector<RealBuffer> lhs;
        for (int p = 0; p < 6; ++p) { lhs.emplace_back(g); lhs.back().zero(); }

        diag.a_min = std::numeric_limits<double>::infinity();
        diag.a_max = 0.0;
        {
            RealBuffer wave(g);
            for (int j = 0; j < 6; ++j) {
                wave_spec[j].to_real(wave.data());
                wave_spec[j] = SpectralField();
                const double bj = B[j];
                for (std::size_t i = 0; i < m; ++i) {
                    const double a = kern.value(j, dptr, i);
                    diag.a_min = std::min(diag.a_min, a);
                    diag.a_max = std::max(diag.a_max, a);
                    const double aw = a * wave[i];
                    for (int c = 0; c < 3; ++c) acc[c][i] += aw * kern.th[j][c];
                    const double qv = bj * a * a;
                    for (int p = 0; p < 6; ++p) lhs[p][i] += qv * kern.thth[j][p];
                }
            }
        }
        wave_spec.clear();

        // The stress balance: the weighted squares must flatten the driving
        // deformation into a constant isotropic part.  Extract that constant
        // as the mean of the trace and measure what is left.
        const double four_n = 4.0 * n_prev;
        {
            long double tr = 0.0L;
            for (std::size_t i = 0; i < m; ++i)
                tr += (lhs[0][i] + lhs[1][i] + lhs[2][i] +
                       four_n * (dptr[0][i] + dptr[1][i] + dptr[2][i]));
            diag.p = static_cast<double>(tr / (3.0L * static_cast<long double>(m)));
        }
        {
            double worst = 0.0;
            for (int p = 0; p < 6; ++p) {
                const double shift = (p < 3) ? diag.p : 0.0;
                const double* lp = lhs[p].data();
                const double* dp = dptr[p];
                for (std::size_t i = 0; i < m; ++i)
                    worst = std::max(worst,
                                     std::abs(lp[i] + four_n * dp[i] - shift));
            }
            diag.identity_residual = worst / (four_n * prep.S);
        }
        lhs.clear();
        prep.d.clear();

        VectorField psik(g);
        const double nk = static_cast<double>(scales.N[k]);
        for (int c = 0; c < 3; ++c) {
            psik[c].from_real(acc[c].data());
            psik[c].scale(1.0 / (nk * nk));
        }
        acc.clear();
        if (k >= 1 && k <= scales.k_star - 1)
            spectral::mollify(psik, scales.ell[k]);
        // Truncate at the cutoff the time stepper enforces, so the data the
        // solver evolves and the data analyzed here agree exactly.
        spectral::dealias(psik);
        table.psi.push_back(std::move(psik));
        table.stages.push_back(diag);
    }

    {
        SymTensorField D = spectral::modified_sym_gradient(table.psi.back());
        table.dpsi_sup[scales.k_star] = spectral::oversampled_sup_maxentry(D);
    }
    return table;
}

VectorField flow_component(const CoefficientTable& table, int k)
{
    return spectral::projected_laplacian(table.psi.at(k));
}

VectorField assemble_v(const CoefficientTable& table, double t)
{
    if (t < 0.0) throw std::range_error("flow evaluation requires t >= 0");
    VectorField out(table.grid);
    out.zero();
    for (int k = 0; k <= table.scales.k_star; ++k) {
        const VectorField vk = flow_component(table, k);
        const double gk = table.time_factor(k, t);
        for (int c = 0; c < 3; ++c) out[c].accumulate(vk[c], gk);
    }
    return out;
}

VectorField assemble_v_single(const CoefficientTable& table, int k, double t)
{
    if (t < 0.0) throw std::range_error("flow evaluation requires t >= 0");
    VectorField out = flow_component(table, k);
    const double gk = table.time_factor(k, t);
    for (int c = 0; c < 3; ++c) out[c].scale(gk);
    return out;
}

FlowSplit split_component(const CoefficientTable& table, int k, double t)
{
    if (t < 0.0) throw std::range_error("flow evaluation requires t >= 0");
    const ScaleTable& sc = table.scales;
    FlowSplit out;
    const double decay = std::exp(-table.carrier_rate(k) * t);
    if (k == 0) {
        const TargetSpec& tg = sc.target;
        const double theta = tg.theta_norm();
        const double amp = -sc.C[0] * table.a0 * decay;
        std::array<double, 3> a{};
        for (int c = 0; c < 3; ++c) a[c] = amp * tg.theta_star[c] / theta;
        out.principal = sine_field(table.grid, tg.eta_star, a);
    } else {
        out.principal = assemble_direct(table, k);
        const double s = -sc.C.at(k) * decay;
        for (int c = 0; c < 3; ++c) out.principal[c].scale(s);
    }
    out.error = assemble_v_single(table, k, t);
    for (int c = 0; c < 3; ++c) out.error[c].accumulate(out.principal[c], -1.0);
    return out;
}

InitialData assemble_u0(const CoefficientTable& table)
{
    InitialData out{assemble_v(table, 0.0), {}};
    NormReport& r = out.norms;
    r.sup = spectral::oversampled_sup(out.u0);
    r.besov = spectral::besov_norm_sup(out.u0, -1.0, 1);
    double mean2 = 0.0;
    for (int c = 0; c < 3; ++c) mean2 += std::norm(out.u0[c].mean());
    r.mean_abs = std::sqrt(mean2);
    r.bands = spectral::band_profile(out.u0, false);
    r.peak_band_sup = 0.0;
    for (const auto& [freq, sup] : r.bands) {
        if (sup > r.peak_band_sup) { r.peak_band_sup = sup; r.peak_band = freq; }
    }
    const double target = static_cast<double>(table.scales.N[table.scales.k_star]);
    double worst = 0.0;
    for (const auto& [freq, sup] : r.bands) {
        const bool on_target = freq > 0.5 * target && freq < 2.0 * target;
        if (!on_target) worst = std::max(worst, sup);
    }
    r.leakage = (r.peak_band_sup > 0.0) ? worst / r.peak_band_sup : 0.0;
    return out;
}

CancellationReport verify_key_cancellation(const CoefficientTable& table, int k, double t)
{
    const ScaleTable& sc = table.scales;
    if (k < 0 || k >= sc.k_star)
        throw std::out_of_range("cancellation check requires 0 <= k < k_star");
    const Grid& g = table.grid;
    const int kk = k + 1;
    const StageDiagnostics& st = table.stages.at(kk - 1);

    // Left side: the slow stress layer assembled pointwise from the
    // coefficient fields, divergence and projection taken spectrally.
    StagePrep prep = prepare_stage(g, table.psi.at(k));
    const CoeffKernel kern =
        CoeffKernel::make(table.frame, st.B, double(sc.N[k]), prep.S);
    const double* dptr[6];
    for (int p = 0; p < 6; ++p) dptr[p] = prep.d[p].data();
    const std::size_t m = prep.d[0].size();

    const double nk1 = static_cast<double>(sc.N[kk]);
    const double weight = sc.C[kk] * sc.C[kk] * std::exp(-2.0 * nk1 * nk1 * t);
    SymTensorField stress(g);
    {
        std::vector<RealBuffer> cell;
        for (int p = 0; p < 6; ++p) { cell.emplace_back(g); cell.back().zero(); }
        for (int j = 0; j < 6; ++j) {
            const double bj = st.B[j];
            for (std::size_t i = 0; i < m; ++i) {
                const double a = kern.value(j, dptr, i);
                const double qv = bj * a * a;
                for (int p = 0; p < 6; ++p) cell[p][i] += qv * kern.thth[j][p];
            }
        }
        for (int p = 0; p < 6; ++p) {
            stress[p].from_real(cell[p].data());
            stress[p].scale(weight);
        }
    }
    prep.d.clear();
    VectorField lhs = spectral::tensor_divergence(stress);
    spectral::leray_project(lhs);

    // Right side: the designed transfer onto the stored potential.
    VectorField rhs = spectral::projected_laplacian(table.psi.at(k));
    const double s = -2.0 * sc.C[kk] * sc.C[kk] * double(sc.N[k]) *
                     std::exp(-2.0 * nk1 * nk1 * t);
    for (int c = 0; c < 3; ++c) rhs[c].scale(s);

    CancellationReport rep;
    rep.rhs_sup = spectral::sup_norm(rhs);
    rep.lhs_sup = spectral::sup_norm(lhs);
    for (int c = 0; c < 3; ++c) lhs[c].accumulate(rhs[c], -1.0);
    rep.residual = spectral::sup_norm(lhs) / rep.rhs_sup;
    return rep;
}

double default_force_exponent(double b, double gamma)
{
    return std::min((b - 1.0) / 16.0, (gamma * b - 1.0) / 4.0);
}

namespace {

ForceSample force_at(const CoefficientTable& table,
                     const std::vector<VectorField>& comp, double t,
                     double alpha, double beta)
{
    const Grid& g = table.grid;
    const ScaleTable& sc = table.scales;
    VectorField v(g);
    v.zero();
    for (int k = 0; k <= sc.k_star; ++k) {
        const double gk = table.time_factor(k, t);
        for (int c = 0; c < 3; ++c) v[c].accumulate(comp[k][c], gk);
    }
    const double above = spectral::energy_fraction_above_cutoff(v);
    if (above > 1e-10) {
        std::ostringstream msg;
        msg << "aliasing: spectral energy above the dealias cutoff is "
            << above << " of the total (limit 1e-10)";
        throw NumericalError(msg.str());
    }

    VectorField gfield = spectral::convective_term(v, false);
    ForceSample out;
    out.t = t;
    out.transport_sup = spectral::sup_norm(gfield);
    // add -Laplace v and the exact time derivative
    for (int c = 0; c < 3; ++c) {
        auto* dst = gfield[c].data();
        const auto* src = v[c].data();
        for_each_mode(g, [&](std::size_t idx, int x1, int x2, int x3) {
            const double k2 = double(x1) * x1 + double(x2) * x2 + double(x3) * x3;
            dst[idx] += k2 * src[idx];
        });
    }
    for (int k = 0; k <= sc.k_star; ++k) {
        const double gdot = table.time_factor_dt(k, t);
        for (int c = 0; c < 3; ++c) gfield[c].accumulate(comp[k][c], gdot);
    }
    out.g_sup = spectral::sup_norm(gfield);
    out.ratio = (out.transport_sup > 0.0) ? out.g_sup / out.transport_sup : 0.0;

    const double n0sq = double(sc.N[0]) * double(sc.N[0]);
    out.bound_shape = std::pow(sc.A, -beta) *
                      std::pow(n0sq * t, 0.5 * alpha + beta) *
                      std::exp(-n0sq * t) * std::pow(t, -0.5 * (2.0 + alpha));
    return out;
}

}  // namespace

ForceSample force_residual(const CoefficientTable& table, double t,
                           double alpha, double beta)
{
    if (!(t > 0.0)) throw std::range_error("force residual requires t > 0");
    std::vector<VectorField> comp;
    comp.reserve(table.scales.k_star + 1);
    for (int k = 0; k <= table.scales.k_star; ++k)
        comp.push_back(flow_component(table, k));
    return force_at(table, comp, t, alpha, beta);
}

std::vector<ForceSample> force_profile(const CoefficientTable& table,
                                       double t0, double t1, int per_decade,
                                       double alpha, double beta)
{
    if (!(t0 > 0.0 && t1 >= t0)) throw std::range_error("force profile requires 0 < t0 <= t1");
    if (per_decade < 1) throw std::range_error("force profile requires per_decade >= 1");
    std::vector<double> times;
    for (int i = 0;; ++i) {
        const double t = t0 * std::pow(10.0, double(i) / per_decade);
        if (t >= t1 * (1.0 - 1e-12)) break;
        times.push_back(t);
    }
    times.push_back(t1);

    std::vector<VectorField> comp;
    comp.reserve(table.scales.k_star + 1);
    for (int k = 0; k <= table.scales.k_star; ++k)
        comp.push_back(flow_component(table, k));

    std::vector<ForceSample> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(force_at(table, comp, t, alpha, beta));
    return out;
}

ForceSample shear_force_check(const TargetSpec& target, const Grid& g, double t)
{
    target.validate();
    const double lam = target.eta_norm_sq();
    const double decay = std::exp(-lam * t);
    std::array<double, 3> amp{};
    for (int c = 0; c < 3; ++c) amp[c] = target.theta_star[c] * decay;
    const VectorField v = sine_field(g, target.eta_star, amp);

    VectorField gfield = spectral::convective_term(v, false);
    ForceSample out;
    out.t = t;
    out.transport_sup = spectral::sup_norm(gfield);
    // (d_t - Laplace) acts as multiplication by (|xi|^2 - lam), which is an
    // exact zero on the only populated modes.
    for (int c = 0; c < 3; ++c) {
        auto* dst = gfield[c].data();
        const auto* src = v[c].data();
        for_each_mode(g, [&](std::size_t idx, int x1, int x2, int x3) {
            const double k2 = double(x1) * x1 + double(x2) * x2 + double(x3) * x3;
            dst[idx] += (k2 - lam) * src[idx];
        });
    }
    out.g_sup = spectral::sup_norm(gfield);
    out.ratio = 0.0;
    out.bound_shape = 0.0;
    return out;
}

std::string table_summary_json(const CoefficientTable& table)
{
    nlohmann::json j;
    const ScaleTable& sc = table.scales;
    j["schema_version"] = 1;
    j["target"]["theta_star"] = sc.target.theta_star;
    j["target"]["eta_star"] = sc.target.eta_star;
    j["ladder"] = {{"b", sc.b},           {"gamma", sc.gamma},
                   {"A", sc.A},           {"epsilon0", sc.eps0},
                   {"k_star", sc.k_star}, {"n", sc.n},
                   {"N", sc.N},           {"M", sc.M},
                   {"C", sc.C},           {"ell", sc.ell},
                   {"recursion_defect", sc.recursion_defect()}};
    j["c_star"] = table.c_star;
    j["a0"] = table.a0;
    j["deformation_sup"] = table.dpsi_sup;
    j["stages"] = nlohmann::json::array();
    for (const auto& st : table.stages) {
        nlohmann::json s;
        s["k"] = st.k;
        s["B"] = st.B;
        s["modes"] = st.modes;
        s["S"] = st.S;
        s["p"] = st.p;
        s["identity_residual"] = st.identity_residual;
        s["eps_max"] = st.eps_max;
        s["a_range"] = {st.a_min, st.a_max};
        j["stages"].push_back(std::move(s));
    }
    return j.dump(2);
}

}  // namespace nsc::construction
