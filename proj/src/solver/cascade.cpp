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

#include "nsc/solver/cascade.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "nsc/spectral/lp.hpp"
#include "nsc/spectral/ops.hpp"
#include "nsc/spectral/snapshot.hpp"

namespace nsc::solver {

using construction::CoefficientTable;
using spectral::Grid;
using spectral::VectorField;

namespace {

// The decaying single-mode target the evolved field is compared against.
VectorField target_shear(const Grid& g, const construction::TargetSpec& tg, double t)
{
    VectorField out(g);
    out.zero();
    const double decay = std::exp(-tg.eta_norm_sq() * t);
    for (int c = 0; c < 3; ++c)
        out[c].set_mode(static_cast<int>(tg.eta_star[0]),
                        static_cast<int>(tg.eta_star[1]),
                        static_cast<int>(tg.eta_star[2]),
                        std::complex<double>(0.0, -0.5) * (tg.theta_star[c] * decay));
    return out;
}

std::vector<double> sample_grid(const CoefficientTable& table, const RunOptions& opt)
{
    const auto& sc = table.scales;
    const double n0 = static_cast<double>(sc.N[0]);
    const double horizon = opt.horizon_factor / (n0 * n0);
    const double top = static_cast<double>(sc.N[sc.k_star]);

    std::vector<double> ts;
    ts.push_back(0.0);
    const double first = 1.0 / (top * top) / 30.0;
    const double ratio = std::pow(10.0, 1.0 / opt.per_decade);
    for (double t = first; t < horizon * (1.0 - 1e-12); t *= ratio) ts.push_back(t);
    ts.push_back(horizon);
    for (int k = 0; k <= sc.k_star; ++k) {
        const double nk = static_cast<double>(sc.N[k]);
        const double tk = 1.0 / (nk * nk);
        if (tk <= horizon) ts.push_back(tk);
    }
    const double lam = sc.target.eta_norm_sq();
    for (double f : {0.5, 1.0, 2.0}) {
        const double t = f / lam;
        if (t <= horizon) ts.push_back(t);
    }
    for (double t : opt.snapshot_times)
        if (t > 0.0 && t <= horizon) ts.push_back(t);

    std::sort(ts.begin(), ts.end());
    std::vector<double> out;
    for (double t : ts) {
        if (out.empty() || t > out.back() * (1.0 + 1e-9) + 1e-300) out.push_back(t);
    }
    return out;
}

}  // namespace

CascadeSeries run_cascade(CoefficientTable table, const RunOptions& opt)
{
    const auto start = std::chrono::steady_clock::now();
    const Grid& g = table.grid;
    const auto& sc = table.scales;

    // Cache the flow components and release the potentials; together they
    // are the largest resident objects and only one set is needed.
    std::vector<VectorField> comp;
    std::vector<double> comp_sup;
    comp.reserve(sc.k_star + 1);
    for (int k = 0; k <= sc.k_star; ++k) {
        comp.push_back(construction::flow_component(table, k));
        comp_sup.push_back(spectral::sup_norm(comp.back()));
    }
    table.psi.clear();
    table.psi.shrink_to_fit();

    VectorField u0(g);
    u0.zero();
    for (int k = 0; k <= sc.k_star; ++k)
        for (int c = 0; c < 3; ++c) u0[c].accumulate(comp[k][c], table.time_factor(k, 0.0));

    CascadeSeries series;
    for (int k = 0; k <= sc.k_star; ++k)
        series.shell_centers.push_back(static_cast<double>(sc.N[k]));
    const std::vector<double> targets = sample_grid(table, opt);
    series.horizon = targets.back();

    const auto measure = [&](double t, const VectorField& u) {
        CascadeSample smp;
        smp.t = t;
        for (double nk : series.shell_centers) {
            VectorField shell = u;
            spectral::project_shell_annulus(shell, nk);
            smp.shell_amp.push_back(spectral::sup_norm(shell));
        }
        const auto bands = spectral::band_profile(u, false);
        for (const auto& [freq, sup] : bands) {
            smp.besov_inf = std::max(smp.besov_inf, sup / freq);
            smp.besov_one += sup / freq;
        }
        smp.energy = 0.5 * spectral::mean_square(u);
        smp.enstrophy = 0.5 * spectral::mean_square_gradient(u);

        {
            VectorField e = u;
            const VectorField shear = target_shear(g, sc.target, t);
            for (int c = 0; c < 3; ++c) e[c].accumulate(shear[c], -1.0);
            smp.grad_E = spectral::derivative_sup_norms(e, opt.n_max);
        }
        {
            VectorField w = u;
            for (int k = 0; k <= sc.k_star; ++k) {
                const double gk = table.time_factor(k, t);
                for (int c = 0; c < 3; ++c) w[c].accumulate(comp[k][c], -gk);
            }
            const auto sups = spectral::derivative_sup_norms(w, opt.n_max);
            for (int m = 0; m <= opt.n_max; ++m)
                smp.w_weighted.push_back(std::pow(t, 0.5 * (1 + m)) * sups[m]);
            double vmax = 0.0;
            for (int k = 0; k <= sc.k_star; ++k)
                vmax = std::max(vmax, std::abs(table.time_factor(k, t)) * comp_sup[k]);
            smp.w_ratio = vmax > 0.0 ? sups[0] / vmax : 0.0;
        }
        series.samples.push_back(std::move(smp));
    };

    // The t = 0 record is taken from the assembled data itself, before the
    // integrator re-projects: u0 is v(0) by construction, identically.
    measure(0.0, u0);

    SolverState state = make_state(std::move(u0), opt.policy);
    const auto want_snapshot = [&](double t) {
        for (double ts : opt.snapshot_times)
            if (std::abs(ts - t) <= 1e-9 * std::max(1.0, std::abs(ts))) return true;
        return false;
    };
    for (std::size_t i = 1; i < targets.size(); ++i) {
        try {
            advance_to(state, targets[i]);
        } catch (const BlowUpError& e) {
            series.blew_up = true;
            series.blowup_time = e.time();
            break;
        }
        measure(state.t, state.u);
        if (!opt.snapshot_dir.empty() && want_snapshot(state.t)) {
            char name[64];
            std::snprintf(name, sizeof name, "snapshot_%013.9f.bin", state.t);
            const std::string path = opt.snapshot_dir + "/" + name;
            spectral::write_snapshot(path, state.t, state.u);
            series.snapshots.emplace_back(state.t, path);
        }
    }

    series.steps = state.steps;
    series.rejects = state.rejects;
    const int nshell = static_cast<int>(series.shell_centers.size());
    series.activation_time.assign(nshell, 0.0);
    series.peak_amp.assign(nshell, 0.0);
    for (const auto& smp : series.samples) {
        for (int k = 0; k < nshell; ++k) {
            if (smp.shell_amp[k] > series.peak_amp[k]) {
                series.peak_amp[k] = smp.shell_amp[k];
                series.activation_time[k] = smp.t;
            }
        }
    }
    series.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return series;
}

ErrorReport error_and_perturbation(const CoefficientTable& table,
                                   const VectorField& u, double t, int n_max)
{
    ErrorReport out;
    {
        VectorField e = u;
        const VectorField shear = target_shear(table.grid, table.scales.target, t);
        for (int c = 0; c < 3; ++c) e[c].accumulate(shear[c], -1.0);
        out.grad_E = spectral::derivative_sup_norms(e, n_max);
    }
    {
        VectorField w = u;
        const VectorField v = construction::assemble_v(table, t);
        for (int c = 0; c < 3; ++c) w[c].accumulate(v[c], -1.0);
        const auto sups = spectral::derivative_sup_norms(w, n_max);
        for (int m = 0; m <= n_max; ++m)
            out.w_weighted.push_back(std::pow(t, 0.5 * (1 + m)) * sups[m]);
        double vmax = 0.0;
        for (int k = 0; k <= table.scales.k_star; ++k) {
            const VectorField vk = construction::assemble_v_single(table, k, t);
            vmax = std::max(vmax, spectral::sup_norm(vk));
        }
        out.w_ratio = vmax > 0.0 ? sups[0] / vmax : 0.0;
    }
    return out;
}

std::string series_csv(const CascadeSeries& s)
{
    std::string out;
    out += "t,k,shell_amp,besov_inf,besov_one,energy,enstrophy";
    const std::size_t n_e = s.samples.empty() ? 0 : s.samples.front().grad_E.size();
    const std::size_t n_w = s.samples.empty() ? 0 : s.samples.front().w_weighted.size();
    char buf[64];
    for (std::size_t m = 0; m < n_e; ++m) {
        std::snprintf(buf, sizeof buf, ",grad_E_%zu", m);
        out += buf;
    }
    for (std::size_t m = 0; m < n_w; ++m) {
        std::snprintf(buf, sizeof buf, ",w_weighted_%zu", m);
        out += buf;
    }
    out += ",w_ratio\n";
    const auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
    };
    for (const auto& smp : s.samples) {
        for (std::size_t k = 0; k < s.shell_centers.size(); ++k) {
            num(smp.t);
            std::snprintf(buf, sizeof buf, ",%zu,", k);
            out += buf;
            num(smp.shell_amp[k]);
            out += ',';
            num(smp.besov_inf);
            out += ',';
            num(smp.besov_one);
            out += ',';
            num(smp.energy);
            out += ',';
            num(smp.enstrophy);
            for (double v : smp.grad_E) {
                out += ',';
                num(v);
            }
            for (double v : smp.w_weighted) {
                out += ',';
                num(v);
            }
            out += ',';
            num(smp.w_ratio);
            out += '\n';
        }
    }
    return out;
}

std::string series_summary_json(const CascadeSeries& s)
{
    nlohmann::json j;
    j["schema_version"] = 1;
    j["shell_centers"] = s.shell_centers;
    j["horizon"] = s.horizon;
    j["activation_time"] = s.activation_time;
    j["peak_amp"] = s.peak_amp;
    j["samples"] = s.samples.size();
    j["steps"] = s.steps;
    j["rejects"] = s.rejects;
    // wall-clock time stays out of the summary so identical configs
    // reproduce identical bytes
    j["blew_up"] = s.blew_up;
    if (s.blew_up) j["blowup_time"] = s.blowup_time;
    double w_ratio_max = 0.0, besov_inf_max = 0.0;
    for (const auto& smp : s.samples) {
        w_ratio_max = std::max(w_ratio_max, smp.w_ratio);
        besov_inf_max = std::max(besov_inf_max, smp.besov_inf);
    }
    j["w_ratio_max"] = w_ratio_max;
    j["besov_inf_max"] = besov_inf_max;
    if (!s.samples.empty()) {
        const auto& last = s.samples.back();
        j["final"] = {{"t", last.t},
                      {"energy", last.energy},
                      {"enstrophy", last.enstrophy},
                      {"besov_one", last.besov_one}};
    }
    if (!s.snapshots.empty()) {
        j["snapshots"] = nlohmann::json::array();
        for (const auto& [t, path] : s.snapshots)
            j["snapshots"].push_back({{"t", t}, {"path", path}});
    }
    j["series"] = nlohmann::json::array();
    for (const auto& smp : s.samples) {
        nlohmann::json row;
        row["t"] = smp.t;
        row["shell_amp"] = smp.shell_amp;
        row["besov_inf"] = smp.besov_inf;
        row["besov_one"] = smp.besov_one;
        row["energy"] = smp.energy;
        row["enstrophy"] = smp.enstrophy;
        row["grad_E"] = smp.grad_E;
        row["w_weighted"] = smp.w_weighted;
        row["w_ratio"] = smp.w_ratio;
        j["series"].push_back(std::move(row));
    }
    return j.dump(2);
}

CascadeSeries series_from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw std::runtime_error("series document: unsupported schema version");
    CascadeSeries s;
    s.shell_centers = j.at("shell_centers").get<std::vector<double>>();
    s.horizon = j.at("horizon").get<double>();
    s.activation_time = j.at("activation_time").get<std::vector<double>>();
    s.peak_amp = j.at("peak_amp").get<std::vector<double>>();
    s.steps = j.at("steps").get<long>();
    s.rejects = j.at("rejects").get<long>();
    s.blew_up = j.at("blew_up").get<bool>();
    if (s.blew_up) s.blowup_time = j.at("blowup_time").get<double>();
    if (j.contains("snapshots"))
        for (const auto& e : j["snapshots"])
            s.snapshots.emplace_back(e.at("t").get<double>(),
                                     e.at("path").get<std::string>());
    for (const auto& row : j.at("series")) {
        CascadeSample smp;
        smp.t = row.at("t").get<double>();
        smp.shell_amp = row.at("shell_amp").get<std::vector<double>>();
        smp.besov_inf = row.at("besov_inf").get<double>();
        smp.besov_one = row.at("besov_one").get<double>();
        smp.energy = row.at("energy").get<double>();
        smp.enstrophy = row.at("enstrophy").get<double>();
        smp.grad_E = row.at("grad_E").get<std::vector<double>>();
        smp.w_weighted = row.at("w_weighted").get<std::vector<double>>();
        smp.w_ratio = row.at("w_ratio").get<double>();
        s.samples.push_back(std::move(smp));
    }
    return s;
}

} // namespace nsc::solver
