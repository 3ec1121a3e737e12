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

#include "nsc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "json.hpp"
#include "nsc/construction/principal.hpp"
#include "nsc/geometry/mikado.hpp"
#include "nsc/geometry/nash.hpp"
#include "nsc/solver/cascade.hpp"
#include "nsc/solver/integrator.hpp"
#include "nsc/spectral/lp.hpp"
#include "nsc/spectral/ops.hpp"
#include "nsc/spectral/snapshot.hpp"

namespace nsc::cli {

using construction::ConfigurationError;
using construction::NumericalError;
using construction::ResolutionError;
using spectral::Grid;
using spectral::VectorField;

namespace {

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

void ensure_dir(const std::string& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error(dir + ": cannot create directory: " + ec.message());
}

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Random zero-mean divergence-carrying test field: band-limited white
// noise with the mean removed.
VectorField random_field(const Grid& g, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    spectral::RealBuffer b(g);
    VectorField u(g);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = uni(rng);
        u[c].from_real(b.data());
    }
    spectral::dealias(u);
    for (int c = 0; c < 3; ++c) u[c].set_mode(0, 0, 0, 0.0);
    return u;
}

SuiteResult check_nash(int fault)
{
    SuiteResult r{"nash reconstruction", false, 0.0, 1e-12, ""};
    geometry::NashFrame f = geometry::make_nash_frame();
    if (fault != 0) {
        // test fixture: damage one decomposition coefficient and let the
        // suite prove it notices
        f.b[0][0] = f.b[0][0] + geometry::Rat(1, 8);
    }

    const auto outer = f.theta_outer_sum();
    for (int p = 0; p < 6; ++p) {
        const geometry::Rat want = p < 3 ? geometry::Rat(2) : geometry::Rat(0);
        if (outer[p] != want) {
            r.detail = "sum theta (x) theta deviates from 2 Id in entry " + std::to_string(p);
            r.worst = 1.0;
            return r;
        }
    }
    for (int j = 0; j < 6; ++j) {
        if (f.abs_row_sum(j) != geometry::Rat(25, 8)) {
            r.detail = "coefficient row " + std::to_string(j) +
                       " has |b| sum " + f.abs_row_sum(j).str() + ", want 25/8";
            r.worst = 1.0;
            return r;
        }
    }

    std::mt19937_64 rng(20260823);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst = 0.0, gmin = 1.0, gmax = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<double, 6> eps{};
        for (double& e : eps) e = uni(rng);
        // scale so the Frobenius norm is uniform in [0, 1/7); Frobenius
        // dominates the operator norm, so M = Id + eps stays in the ball
        double fro = 0.0;
        for (int p = 0; p < 6; ++p) fro += (p < 3 ? 1.0 : 2.0) * eps[p] * eps[p];
        fro = std::sqrt(fro);
        const double target = uni(rng) * 0.5 + 0.5;  // in [0, 1]
        const double scale = fro > 0.0 ? target * (1.0 / 7.0) / fro : 0.0;
        for (double& e : eps) e *= scale;

        const auto rec = f.reconstruct(eps);
        for (int p = 0; p < 6; ++p) {
            const double want = (p < 3 ? 1.0 : 0.0) + eps[p];
            worst = std::max(worst, std::abs(rec[p] - want));
        }
        for (int j = 0; j < 6; ++j) {
            const double g2 = f.gamma_squared(j, eps);
            gmin = std::min(gmin, g2);
            gmax = std::max(gmax, g2);
        }
    }
    r.worst = worst;
    if (gmin < 1.0 / 25.0 - 1e-12 || gmax > 1.0) {
        r.detail = "squared weight left [1/25, 1]: range [" + fmt(gmin) + ", " +
                   fmt(gmax) + "]";
        return r;
    }
    r.pass = worst <= r.limit;
    r.detail = "1000 matrices reconstructed; squared weights in [" + fmt(gmin) +
               ", " + fmt(gmax) + "]";
    return r;
}

SuiteResult check_distances()
{
    SuiteResult r{"distance matrix", false, 0.0, 1e-12, ""};
    const auto lines = geometry::make_mikado_lines();
    const auto measured = lines.distance_table();
    const auto& closed = geometry::distance_closed_forms();
    double worst = 0.0, dmin = 1e300;
    for (int p = 0; p < 15; ++p) {
        worst = std::max(worst, std::abs(measured[p] - closed[p].value()));
        dmin = std::min(dmin, measured[p]);
    }
    worst = std::max(worst,
                     std::abs(dmin - geometry::min_line_distance_closed_form()));
    r.worst = worst;
    if (dmin <= geometry::separation_threshold()) {
        r.detail = "minimal distance " + fmt(dmin) +
                   " does not clear the separation threshold " +
                   fmt(geometry::separation_threshold());
        return r;
    }
    r.pass = worst <= r.limit;
    r.detail = "15 pair distances match closed forms; minimum " + fmt(dmin);
    return r;
}

SuiteResult check_partition(const Grid& g)
{
    SuiteResult r{"partition of unity", false, 0.0, 1e-12, ""};
    const auto freqs = spectral::dyadic_frequencies(g);
    double worst = 0.0;
    for (int x1 = -g.n / 2; x1 <= g.n / 2; ++x1)
        for (int x2 = -g.n / 2; x2 <= g.n / 2; ++x2)
            for (int x3 = 0; x3 <= g.n / 2; ++x3) {
                if (x1 == 0 && x2 == 0 && x3 == 0) continue;
                const double rad = std::sqrt(double(x1) * x1 + double(x2) * x2 +
                                             double(x3) * x3);
                double total = spectral::lowpass_symbol(rad);
                for (double N : freqs) total += spectral::band_symbol(rad / N);
                worst = std::max(worst, std::abs(total - 1.0));
            }
    r.worst = worst;
    r.pass = worst <= r.limit;
    r.detail = "low pass plus dyadic bands sum to one on every stored mode";
    return r;
}

SuiteResult check_anti_divergence(const Grid& g)
{
    SuiteResult r{"anti-divergence right inverse", false, 0.0, 1e-10, ""};
    std::mt19937_64 rng(4811);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const VectorField v = random_field(g, rng);
        const auto T = spectral::anti_divergence(v);
        const VectorField back = spectral::tensor_divergence(T);
        worst = std::max(worst, spectral::rel_l2_error(back, v));
    }
    r.worst = worst;
    r.pass = worst <= r.limit;
    r.detail = "div of the anti-divergence returns 20 random zero-mean fields";
    return r;
}

SuiteResult check_sym_gradient(const Grid& g)
{
    SuiteResult r{"sym-gradient divergence identity", false, 0.0, 1e-10, ""};
    std::mt19937_64 rng(1507);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const VectorField v = random_field(g, rng);
        const auto D = spectral::modified_sym_gradient(v);
        const VectorField lhs = spectral::tensor_divergence(D);
        VectorField rhs(g);
        rhs.zero();
        const VectorField pl = spectral::projected_laplacian(v);
        for (int c = 0; c < 3; ++c) rhs[c].accumulate(pl[c], 0.5);
        worst = std::max(worst, spectral::rel_l2_error(lhs, rhs));
    }
    r.worst = worst;
    r.pass = worst <= r.limit;
    r.detail = "divergence of the modified symmetric gradient is half the "
               "projected Laplacian";
    return r;
}

SuiteResult check_recursion(const construction::CoefficientTable& table)
{
    SuiteResult r{"coefficient recursion", false, 0.0, 1e-8, ""};
    double worst = table.scales.recursion_defect();
    double eps_max = 0.0, a_min = 1e300, a_max = 0.0;
    for (const auto& st : table.stages) {
        worst = std::max(worst, st.identity_residual);
        eps_max = std::max(eps_max, st.eps_max);
        a_min = std::min(a_min, st.a_min);
        a_max = std::max(a_max, st.a_max);
    }
    r.worst = worst;
    r.pass = worst <= r.limit && eps_max <= 1.0 / 7.0 + 1e-12;
    r.detail = "stage identity residuals and the amplitude ladder recursion; "
               "matrix arguments peak at " +
               fmt(eps_max) + ", coefficients span [" + fmt(a_min) + ", " +
               fmt(a_max) + "]";
    if (!table.stages.empty() && (a_min < 1.0 || a_max > 32000.0))
        r.detail += " (outside the comfortable window [1, 32000])";
    return r;
}

SuiteResult check_cancellation(const construction::CoefficientTable& table)
{
    SuiteResult r{"key cancellation", false, 0.0, 1e-8, ""};
    double worst = 0.0;
    for (int k = 0; k < table.scales.k_star; ++k) {
        const auto rep = construction::verify_key_cancellation(table, k, 0.01);
        worst = std::max(worst, rep.residual);
    }
    r.worst = worst;
    r.pass = worst <= r.limit;
    r.detail = "slow stress divergence lands on the next carrier, both routes";
    return r;
}

SuiteResult check_shear(const ExperimentConfig& cfg)
{
    SuiteResult r{"shear exactness", false, 0.0, 1e-10, ""};
    const Grid g(64);
    const auto target = cfg.target();

    // residual route: the one-mode family solves the equations exactly
    const auto probe = construction::shear_force_check(target, g, 0.1);
    double worst = probe.g_sup;

    // solver route: evolve the shear and compare with the closed form
    VectorField u(g);
    const double lam = target.eta_norm_sq();
    for (int c = 0; c < 3; ++c) {
        if (target.theta_star[c] == 0.0) continue;
        u[c].set_mode(static_cast<int>(target.eta_star[0]),
                      static_cast<int>(target.eta_star[1]),
                      static_cast<int>(target.eta_star[2]),
                      std::complex<double>(0.0, -0.5) * target.theta_star[c]);
    }
    solver::StepPolicy pol;
    pol.cfl = cfg.cfl;
    pol.max_dt = cfg.max_dt;
    auto state = solver::make_state(std::move(u), pol);
    solver::advance_to(state, 0.1);
    VectorField exact(g);
    const double decay = std::exp(-lam * 0.1);
    for (int c = 0; c < 3; ++c) {
        if (target.theta_star[c] == 0.0) continue;
        exact[c].set_mode(static_cast<int>(target.eta_star[0]),
                          static_cast<int>(target.eta_star[1]),
                          static_cast<int>(target.eta_star[2]),
                          std::complex<double>(0.0, -0.5) * target.theta_star[c] * decay);
    }
    for (int c = 0; c < 3; ++c) state.u[c].accumulate(exact[c], -1.0);
    worst = std::max(worst, spectral::sup_norm(state.u));
    r.worst = worst;
    r.pass = worst <= r.limit;
    r.detail = "force residual vanishes and the integrator tracks the decay "
               "exponential to t = 0.1";
    return r;
}

// Writes the partial scales document for the automatic stage count error
// path, so the chosen k_star is archived even when the grid cannot hold
// the ladder it implies.
void write_scales_error(const ExperimentConfig& cfg, const std::string& message)
{
    nlohmann::json j;
    j["schema_version"] = 1;
    try {
        j["k_star"] = construction::choose_kstar(cfg.target().amplitude_ratio());
    } catch (const std::exception&) {
        j["k_star"] = nullptr;
    }
    j["error"] = message;
    ensure_dir(cfg.output);
    write_file(cfg.output + "/scales.json", j.dump(2));
}

std::string norm_report_json(const construction::NormReport& n)
{
    nlohmann::json j;
    j["schema_version"] = 1;
    j["sup"] = n.sup;
    j["besov"] = n.besov;
    j["mean_abs"] = n.mean_abs;
    j["peak_band"] = n.peak_band;
    j["peak_band_sup"] = n.peak_band_sup;
    j["leakage"] = n.leakage;
    j["bands"] = nlohmann::json::array();
    for (const auto& [N, sup] : n.bands) j["bands"].push_back({{"N", N}, {"sup", sup}});
    return j.dump(2);
}

std::string flow_snapshot_name(double t)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "flow_%013.9f.bin", t);
    return buf;
}

} // namespace

ExperimentConfig reference_config()
{
    ExperimentConfig cfg;  // struct defaults are the reference ladder
    cfg.k_star = 2;
    cfg.output = "out/reference";
    return cfg;
}

ExperimentConfig mini_config()
{
    ExperimentConfig cfg;
    cfg.theta_star = {4.0, 0.0, 0.0};
    cfg.eta_star = {0, 0, 1};
    cfg.A = 6.0;
    cfg.k_star = 2;
    cfg.n = 64;
    cfg.K = 1.0;
    cfg.per_decade = 8;
    cfg.output = "out/mini";
    return cfg;
}

VerifyReport run_verify_suites(const ExperimentConfig& cfg, int fault)
{
    VerifyReport rep;
    rep.suites.push_back(check_nash(fault));
    rep.suites.push_back(check_distances());
    const Grid g64(64);
    rep.suites.push_back(check_partition(g64));
    rep.suites.push_back(check_anti_divergence(g64));
    rep.suites.push_back(check_sym_gradient(g64));
    const auto scales = cfg.build_scales();
    const auto table = construction::build_coefficients(scales);
    rep.suites.push_back(check_recursion(table));
    rep.suites.push_back(check_cancellation(table));
    rep.suites.push_back(check_shear(cfg));
    rep.all_pass = std::all_of(rep.suites.begin(), rep.suites.end(),
                               [](const SuiteResult& s) { return s.pass; });
    return rep;
}

std::string verify_report_json(const VerifyReport& report)
{
    nlohmann::json j;
    j["schema_version"] = 1;
    j["all_pass"] = report.all_pass;
    j["suites"] = nlohmann::json::array();
    for (const auto& s : report.suites)
        j["suites"].push_back({{"name", s.name},
                               {"pass", s.pass},
                               {"worst", s.worst},
                               {"limit", s.limit},
                               {"detail", s.detail}});
    return j.dump(2);
}

int cmd_verify(const ExperimentConfig& cfg, int fault, std::ostream& log)
{
    try {
        const VerifyReport rep = run_verify_suites(cfg, fault);
        for (const auto& s : rep.suites)
            log << (s.pass ? "pass" : "FAIL") << ": " << s.name << " (worst "
                << fmt(s.worst) << ", limit " << fmt(s.limit) << ")\n";
        ensure_dir(cfg.output);
        const std::string path = cfg.output + "/verify_report.json";
        write_file(path, verify_report_json(rep));
        log << "wrote " << path << "\n";
        if (!rep.all_pass) {
            for (const auto& s : rep.suites)
                if (!s.pass) log << "failing check: " << s.name << ": " << s.detail << "\n";
            return kAssertionFailure;
        }
        return kOk;
    } catch (const ResolutionError& e) {
        log << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ConfigurationError& e) {
        log << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalError& e) {
        log << "error: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

int cmd_build(const ExperimentConfig& cfg, std::ostream& log)
{
    try {
        construction::ScaleTable scales;
        try {
            scales = cfg.build_scales();
        } catch (const ResolutionError& e) {
            if (cfg.k_star <= 0) write_scales_error(cfg, e.what());
            throw;
        }
        const auto table = construction::build_coefficients(scales);
        ensure_dir(cfg.output);
        write_file(cfg.output + "/config.json", config_json(cfg));
        write_file(cfg.output + "/coefficients.json",
                   construction::table_summary_json(table));
        log << "wrote " << cfg.output << "/coefficients.json\n";

        const auto init = construction::assemble_u0(table);
        write_file(cfg.output + "/u0_norms.json", norm_report_json(init.norms));
        log << "u0: sup " << fmt(init.norms.sup) << ", weighted band sum "
            << fmt(init.norms.besov) << ", peak band " << fmt(init.norms.peak_band)
            << ", leakage " << fmt(init.norms.leakage) << "\n";
        log << "wrote " << cfg.output << "/u0_norms.json\n";

        for (double t : cfg.snapshot_times) {
            const VectorField v = construction::assemble_v(table, t);
            const std::string path = cfg.output + "/" + flow_snapshot_name(t);
            spectral::write_snapshot(path, t, v);
            log << "wrote " << path << "\n";
        }
        return kOk;
    } catch (const ResolutionError& e) {
        log << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ConfigurationError& e) {
        log << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalError& e) {
        log << "error: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& log)
{
    try {
        construction::ScaleTable scales;
        try {
            scales = cfg.build_scales();
        } catch (const ResolutionError& e) {
            if (cfg.k_star <= 0) write_scales_error(cfg, e.what());
            throw;
        }
        auto table = construction::build_coefficients(scales);
        ensure_dir(cfg.output);
        write_file(cfg.output + "/config.json", config_json(cfg));
        write_file(cfg.output + "/coefficients.json",
                   construction::table_summary_json(table));
        {
            const auto init = construction::assemble_u0(table);
            write_file(cfg.output + "/u0_norms.json", norm_report_json(init.norms));
            log << "u0: sup " << fmt(init.norms.sup) << ", peak band "
                << fmt(init.norms.peak_band) << ", leakage "
                << fmt(init.norms.leakage) << "\n";
        }

        solver::RunOptions opt;
        opt.per_decade = cfg.per_decade;
        opt.horizon_factor = cfg.K;
        opt.policy.cfl = cfg.cfl;
        opt.policy.max_dt = cfg.max_dt;
        opt.n_max = cfg.n_max;
        opt.snapshot_times = cfg.snapshot_times;
        opt.snapshot_dir = cfg.output;
        auto series = solver::run_cascade(std::move(table), opt);

        write_file(cfg.output + "/series.csv", solver::series_csv(series));
        write_file(cfg.output + "/series.json", solver::series_summary_json(series));
        log << "wrote " << cfg.output << "/series.csv and series.json\n";
        for (std::size_t k = 0; k < series.activation_time.size(); ++k)
            log << "shell N = " << fmt(series.shell_centers[k]) << ": peak "
                << fmt(series.peak_amp[k]) << " at t = "
                << fmt(series.activation_time[k]) << "\n";
        log << "steps " << series.steps << ", rejected proposals "
            << series.rejects << ", wall time " << fmt(series.runtime_seconds)
            << " s\n";
        if (series.blew_up) {
            log << "error: the integration tripped the blow-up sentinel at t = "
                << fmt(series.blowup_time) << "\n";
            return kNumericalFailure;
        }
        return kOk;
    } catch (const ResolutionError& e) {
        log << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ConfigurationError& e) {
        log << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const solver::BlowUpError& e) {
        log << "error: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const NumericalError& e) {
        log << "error: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

int cmd_report(const std::string& json_path, const std::string& csv_path,
               std::ostream& log)
{
    try {
        std::ifstream in(json_path, std::ios::binary);
        if (!in) throw std::runtime_error(json_path + ": cannot open");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        const auto series = solver::series_from_json(text);
        std::string out = csv_path;
        if (out.empty()) {
            out = json_path;
            const auto dot = out.rfind('.');
            if (dot != std::string::npos) out.erase(dot);
            out += ".csv";
        }
        write_file(out, solver::series_csv(series));
        log << "wrote " << out << "\n";
        return kOk;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

} // namespace nsc::cli
