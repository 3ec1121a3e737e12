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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nsc/cli/commands.hpp"
#include "nsc/cli/config.hpp"
#include "nsc/construction/principal.hpp"
#include "nsc/solver/cascade.hpp"

using nsc::cli::ExperimentConfig;
using nsc::construction::ConfigurationError;

namespace {

// Message of the exception a callable must throw.
template <class E, class F>
std::string message_of(F&& f)
{
    try {
        f();
    } catch (const E& e) {
        return e.what();
    }
    FAIL("expected exception was not thrown");
    return {};
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path fresh_dir(const char* leaf)
{
    const auto dir = std::filesystem::temp_directory_path() / leaf;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

ExperimentConfig parse(const std::string& text)
{
    return nsc::cli::parse_config_text(text, "test");
}

const char* kMiniText =
    "schema = 1\n"
    "theta_star = 4 0 0\n"
    "eta_star = 0 0 1\n"
    "A = 6\n"
    "k_star = 2\n"
    "n = 64\n"
    "K = 1\n"
    "per_decade = 8\n";

} // namespace

TEST_CASE("config parsing fills defaults and reads every key")
{
    const ExperimentConfig cfg = parse(
        "# comment line\n"
        "schema = 1\n"
        "theta_star = 32 0 0   # trailing comment\n"
        "eta_star = 0 0 2\n"
        "b = 1.5\n"
        "gamma = 0.85\n"
        "A = 16\n"
        "epsilon0 = 0.5\n"
        "k_star = 2\n"
        "n = 256\n"
        "K = 8\n"
        "cfl = 0.5\n"
        "max_dt = 0.01\n"
        "alpha = 0.03\n"
        "beta = auto\n"
        "output = artifacts\n"
        "per_decade = 12\n"
        "snapshot_times = 0.01 0.5\n"
        "n_max = 2\n");
    CHECK(cfg.theta_star[0] == 32.0);
    CHECK(cfg.eta_star[2] == 2);
    CHECK(cfg.k_star == 2);
    CHECK(cfg.n == 256);
    CHECK(cfg.cfl == 0.5);
    CHECK(cfg.max_dt == 0.01);
    CHECK(cfg.alpha_resolved() == 0.03);
    CHECK(cfg.beta_resolved() ==
          nsc::construction::default_force_exponent(1.5, 0.85));
    CHECK(cfg.output == "artifacts");
    CHECK(cfg.per_decade == 12);
    REQUIRE(cfg.snapshot_times.size() == 2);
    CHECK(cfg.snapshot_times[1] == 0.5);
    CHECK(cfg.n_max == 2);

    const ExperimentConfig sparse = parse("schema = 1\nk_star = auto\n");
    CHECK(sparse.k_star == 0);  // auto
    CHECK(sparse.b == 1.5);
    CHECK(sparse.n == 256);
}

TEST_CASE("config rejections name the violated rule")
{
    CHECK(contains(message_of<ConfigurationError>([] { parse("b = 1.5\n"); }),
                   "missing required key 'schema'"));
    CHECK(contains(
        message_of<ConfigurationError>([] { parse("schema = 1\nwavelet = 3\n"); }),
        "unknown configuration key 'wavelet'"));
    CHECK(contains(
        message_of<ConfigurationError>([] { parse("schema = 1\nb = 1.5\nb = 1.6\n"); }),
        "duplicate key 'b'"));
    CHECK(contains(
        message_of<ConfigurationError>([] { parse("schema = 2\n"); }),
        "schema version 2 is not supported"));
    CHECK(contains(
        message_of<ConfigurationError>([] { parse("schema = 1\nb = fast\n"); }),
        "cannot parse 'fast' as a real number"));
    CHECK(contains(
        message_of<ConfigurationError>([] { parse("schema = 1\ncfl = 0\n"); }),
        "step policy must satisfy cfl > 0"));
    CHECK(contains(
        message_of<ConfigurationError>(
            [] { parse("schema = 1\nsnapshot_times = -0.5\n"); }),
        "snapshot times must satisfy t >= 0"));
    CHECK(contains(
        message_of<ConfigurationError>(
            [] { parse("schema = 1\ntheta_star = 0 0 4\n"); }),
        "theta_star . eta_star = 0"));

    // ladder inequalities surface through build_scales with the same wording
    const ExperimentConfig bad_b = parse("schema = 1\nb = 2.5\n");
    CHECK(contains(message_of<ConfigurationError>([&] { bad_b.build_scales(); }),
                   "exponent must satisfy 1 < b < 2"));
    const ExperimentConfig bad_gamma = parse("schema = 1\ngamma = 0.6\n");
    CHECK(contains(message_of<ConfigurationError>([&] { bad_gamma.build_scales(); }),
                   "localization exponent must satisfy gamma > (b+1)/(2b)"));
}

TEST_CASE("config echo records the resolved exponents and the auto marker")
{
    const ExperimentConfig cfg = parse("schema = 1\nk_star = auto\n");
    const std::string echo = nsc::cli::config_json(cfg);
    CHECK(contains(echo, "\"k_star\": \"auto\""));
    CHECK(contains(echo, "\"alpha\""));

    const std::string fixed = nsc::cli::config_json(parse(kMiniText));
    CHECK(contains(fixed, "\"k_star\": 2"));
}

TEST_CASE("shipped configuration files parse")
{
    const auto here = std::filesystem::path(__FILE__).parent_path();
    const auto mini = nsc::cli::parse_config_file(
        (here.parent_path() / "configs" / "mini.cfg").string());
    CHECK(mini.n == 64);
    CHECK(mini.A == 6.0);
    CHECK(mini.k_star == 2);
    CHECK_NOTHROW(mini.build_scales());

    const auto ref = nsc::cli::parse_config_file(
        (here.parent_path() / "configs" / "reference.cfg").string());
    CHECK(ref.n == 256);
    CHECK(ref.k_star == 2);
    const auto scales = ref.build_scales();
    REQUIRE(scales.N.size() == 3);
    CHECK(scales.N[1] == 8);
    CHECK(scales.N[2] == 64);
}

TEST_CASE("cmd_verify passes clean and detects an injected fault")
{
    ExperimentConfig cfg = nsc::cli::mini_config();
    const auto dir = fresh_dir("nsc_cli_verify");
    cfg.output = dir.string();

    std::ostringstream log;
    CHECK(nsc::cli::cmd_verify(cfg, 0, log) == nsc::cli::kOk);
    const std::string out = log.str();
    for (const char* name :
         {"nash reconstruction", "distance matrix", "partition of unity",
          "anti-divergence right inverse", "sym-gradient divergence identity",
          "coefficient recursion", "key cancellation", "shear exactness"})
        CHECK(contains(out, std::string("pass: ") + name));
    const std::string report = slurp(dir / "verify_report.json");
    CHECK(contains(report, "\"all_pass\": true"));

    std::ostringstream log2;
    CHECK(nsc::cli::cmd_verify(cfg, 1, log2) == nsc::cli::kAssertionFailure);
    CHECK(contains(log2.str(), "FAIL: nash reconstruction"));
    CHECK(contains(log2.str(), "failing check: nash reconstruction"));
    CHECK(contains(slurp(dir / "verify_report.json"), "\"all_pass\": false"));
}

TEST_CASE("cmd_build writes the construction artifacts")
{
    ExperimentConfig cfg = nsc::cli::mini_config();
    const auto dir = fresh_dir("nsc_cli_build");
    cfg.output = dir.string();

    std::ostringstream log;
    REQUIRE(nsc::cli::cmd_build(cfg, log) == nsc::cli::kOk);
    CHECK(std::filesystem::exists(dir / "config.json"));
    CHECK(std::filesystem::exists(dir / "u0_norms.json"));
    const std::string coeff = slurp(dir / "coefficients.json");
    CHECK(contains(coeff, "\"k_star\": 2"));
    const std::string norms = slurp(dir / "u0_norms.json");
    CHECK(contains(norms, "\"peak_band\": 8.0"));
    CHECK(contains(log.str(), "u0: sup"));
}

TEST_CASE("automatic stage count failure archives the chosen k_star")
{
    ExperimentConfig cfg;  // reference amplitudes
    cfg.k_star = 0;        // automatic: ratio 16 resolves to 9
    cfg.n = 64;            // far too coarse for the ladder that implies
    const auto dir = fresh_dir("nsc_cli_auto");
    cfg.output = dir.string();

    std::ostringstream log;
    CHECK(nsc::cli::cmd_run(cfg, log) == nsc::cli::kConfigError);
    CHECK(contains(log.str(), "grid resolution violates n >= 4 N_{k_star}"));
    CHECK(contains(log.str(), "k_star = 9"));
    const std::string scales = slurp(dir / "scales.json");
    CHECK(contains(scales, "\"k_star\": 9"));
    CHECK(contains(scales, "\"error\""));
}

TEST_CASE("cmd_run artifacts are byte-identical across reruns")
{
    ExperimentConfig cfg = nsc::cli::mini_config();
    cfg.K = 0.02;  // a short horizon keeps the double run affordable
    const auto dir = fresh_dir("nsc_cli_run");
    cfg.output = dir.string();

    std::ostringstream log1;
    REQUIRE(nsc::cli::cmd_run(cfg, log1) == nsc::cli::kOk);
    const std::string csv1 = slurp(dir / "series.csv");
    const std::string json1 = slurp(dir / "series.json");
    const std::string cfg1 = slurp(dir / "config.json");
    CHECK(contains(json1, "\"activation_time\""));
    CHECK(contains(csv1, "t,k,shell_amp,"));

    std::ostringstream log2;
    REQUIRE(nsc::cli::cmd_run(cfg, log2) == nsc::cli::kOk);
    CHECK(slurp(dir / "series.csv") == csv1);
    CHECK(slurp(dir / "series.json") == json1);
    CHECK(slurp(dir / "config.json") == cfg1);
}

TEST_CASE("cmd_report re-renders an archived series byte for byte")
{
    nsc::solver::CascadeSeries s;
    s.shell_centers = {1.0, 3.0};
    s.horizon = 0.5;
    s.activation_time = {0.25, 0.0};
    s.peak_amp = {0.5, 2.0};
    s.steps = 12;
    s.rejects = 1;
    for (int i = 0; i < 3; ++i) {
        nsc::solver::CascadeSample smp;
        smp.t = 0.1 * i;
        smp.shell_amp = {0.1 + i, 2.0 - i};
        smp.besov_inf = 0.3;
        smp.besov_one = 0.7;
        smp.energy = 1.0 / (1 + i);
        smp.enstrophy = 2.0;
        smp.grad_E = {0.5, 0.25};
        smp.w_weighted = {0.0, 0.0};
        smp.w_ratio = 0.1 * i;
        s.samples.push_back(smp);
    }
    const auto dir = fresh_dir("nsc_cli_report");
    {
        std::ofstream out(dir / "series.json", std::ios::binary);
        out << nsc::solver::series_summary_json(s);
    }
    std::ostringstream log;
    REQUIRE(nsc::cli::cmd_report((dir / "series.json").string(), "", log) ==
            nsc::cli::kOk);
    CHECK(slurp(dir / "series.csv") == nsc::solver::series_csv(s));

    // malformed input is a runtime failure, not a crash
    {
        std::ofstream out(dir / "broken.json", std::ios::binary);
        out << "{\"schema_version\": 99}";
    }
    std::ostringstream log2;
    CHECK(nsc::cli::cmd_report((dir / "broken.json").string(), "", log2) ==
          nsc::cli::kNumericalFailure);
    CHECK(contains(log2.str(), "schema"));
}
