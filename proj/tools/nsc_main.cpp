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

// nsc: build, verify, and evolve the staged inverse-cascade initial data.
//
//   nsc verify [--config FILE]          run the invariant suites
//   nsc build  --config FILE            construct the data and its reports
//   nsc run    --config FILE            construct, evolve, and record
//   nsc report --input series.json      re-render an archived series to CSV
//
// Exit codes: 0 success, 2 configuration error, 3 invariant failure,
// 4 runtime or numerical error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nsc/cli/commands.hpp"
#include "nsc/cli/config.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string output_override;
    std::vector<double> snapshot_override;
    CLI::Option* snapshot_opt = nullptr;
    int threads = 1;
};

void add_common(CLI::App* sub, CommonFlags& flags, bool config_required)
{
    auto* c = sub->add_option("--config", flags.config_path,
                              "experiment configuration file");
    if (config_required) c->required();
    sub->add_option("--output", flags.output_override,
                    "override the artifact directory from the config");
    flags.snapshot_opt =
        sub->add_option("--snapshot-times", flags.snapshot_override,
                        "override the field dump times (comma separated)")
            ->delimiter(',');
    sub->add_option("--threads", flags.threads,
                    "worker count recorded for the run; execution is currently "
                    "sequential, so any value yields identical artifacts")
        ->check(CLI::PositiveNumber);
}

// Loads the config (or the built-in reference when none is given) and
// applies the command-line overrides.  Throws ConfigurationError.
nsc::cli::ExperimentConfig load_config(const CommonFlags& flags)
{
    nsc::cli::ExperimentConfig cfg = flags.config_path.empty()
                                         ? nsc::cli::reference_config()
                                         : nsc::cli::parse_config_file(flags.config_path);
    if (!flags.output_override.empty()) cfg.output = flags.output_override;
    if (flags.snapshot_opt && flags.snapshot_opt->count() > 0)
        cfg.snapshot_times = flags.snapshot_override;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"staged inverse-cascade laboratory"};
    app.require_subcommand(1);

    CommonFlags verify_flags, build_flags, run_flags;
    int fault = 0;

    CLI::App* verify = app.add_subcommand(
        "verify", "run the invariant suites and write a pass/fail report");
    add_common(verify, verify_flags, false);
    verify->add_option("--inject-fault", fault,
                       "test fixture: corrupt one decomposition coefficient "
                       "so the suite must fail")
        ->group("");

    CLI::App* build = app.add_subcommand(
        "build", "construct the initial data and write the norm reports");
    add_common(build, build_flags, true);

    CLI::App* run = app.add_subcommand(
        "run", "construct the data, evolve it, and record the cascade series");
    add_common(run, run_flags, true);

    std::string report_in, report_out;
    CLI::App* report = app.add_subcommand(
        "report", "re-render an archived series JSON document to CSV");
    report->add_option("--input", report_in, "series JSON document")->required();
    report->add_option("--output", report_out,
                       "CSV path (default: input with the extension swapped)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nsc::cli::kConfigError;
    }

    try {
        if (verify->parsed())
            return nsc::cli::cmd_verify(load_config(verify_flags), fault, std::cout);
        if (build->parsed())
            return nsc::cli::cmd_build(load_config(build_flags), std::cout);
        if (run->parsed())
            return nsc::cli::cmd_run(load_config(run_flags), std::cout);
        if (report->parsed())
            return nsc::cli::cmd_report(report_in, report_out, std::cout);
    } catch (const nsc::construction::ConfigurationError& e) {
        std::cout << "error: " << e.what() << "\n";
        return nsc::cli::kConfigError;
    } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << "\n";
        return nsc::cli::kNumericalFailure;
    }
    return nsc::cli::kConfigError;
}
