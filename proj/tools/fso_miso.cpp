// SPDX-License-Identifier: Apache-2.0
//
// fso-miso: error-rate simulator for free-space optical MISO links with detector arrays
// Copyright (C) 2026 The fso-miso authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// fso-miso: command-line front end.
//
//   fso-miso sweep --config <file> --out <csv>
//   fso-miso optimize --config <file> --out <csv> [--synthetic]
//   fso-miso validate [--quick] [--tolerance-scale <x>]
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 validation failure.

#include "fso/config.hpp"
#include "fso/errors.hpp"
#include "fso/optimizer.hpp"
#include "fso/sweep.hpp"
#include "fso/validation.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace
{
    constexpr int kOk = 0;
    constexpr int kConfigError = 1;
    constexpr int kIoError = 2;
    constexpr int kValidationFailed = 3;

    constexpr double kSyntheticMinimum = 0.3;

    struct Overrides
    {
        std::optional<std::uint64_t> seed;
        std::optional<std::uint64_t> trials;
        std::optional<unsigned> workers;

        void apply(fso::ScenarioConfig& c) const
        {
            if (seed)
                c.seed = *seed;
            if (trials)
                c.trials = *trials;
            if (workers)
                c.workers = *workers;
        }
    };

    struct IoError
    {
        std::string message;
    };

    // Output goes to a buffer first so a failed run never leaves a partial file.
    void write_file(const std::string& path, const std::string& content)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError{"cannot open '" + path + "' for writing"};
        out << content;
        out.close();
        if (!out)
            throw IoError{"failed writing '" + path + "'"};
    }

    void check_writable(const std::string& path)
    {
        std::ofstream probe(path, std::ios::binary | std::ios::app);
        if (!probe)
            throw IoError{"cannot open '" + path + "' for writing"};
    }

    int run_sweep_cmd(const std::string& config_path, const std::string& out_path, const Overrides& ov)
    {
        const fso::RunConfig run = fso::load_config(config_path);
        if (!run.sweep)
            throw fso::ConfigError(config_path + ": no [sweep] section");
        fso::SweepSpec spec = *run.sweep;
        ov.apply(spec.base);
        spec.base.validate();
        check_writable(out_path);
        std::ostringstream csv;
        fso::run_sweep(spec, csv);
        write_file(out_path, csv.str());
        return kOk;
    }

    int run_optimize_cmd(const std::string& config_path, const std::string& out_path, bool synthetic,
                         const Overrides& ov)
    {
        const fso::RunConfig run = fso::load_config(config_path);
        if (!run.optimize)
            throw fso::ConfigError(config_path + ": no [ga] section");
        fso::OptimizeSpec opt = *run.optimize;
        ov.apply(opt.base);
        if (ov.seed)
            opt.ga.seed = *ov.seed;
        opt.base.validate();
        check_writable(out_path);

        fso::Objective objective;
        if (synthetic) {
            if (!(opt.ga.rho_min < kSyntheticMinimum && kSyntheticMinimum < opt.ga.rho_max))
                throw fso::ConfigError("synthetic objective needs 0.3 inside (rho_min, rho_max)");
            objective = [](double rho) { return (rho - kSyntheticMinimum) * (rho - kSyntheticMinimum); };
        } else {
            objective = fso::make_radius_objective(opt.base, opt.reference_radius);
        }
        const fso::GaResult result = fso::optimize_beam_radius(objective, opt.ga);

        std::ostringstream csv;
        csv << "generation,best_rho,best_pe,mean_pe\n";
        for (const auto& r : result.history)
            csv << r.generation << ',' << fso::format_double(r.best_rho) << ',' << fso::format_double(r.best_pe)
                << ',' << fso::format_double(r.mean_pe) << '\n';
        write_file(out_path, csv.str());
        std::cout << "rho_star,pe_star\n"
                  << fso::format_double(result.rho_star) << ',' << fso::format_double(result.pe_star) << '\n';
        return kOk;
    }

    int run_validate_cmd(bool quick, double tolerance_scale, const Overrides& ov)
    {
        fso::ValidationOptions options;
        options.quick = quick;
        options.tolerance_scale = tolerance_scale;
        if (ov.seed)
            options.seed = *ov.seed;
        if (ov.workers)
            options.workers = *ov.workers;
        const auto results = fso::run_validation(options);
        return fso::print_report(results, std::cout) ? kOk : kValidationFailed;
    }
}

int main(int argc, char** argv)
{
    CLI::App app{"Error-rate simulator for FSO MISO links with detector arrays"};
    app.require_subcommand(1);

    Overrides ov;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    unsigned workers = 0;
    auto add_overrides = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Override the configured master seed");
        cmd->add_option("--trials", trials, "Override the configured trial count")->check(CLI::PositiveNumber);
        cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
    };

    std::string config_path;
    std::string out_path;
    bool synthetic = false;
    bool quick = false;
    double tolerance_scale = 1.0;

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    sweep->add_option("--config", config_path, "Configuration file")->required();
    sweep->add_option("--out", out_path, "Output CSV")->required();
    add_overrides(sweep);

    auto* optimize = app.add_subcommand("optimize", "Optimise the beam radius with a genetic algorithm");
    optimize->add_option("--config", config_path, "Configuration file")->required();
    optimize->add_option("--out", out_path, "Per-generation history CSV")->required();
    optimize->add_flag("--synthetic", synthetic, "Use the objective (rho - 0.3)^2 instead of the simulator");
    add_overrides(optimize);

    auto* validate = app.add_subcommand("validate", "Run the built-in validation suite");
    validate->add_flag("--quick", quick, "Smaller sample sizes");
    validate->add_option("--tolerance-scale", tolerance_scale, "Multiply every acceptance margin")
        ->check(CLI::NonNegativeNumber);
    add_overrides(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    for (auto* cmd : {sweep, optimize, validate}) {
        if (cmd->count("--seed") > 0)
            ov.seed = seed;
        if (cmd->count("--trials") > 0)
            ov.trials = trials;
        if (cmd->count("--workers") > 0)
            ov.workers = workers;
    }

    try {
        if (sweep->parsed())
            return run_sweep_cmd(config_path, out_path, ov);
        if (optimize->parsed())
            return run_optimize_cmd(config_path, out_path, synthetic, ov);
        return run_validate_cmd(quick, tolerance_scale, ov);
    } catch (const IoError& e) {
        std::cerr << "fso-miso: " << e.message << '\n';
        return kIoError;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "fso-miso: " << e.what() << '\n';
        return kIoError;
    } catch (const fso::Error& e) {
        std::cerr << "fso-miso: " << e.what() << '\n';
        return kConfigError;
    }
}
