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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fso/config.hpp"
#include "fso/errors.hpp"
#include "fso/sweep.hpp"

#include <sstream>
#include <string>

using namespace fso;

namespace
{
    RunConfig parse(const std::string& text)
    {
        std::istringstream in(text);
        return parse_config(in);
    }

    std::string error_of(const std::string& text)
    {
        try {
            parse(text);
        } catch (const ConfigError& e) {
            return e.what();
        }
        return {};
    }

    const char* kFull = R"(# Fig. 6 style sweep
[array]
side = 2.0
rows = 4
cols = 4
beam_radius = 0.2   ; mm
gamma = 0.7
lens_u = 0, 4, -4

[channel]
beams = 3
fading_mean = 0.5
sigma_phi = 0.5
snr_db = 10

[pointing]
sigma_x = 0.05
coherence_radius = 0.25

[ppm]
order = 8

[sweep]
variable = sigma_phi
values = 0, 0.5, 1
combiners = mrc, egc
scenarios = single_full, single_no_alignment
trials = 300
seed = 9
workers = 2

[ga]
population = 12
generations = 7
rho_min = 0.05
rho_max = 0.9
scenario = single_pointing_error
combiner = egc
reference_radius = 0.2
seed = 5
)";
}

TEST_CASE("full configuration")
{
    const auto run = parse(kFull);
    const auto& b = run.base;
    CHECK(b.array_side == 2.0);
    CHECK(b.rows == 4);
    CHECK(b.gamma == 0.7);
    CHECK(b.lens_u == std::vector<double>{0.0, 4.0, -4.0});
    CHECK(b.beams == 3);
    CHECK(b.phase.kind == PhaseKind::Gaussian);
    CHECK(b.phase.sigma == 0.5);
    CHECK(b.sigma_x == 0.05);
    CHECK(b.coherence_radius.value() == 0.25);
    CHECK(b.ppm_order == 8);

    REQUIRE(run.sweep);
    CHECK(run.sweep->variable == SweepVariable::SigmaPhi);
    CHECK(run.sweep->values == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(run.sweep->combiners == std::vector<Combiner>{Combiner::MRC, Combiner::EGC});
    CHECK(run.sweep->scenarios == std::vector<Scenario>{Scenario::SingleFull, Scenario::SingleNoAlignment});
    CHECK(run.sweep->base.trials == 300);
    CHECK(run.sweep->base.seed == 9);
    CHECK(run.sweep->base.workers == 2);

    REQUIRE(run.optimize);
    CHECK(run.optimize->ga.population_size == 12);
    CHECK(run.optimize->ga.generations == 7);
    CHECK(run.optimize->ga.seed == 5);
    CHECK(run.optimize->base.scenario == Scenario::SinglePointingError);
    CHECK(run.optimize->base.combiner == Combiner::EGC);
    CHECK(run.optimize->reference_radius == 0.2);
}

TEST_CASE("errors carry the line number")
{
    CHECK(error_of("[array]\nside = 2\nsied = 3\n").rfind("line 3:", 0) == 0);
    CHECK(error_of("[array]\nside = 2\n[bogus]\n").rfind("line 3:", 0) == 0);
    CHECK(error_of("[array]\nside = two\n").rfind("line 2:", 0) == 0);
    CHECK(error_of("[array]\nside = 2\nside = 3\n").rfind("line 3:", 0) == 0);
    CHECK(error_of("side = 2\n").rfind("line 1:", 0) == 0);
    CHECK(error_of("[array]\nside\n").rfind("line 2:", 0) == 0);
    CHECK(error_of("[ppm]\norder = 1\n").rfind("line 2:", 0) == 0);
    CHECK(error_of("[sweep]\nvariable = M\nvalues = 16, 15\n").rfind("line 3:", 0) == 0);
    CHECK(error_of("[sweep]\nvariable = depth\nvalues = 1\n").rfind("line 2:", 0) == 0);
    CHECK(error_of("[sweep]\nvariable = snr_db\nvalues = 1\nscenarios = single\n").rfind("line 4:", 0) == 0);
    CHECK(error_of("[channel]\nphase = uniform\nsigma_phi = 0.3\n").find("line ") == 0);
    CHECK(error_of("[pointing]\nsigma_w = 0.1\n").rfind("line 2:", 0) == 0);
    CHECK(error_of("[array]\ngamma = 1.5\n").find("gamma") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/file.ini"), ConfigError);
}

TEST_CASE("defaults without optional sections")
{
    const auto run = parse("[channel]\nbeams = 2\n");
    CHECK(run.base.beams == 2);
    CHECK(run.base.phase.kind == PhaseKind::None);
    CHECK(!run.sweep);
    CHECK(!run.optimize);
}

TEST_CASE("apply sweep values")
{
    ScenarioConfig b;
    CHECK(apply_sweep_value(b, SweepVariable::SnrDb, 7.0).snr_db == 7.0);
    CHECK(apply_sweep_value(b, SweepVariable::SigmaPhi, 0.3).phase.sigma == 0.3);
    CHECK(apply_sweep_value(b, SweepVariable::SigmaX, 0.1).sigma_x == 0.1);
    const auto r = apply_sweep_value(b, SweepVariable::Rho, 0.4);
    CHECK(r.beam_radius == 0.4);
    CHECK(r.reference_radius.value() == 0.2);
    const auto m = apply_sweep_value(b, SweepVariable::CellCount, 64.0);
    CHECK(m.rows == 8);
    CHECK(m.cols == 8);
    CHECK(apply_sweep_value(b, SweepVariable::BeamCount, 7.0).beams == 7);
    CHECK_THROWS_AS(apply_sweep_value(b, SweepVariable::CellCount, 15.0), ConfigError);
    CHECK_THROWS_AS(apply_sweep_value(b, SweepVariable::BeamCount, 2.5), ConfigError);
    CHECK_THROWS_AS(apply_sweep_value(b, SweepVariable::Rho, -0.1), ConfigError);
    for (auto v : {SweepVariable::SnrDb, SweepVariable::SigmaPhi, SweepVariable::SigmaX, SweepVariable::Rho,
                   SweepVariable::CellCount, SweepVariable::BeamCount})
        CHECK(parse_sweep_variable(to_string(v)) == v);
}

TEST_CASE("number formatting")
{
    CHECK(format_double(3.0) == "3");
    CHECK(format_double(-2.0) == "-2");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(std::stod(format_double(0.123456789012345678)) == 0.123456789012345678);
}

TEST_CASE("sweep CSV")
{
    SweepSpec spec;
    spec.base.trials = 200;
    spec.base.seed = 3;
    spec.values = {10.0};
    spec.scenarios = {Scenario::SinglePerfect, Scenario::MultiArray};
    std::ostringstream a;
    run_sweep(spec, a);
    std::istringstream lines(a.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == kSweepHeader);
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.rfind("10,", 0) == 0);
        CHECK(line.substr(line.size() - 6) == ",200,3");
    }
    CHECK(rows == 4);

    std::ostringstream b;
    spec.base.workers = 3;
    run_sweep(spec, b);
    CHECK(a.str() == b.str());

    spec.values.clear();
    std::ostringstream c;
    CHECK_THROWS_AS(run_sweep(spec, c), ConfigError);
}
