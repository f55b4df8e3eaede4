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

#include "fso/errors.hpp"
#include "fso/simulation.hpp"

#include <cmath>
#include <cstdio>

using namespace fso;

namespace
{
    ScenarioConfig base(Scenario s, Combiner c)
    {
        ScenarioConfig cfg;
        cfg.scenario = s;
        cfg.combiner = c;
        cfg.beams = 3;
        cfg.trials = 2000;
        cfg.seed = 42;
        return cfg;
    }

    const Scenario kAll[] = {Scenario::MultiArray,          Scenario::SingleNoAlignment, Scenario::SinglePerfect,
                             Scenario::SinglePhaseError,    Scenario::SinglePointingError, Scenario::SingleFull,
                             Scenario::AsymptoticUniformPhase};
}

TEST_CASE("one trial reproduces the conditional closed form")
{
    for (Scenario s : kAll)
        for (Combiner c : {Combiner::MRC, Combiner::EGC}) {
            auto cfg = base(s, c);
            cfg.trials = 1;
            cfg.phase = PhaseModel::gaussian(0.0);
            cfg.sigma_x = 0.0;
            const PreparedScenario p(cfg);
            const double expect = s == Scenario::AsymptoticUniformPhase
                                      ? p.trial_pe(0)
                                      : p.conditional_pe(p.draw_channel(0), p.escaped_energies(0));
            const auto r = unconditional_pe(cfg);
            CHECK(r.estimate == expect);
            CHECK(r.standard_error == 0.0);
            CHECK(r.trials == 1);
            CHECK(r.seed == 42);
        }
}

TEST_CASE("worker count does not change the estimate")
{
    for (Scenario s : kAll) {
        auto cfg = base(s, Combiner::EGC);
        cfg.phase = PhaseModel::gaussian(0.5);
        cfg.sigma_x = 0.1;
        cfg.workers = 1;
        const auto r1 = unconditional_pe(cfg);
        cfg.workers = 3;
        const auto r3 = unconditional_pe(cfg);
        cfg.workers = 8;
        const auto r8 = unconditional_pe(cfg);
        CHECK(r1.estimate == r3.estimate);
        CHECK(r1.estimate == r8.estimate);
        CHECK(r1.standard_error == r3.standard_error);
        CHECK(r1.estimate >= 0.0);
        CHECK(r1.estimate <= 1.0);
    }
}

TEST_CASE("estimates are non-increasing in SNR with common random numbers")
{
    for (Scenario s : kAll) {
        auto cfg = base(s, Combiner::MRC);
        cfg.phase = PhaseModel::gaussian(0.5);
        cfg.sigma_x = 0.1;
        double prev = 1.0;
        for (double snr = 0.0; snr <= 20.0; snr += 2.5) {
            cfg.snr_db = snr;
            const double pe = unconditional_pe(cfg).estimate;
            CHECK(pe <= prev);
            prev = pe;
        }
    }
}

TEST_CASE("configuration errors")
{
    auto cfg = base(Scenario::SinglePerfect, Combiner::MRC);
    auto bad = cfg;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(unconditional_pe(bad), ConfigError);
    bad = cfg;
    bad.ppm_order = 6;
    CHECK_THROWS_AS(unconditional_pe(bad), ConfigError);
    bad = cfg;
    bad.lens_u = {0.0, 1.0};
    CHECK_THROWS_AS(unconditional_pe(bad), ConfigError);
    bad = cfg;
    bad.tracker_a = 0.5;
    bad.sigma_x = 0.1;
    CHECK_THROWS_AS(unconditional_pe(bad), ConfigError);
    bad = cfg;
    bad.tracker_a = 1.0;
    CHECK_THROWS_AS(unconditional_pe(bad), ConfigError);
    bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(unconditional_pe(bad), ConfigError);
    bad = cfg;
    bad.scenario = Scenario::SinglePointingError;
    bad.beams = 17;
    CHECK_THROWS_AS(unconditional_pe(bad), ConfigError);

    auto tracked = base(Scenario::SinglePointingError, Combiner::MRC);
    tracked.tracker_a = 0.5;
    tracked.tracker_sigma_w = 0.1;
    CHECK(tracked.effective_sigma_x() == doctest::Approx(0.1 / std::sqrt(0.75)));
    CHECK(tracked.effective_coherence_radius() == tracked.beam_radius);

    auto asym = base(Scenario::AsymptoticUniformPhase, Combiner::MRC);
    const PreparedScenario p(asym);
    CHECK_THROWS_AS(symbol_level_oracle(asym, p.draw_channel(0)), ConfigError);
}

TEST_CASE("noise level follows the SNR reference")
{
    auto cfg = base(Scenario::SinglePerfect, Combiner::MRC);
    cfg.snr_db = 20.0;
    cfg.gamma = 0.7;
    const PreparedScenario p(cfg);
    CHECK(p.noise_sigma() ==
          doctest::Approx(reference_energy(p.array(), 0.2, 1.0, 0.7) / 10.0 / 4.0).epsilon(1e-14));
    cfg.reference_radius = 0.2;
    cfg.beam_radius = 0.5;
    CHECK(PreparedScenario(cfg).noise_sigma() == doctest::Approx(p.noise_sigma()).epsilon(1e-14));
}

TEST_CASE("symbol-level oracle limits")
{
    auto cfg = base(Scenario::SinglePerfect, Combiner::MRC);
    cfg.snr_db = 200.0;
    cfg.trials = 10000;
    cfg.ppm_order = 8;
    const PreparedScenario p(cfg);
    CHECK(symbol_level_oracle(cfg, p.draw_channel(3)).estimate == 0.0);

    cfg.snr_db = 0.0;
    cfg.ppm_order = 2;
    cfg.trials = 100000;
    ChannelDraw silent;
    silent.magnitudes = {0.0, 0.0, 0.0};
    silent.fractions = {0.2, 0.3, 0.5};
    silent.phases = {0.0, 0.0, 0.0};
    for (Combiner c : {Combiner::MRC, Combiner::EGC}) {
        cfg.combiner = c;
        cfg.scenario = Scenario::MultiArray;
        const auto r = symbol_level_oracle(cfg, silent);
        CHECK(std::abs(r.estimate - 0.5) < 3.0 * r.standard_error);
    }
}

TEST_CASE("oracle against the no-alignment closed form, N = 2, M = 4, 4-PPM")
{
    for (Combiner c : {Combiner::MRC, Combiner::EGC}) {
        auto cfg = base(Scenario::SingleNoAlignment, c);
        cfg.beams = 2;
        cfg.rows = cfg.cols = 2;
        cfg.ppm_order = 4;
        cfg.snr_db = 0.0;
        cfg.trials = 1000000;
        const PreparedScenario p(cfg);
        const auto d = p.draw_channel(0);
        const double closed = p.conditional_pe(d, BeamEnergies{});
        const auto r = symbol_level_oracle(cfg, d);
        const double z = (r.estimate - closed) / r.standard_error;
        std::printf("4-PPM %s: closed form %.6f, oracle %.6f +- %.6f, signed gap %.2f SE\n",
                    std::string(to_string(c)).c_str(), closed, r.estimate, r.standard_error, z);
        // With four slots the three pairwise comparisons share the pulse-slot
        // noise and are positively associated, so the product form can only
        // overstate the error. The oracle must not exceed it by more than 3 SE.
        CHECK(z < 3.0);
    }
}

TEST_CASE("pointing oracle draws the escape set per trial")
{
    auto cfg = base(Scenario::SinglePointingError, Combiner::EGC);
    cfg.sigma_x = 0.15;
    cfg.ppm_order = 2;
    cfg.trials = 20000;
    const PreparedScenario p(cfg);
    const auto d = p.draw_channel(1);
    const auto r = symbol_level_oracle(cfg, d);
    CHECK(r.estimate > 0.0);
    CHECK(r.estimate < 0.5);
    cfg.workers = 4;
    CHECK(symbol_level_oracle(cfg, d).estimate == r.estimate);
}

TEST_CASE("confidence interval")
{
    SimResult r;
    r.estimate = 0.3;
    r.standard_error = 0.0;
    auto [lo, hi] = confidence_interval(r, 0.95);
    CHECK(lo == 0.3);
    CHECK(hi == 0.3);
    r.standard_error = 0.01;
    std::tie(lo, hi) = confidence_interval(r, 0.95);
    CHECK(hi - 0.3 == doctest::Approx(1.96 * 0.01).epsilon(1e-3));
    CHECK(0.3 - lo == doctest::Approx(1.96 * 0.01).epsilon(1e-3));
    r.estimate = 0.999;
    std::tie(lo, hi) = confidence_interval(r, 0.95);
    CHECK(hi == 1.0);
    CHECK_THROWS_AS(confidence_interval(r, 1.0), InvalidParameter);
}
