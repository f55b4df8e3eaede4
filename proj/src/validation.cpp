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

#include "fso/validation.hpp"

#include "fso/array_geometry.hpp"
#include "fso/channel.hpp"
#include "fso/detection.hpp"
#include "fso/pointing.hpp"
#include "fso/reference_quadrature.hpp"
#include "fso/rng.hpp"
#include "fso/simulation.hpp"
#include "fso/statistics.hpp"
#include "fso/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fso
{
    namespace
    {
        std::string fmt(double v)
        {
            return format_double(v);
        }

        CheckResult quadrature(const ValidationOptions& o)
        {
            RandomStream rng(o.seed, 0, StreamRole::Generic);
            const int instances = o.quick ? 4 : 12;
            double worst = 0.0;
            for (int k = 0; k < instances; ++k) {
                const double radius = 0.1 + 0.4 * rng.uniform();
                const double w = 0.1 + 0.9 * rng.uniform();
                const double h = 0.1 + 0.9 * rng.uniform();
                const double x0 = -1.0 + rng.uniform();
                const double y0 = -1.0 + rng.uniform();
                const Cell c{0, x0, x0 + w, y0, y0 + h};
                const Point center{-0.5 + rng.uniform(), -0.5 + rng.uniform()};
                const double du = -5.0 + 10.0 * rng.uniform();
                const double dv = -5.0 + 10.0 * rng.uniform();

                const double e = cell_energy(c, center, radius);
                const double e_ref = reference::cell_energy_bruteforce(c, center, radius, 1.0, 600);
                worst = std::max(worst, std::abs(e - e_ref) / std::abs(e_ref));
                const auto x = cross_energy(c, du, dv, radius);
                const auto x_ref = reference::cross_energy_bruteforce(c, du, dv, radius, 1.0, 1.0, 600);
                worst = std::max(worst, std::abs(x - x_ref) / std::abs(x_ref));
            }
            return {"quadrature", worst < 1e-6 * o.tolerance_scale,
                    "max relative error " + fmt(worst) + " over " + std::to_string(instances) + " cells"};
        }

        CheckResult oracle(const ValidationOptions& o, Scenario scenario, Combiner combiner)
        {
            ScenarioConfig c;
            c.scenario = scenario;
            c.combiner = combiner;
            c.beams = 2;
            c.rows = c.cols = 2;
            c.ppm_order = 2;
            c.snr_db = 0.0;
            c.phase = PhaseModel::gaussian(0.5);
            c.trials = o.quick ? 20000 : 200000;
            c.seed = o.seed;
            c.workers = o.workers;
            const PreparedScenario prepared(c);
            const ChannelDraw draw = prepared.draw_channel(0);
            const double closed = prepared.conditional_pe(draw, BeamEnergies{});
            const SimResult r = symbol_level_oracle(c, draw);
            const double gap = std::abs(r.estimate - closed);
            return {"oracle_" + std::string(to_string(scenario)) + "_" + std::string(to_string(combiner)),
                    gap < 3.0 * r.standard_error * o.tolerance_scale,
                    "closed form " + fmt(closed) + ", oracle " + fmt(r.estimate) + " +- " + fmt(r.standard_error)};
        }

        CheckResult tracker(const ValidationOptions& o)
        {
            const double a = 0.9;
            const double sw = 0.1;
            const long steps = 100000;
            const TrackerParams params = TrackerParams::diagonal(a, sw);
            RandomStream rng(o.seed, 1, StreamRole::Tracker);
            const double ss = steady_state_sigma(a, sw);
            TrackerState state;
            state.position = {ss * rng.normal(), ss * rng.normal()};
            double sum_sq = 0.0;
            for (long n = 0; n < steps; ++n) {
                state = step(state, params, rng, false);
                sum_sq += state.position.squaredNorm();
            }
            const double variance = sum_sq / (2.0 * steps);
            const double expected = ss * ss;
            const double rel = std::abs(variance - expected) / expected;
            return {"tracker_variance", rel < 0.02 * o.tolerance_scale,
                    "per-axis variance " + fmt(variance) + " vs " + fmt(expected)};
        }

        std::vector<CheckResult> escapes(const ValidationOptions& o)
        {
            const int beams = 5;
            const double rc = 0.2;
            const double sx = 0.15;
            const long draws = o.quick ? 20000 : 100000;
            const double p = escape_probability(rc, sx);
            std::vector<long> counts(beams + 1, 0);
            long escaped = 0;
            for (long t = 0; t < draws; ++t) {
                RandomStream rng(o.seed, static_cast<std::uint64_t>(t), StreamRole::Pointing);
                const auto state = sample_alignment(beams, rc, sx, rng);
                ++counts[state.escaped.size()];
                escaped += static_cast<long>(state.escaped.size());
            }
            const double trials = static_cast<double>(draws) * beams;
            const double freq = static_cast<double>(escaped) / trials;
            const double se = std::sqrt(p * (1.0 - p) / trials);
            const auto chi = chi_square_test(counts, n0_pmf(beams, p));
            return {
                {"escape_frequency", std::abs(freq - p) < 3.0 * se * o.tolerance_scale,
                 "frequency " + fmt(freq) + " vs " + fmt(p)},
                {"escape_count_chi_square", chi.p_value > std::min(1.0, 0.01 / o.tolerance_scale),
                 "chi2 " + fmt(chi.statistic) + " on " + std::to_string(chi.degrees_of_freedom) + " dof, p " +
                     fmt(chi.p_value)},
            };
        }

        CheckResult fading_ks(const ValidationOptions& o)
        {
            const std::size_t n = o.quick ? 20000 : 100000;
            RandomStream rng(o.seed, 2, StreamRole::Fading);
            std::vector<double> sample;
            sample.reserve(n);
            while (sample.size() < n)
                for (double a : sample_fading(10, {0.5}, rng))
                    sample.push_back(a);
            sample.resize(n);
            const double d = ks_statistic(sample, [](double x) { return 1.0 - std::exp(-x / 0.5); });
            const double p = ks_pvalue(d, n);
            return {"fading_ks", p > std::min(1.0, 0.01 / o.tolerance_scale),
                    "D " + fmt(d) + ", p " + fmt(p)};
        }

        CheckResult clt_ks(const ValidationOptions& o)
        {
            const int beams = 50;
            const std::size_t n = o.quick ? 2000 : 10000;
            std::vector<double> w(n);
            for (std::size_t t = 0; t < n; ++t) {
                RandomStream f(o.seed, t, StreamRole::Fading);
                RandomStream ph(o.seed, t, StreamRole::Phase);
                const auto alpha = sample_fading(beams, {0.5}, f);
                w[t] = coherent_intensity_gain(
                    make_channel_draw(alpha, sample_phase_errors(beams, PhaseModel::uniform(), ph)));
            }
            const double mean = beams * mean_square_effective_gain(beams, 0.5);
            const double d = ks_statistic(w, [mean](double x) { return 1.0 - std::exp(-x / mean); });
            const double p = ks_pvalue(d, n);
            return {"clt_exponential_ks", p > std::min(1.0, 0.01 / o.tolerance_scale),
                    "D " + fmt(d) + ", p " + fmt(p)};
        }
    }

    std::vector<CheckResult> run_validation(const ValidationOptions& options)
    {
        std::vector<CheckResult> out;
        out.push_back(quadrature(options));
        for (auto [s, c] : {std::pair{Scenario::MultiArray, Combiner::MRC}, {Scenario::MultiArray, Combiner::EGC},
                            {Scenario::SingleNoAlignment, Combiner::EGC}, {Scenario::SinglePerfect, Combiner::MRC},
                            {Scenario::SinglePhaseError, Combiner::EGC}})
            out.push_back(oracle(options, s, c));
        out.push_back(tracker(options));
        for (auto& r : escapes(options))
            out.push_back(std::move(r));
        out.push_back(fading_ks(options));
        out.push_back(clt_ks(options));
        return out;
    }

    bool print_report(const std::vector<CheckResult>& results, std::ostream& out)
    {
        bool all = true;
        for (const auto& r : results) {
            out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
            all = all && r.passed;
        }
        out << (all ? "all checks passed" : "validation failed") << '\n';
        return all;
    }
}
