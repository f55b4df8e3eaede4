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
#include "fso/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

using namespace fso;

namespace
{
    double bowl(double rho)
    {
        return (rho - 0.3) * (rho - 0.3);
    }

    GaConfig bowl_config(std::uint64_t seed)
    {
        GaConfig ga;
        ga.rho_min = 0.05;
        ga.rho_max = 1.0;
        ga.seed = seed;
        return ga;
    }

    std::vector<double> radii(std::vector<Individual> pop)
    {
        std::vector<double> r;
        for (const auto& i : pop)
            r.push_back(i.rho);
        std::sort(r.begin(), r.end());
        return r;
    }
}

TEST_CASE("quadratic bowl")
{
    const auto r = optimize_beam_radius(bowl, bowl_config(1));
    CHECK(std::abs(r.rho_star - 0.3) < 0.005);
    CHECK(r.pe_star == bowl(r.rho_star));
    CHECK(r.history.size() == 60);
}

TEST_CASE("thirty seeds all land within 2% of the minimiser")
{
    int hits = 0;
    for (std::uint64_t seed = 100; seed < 130; ++seed)
        hits += std::abs(optimize_beam_radius(bowl, bowl_config(seed)).rho_star - 0.3) < 0.02 * 0.3 ? 1 : 0;
    CHECK(hits == 30);
}

TEST_CASE("constant objective")
{
    auto ga = bowl_config(2);
    ga.generations = 5;
    const auto r = optimize_beam_radius([](double) { return 0.125; }, ga);
    CHECK(r.pe_star == 0.125);
    CHECK(r.rho_star >= ga.rho_min);
    CHECK(r.rho_star <= ga.rho_max);
}

TEST_CASE("generation fixed point without variation")
{
    auto ga = bowl_config(3);
    ga.population_size = 10;
    ga.crossover_rate = 0.0;
    ga.mutation_rate = 0.0;
    ga.elitism_count = 10;
    RandomStream rng(3, 0, StreamRole::Genetic);
    std::vector<Individual> pop;
    for (int k = 0; k < 10; ++k) {
        const double rho = 0.05 + 0.95 * rng.uniform();
        pop.push_back({rho, bowl(rho)});
    }
    const auto next = ga_generation(pop, ga, rng, bowl);
    CHECK(radii(next) == radii(pop));
}

TEST_CASE("offspring stay inside the bounds and elitism keeps the best")
{
    auto ga = bowl_config(4);
    ga.mutation_rate = 1.0;
    ga.mutation_scale = 2.0;
    RandomStream rng(4, 0, StreamRole::Genetic);
    std::vector<Individual> pop;
    for (int k = 0; k < ga.population_size; ++k) {
        const double rho = 0.05 + 0.95 * rng.uniform();
        pop.push_back({rho, bowl(rho)});
    }
    for (int g = 0; g < 20; ++g) {
        const double best_before =
            std::min_element(pop.begin(), pop.end(), [](auto& a, auto& b) { return a.fitness < b.fitness; })->fitness;
        pop = ga_generation(pop, ga, rng, bowl);
        REQUIRE(pop.size() == static_cast<std::size_t>(ga.population_size));
        for (const auto& i : pop) {
            CHECK(i.rho >= ga.rho_min);
            CHECK(i.rho <= ga.rho_max);
        }
        const double best_after =
            std::min_element(pop.begin(), pop.end(), [](auto& a, auto& b) { return a.fitness < b.fitness; })->fitness;
        CHECK(best_after <= best_before);
    }
}

TEST_CASE("history is non-increasing and runs are reproducible")
{
    auto ga = bowl_config(5);
    auto noisy = [](double rho) { return bowl(rho) + 0.01 * std::sin(40.0 * rho); };
    const auto a = optimize_beam_radius(noisy, ga);
    const auto b = optimize_beam_radius(noisy, ga);
    CHECK(a.rho_star == b.rho_star);
    CHECK(a.pe_star == b.pe_star);
    for (std::size_t g = 1; g < a.history.size(); ++g)
        CHECK(a.history[g].best_pe <= a.history[g - 1].best_pe);
    CHECK(a.history.front().generation == 1);
    CHECK(a.history.back().generation == ga.generations);
}

TEST_CASE("non-finite objective and invalid settings")
{
    CHECK_THROWS_AS(optimize_beam_radius([](double) { return std::numeric_limits<double>::quiet_NaN(); },
                                         bowl_config(6)),
                    ObjectiveError);
    CHECK_THROWS_AS(optimize_beam_radius([](double r) { return r > 0.5 ? std::numeric_limits<double>::infinity() : r; }, bowl_config(6)),
                    ObjectiveError);
    auto ga = bowl_config(7);
    ga.rho_min = 1.0;
    CHECK_THROWS_AS(optimize_beam_radius(bowl, ga), InvalidParameter);
    ga = bowl_config(7);
    ga.population_size = 3;
    CHECK_THROWS_AS(optimize_beam_radius(bowl, ga), InvalidParameter);
    ga = bowl_config(7);
    ga.elitism_count = 41;
    CHECK_THROWS_AS(optimize_beam_radius(bowl, ga), InvalidParameter);
    ga = bowl_config(7);
    ga.mutation_rate = 1.5;
    CHECK_THROWS_AS(optimize_beam_radius(bowl, ga), InvalidParameter);
}

TEST_CASE("radius objective is a deterministic surrogate")
{
    ScenarioConfig cfg;
    cfg.scenario = Scenario::SinglePointingError;
    cfg.combiner = Combiner::MRC;
    cfg.beams = 3;
    cfg.sigma_x = 0.05;
    cfg.snr_db = 3.0;
    cfg.trials = 500;
    const auto f = make_radius_objective(cfg);
    CHECK(f(0.15) == f(0.15));
    CHECK(f(0.15) != f(0.3));
    const double v = f(0.25);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
}
