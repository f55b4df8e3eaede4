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

#include "fso/optimizer.hpp"

#include "fso/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fso
{
    namespace
    {
        constexpr double kBlendAlpha = 0.5;

        double evaluate(const Objective& objective, double rho)
        {
            const double value = objective(rho);
            if (!std::isfinite(value))
                throw ObjectiveError("objective returned a non-finite value at rho = " + std::to_string(rho));
            return value;
        }

        const Individual& tournament(const std::vector<Individual>& population, int size, RandomStream& rng)
        {
            const auto n = population.size();
            const Individual* best = nullptr;
            for (int k = 0; k < size; ++k) {
                const auto& pick = population[std::min(n - 1, static_cast<std::size_t>(rng.uniform() * n))];
                if (best == nullptr || pick.fitness < best->fitness)
                    best = &pick;
            }
            return *best;
        }

        std::vector<Individual> ranked(std::vector<Individual> population)
        {
            std::stable_sort(population.begin(), population.end(),
                             [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
            return population;
        }

        GenerationRecord record(int generation, const std::vector<Individual>& population)
        {
            GenerationRecord r;
            r.generation = generation;
            const auto best = std::min_element(population.begin(), population.end(),
                                               [](const auto& a, const auto& b) { return a.fitness < b.fitness; });
            r.best_rho = best->rho;
            r.best_pe = best->fitness;
            double sum = 0.0;
            for (const auto& ind : population)
                sum += ind.fitness;
            r.mean_pe = sum / static_cast<double>(population.size());
            return r;
        }
    }

    void GaConfig::validate() const
    {
        if (population_size < 4)
            throw InvalidParameter("population size must be at least 4");
        if (generations < 1)
            throw InvalidParameter("generations must be at least 1");
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0) || !(mutation_rate >= 0.0 && mutation_rate <= 1.0))
            throw InvalidParameter("crossover and mutation rates must lie in [0, 1]");
        if (!(mutation_scale >= 0.0))
            throw InvalidParameter("mutation scale must be non-negative");
        if (elitism_count < 0 || elitism_count > population_size)
            throw InvalidParameter("elitism count must lie in [0, population size]");
        if (tournament_size < 1)
            throw InvalidParameter("tournament size must be at least 1");
        if (!(rho_min < rho_max) || !(rho_min > 0.0))
            throw InvalidParameter("radius bounds must satisfy 0 < rho_min < rho_max");
    }

    std::vector<Individual> ga_generation(const std::vector<Individual>& population, const GaConfig& ga,
                                          RandomStream& rng, const Objective& objective)
    {
        const auto sorted = ranked(population);
        const std::size_t size = population.size();
        const std::size_t elites = std::min(size, static_cast<std::size_t>(ga.elitism_count));
        const double range = ga.rho_max - ga.rho_min;

        std::vector<Individual> next(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(elites));
        while (next.size() < size) {
            const double p1 = tournament(sorted, ga.tournament_size, rng).rho;
            const double p2 = tournament(sorted, ga.tournament_size, rng).rho;
            double children[2] = {p1, p2};
            if (rng.uniform() < ga.crossover_rate) {
                const double lo = std::min(p1, p2);
                const double d = std::abs(p1 - p2);
                for (double& child : children)
                    child = lo - kBlendAlpha * d + rng.uniform() * d * (1.0 + 2.0 * kBlendAlpha);
            }
            for (double& child : children) {
                if (rng.uniform() < ga.mutation_rate)
                    child += ga.mutation_scale * range * rng.normal();
                child = std::clamp(child, ga.rho_min, ga.rho_max);
            }
            for (double child : children) {
                if (next.size() == size)
                    break;
                next.push_back({child, evaluate(objective, child)});
            }
        }
        return next;
    }

    GaResult optimize_beam_radius(const Objective& objective, const GaConfig& ga)
    {
        ga.validate();
        RandomStream rng(ga.seed, 0, StreamRole::Genetic);
        std::vector<Individual> population(static_cast<std::size_t>(ga.population_size));
        for (auto& ind : population) {
            ind.rho = ga.rho_min + (ga.rho_max - ga.rho_min) * rng.uniform();
            ind.fitness = evaluate(objective, ind.rho);
        }

        GaResult result;
        Individual best = ranked(population).front();
        for (int g = 1; g <= ga.generations; ++g) {
            population = ga_generation(population, ga, rng, objective);
            const GenerationRecord r = record(g, population);
            if (r.best_pe < best.fitness)
                best = {r.best_rho, r.best_pe};
            result.history.push_back(r);
        }
        result.rho_star = best.rho;
        result.pe_star = best.fitness;
        return result;
    }

    Objective make_radius_objective(const ScenarioConfig& base, double reference_radius)
    {
        ScenarioConfig config = base;
        config.reference_radius = reference_radius;
        config.validate();
        return [config](double rho) {
            ScenarioConfig c = config;
            c.beam_radius = rho;
            return unconditional_pe(c).estimate;
        };
    }
}
