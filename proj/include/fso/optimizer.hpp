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

#pragma once

#include "fso/rng.hpp"
#include "fso/simulation.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace fso
{
    struct GaConfig
    {
        int population_size = 40;
        int generations = 60;
        double crossover_rate = 0.9;
        double mutation_rate = 0.1;
        double mutation_scale = 0.05;  // fraction of the search range
        int elitism_count = 2;
        int tournament_size = 3;
        double rho_min = 0.02;  // mm
        double rho_max = 1.0;   // mm
        std::uint64_t seed = 1;

        /// Throws InvalidParameter.
        void validate() const;
    };

    struct Individual
    {
        double rho = 0.0;
        double fitness = 0.0;
    };

    struct GenerationRecord
    {
        int generation = 0;
        double best_rho = 0.0;
        double best_pe = 0.0;
        double mean_pe = 0.0;
    };

    struct GaResult
    {
        double rho_star = 0.0;
        double pe_star = 0.0;
        std::vector<GenerationRecord> history;  // one row per generation
    };

    using Objective = std::function<double(double)>;

    /// One generation: tournament selection, blend crossover (alpha = 0.5),
    /// Gaussian mutation, clamping, and the best elitism_count carried over
    /// unchanged. New individuals are evaluated with the objective.
    std::vector<Individual> ga_generation(const std::vector<Individual>& population, const GaConfig& ga,
                                          RandomStream& rng, const Objective& objective);

    /// Minimises the objective over [rho_min, rho_max]. Throws ObjectiveError
    /// if the objective returns a non-finite value.
    GaResult optimize_beam_radius(const Objective& objective, const GaConfig& ga);

    /// Unconditional error probability as a function of the beam radius with
    /// every other parameter of `base` held fixed. The coherence radius follows
    /// the beam radius unless `base` pins it, and the SNR reference energy is
    /// evaluated at `reference_radius`. Every evaluation reuses base.seed.
    Objective make_radius_objective(const ScenarioConfig& base, double reference_radius = 0.2);
}
