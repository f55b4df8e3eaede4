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

#include "fso/array_geometry.hpp"
#include "fso/channel.hpp"
#include "fso/detection.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace fso
{
    struct ScenarioConfig
    {
        Scenario scenario = Scenario::SinglePerfect;
        Combiner combiner = Combiner::MRC;
        int beams = 5;

        double array_side = 2.0;  // mm
        int rows = 4;
        int cols = 4;
        double beam_radius = 0.2;  // mm
        double peak_intensity = 1.0;
        double gamma = 1.0;

        double fading_mean = 0.5;
        PhaseModel phase;

        // Pointing: either sigma_x directly or the tracker pair (a, sigma_w),
        // from which the steady-state deviation is derived.
        double sigma_x = 0.0;
        std::optional<double> tracker_a;
        double tracker_sigma_w = 0.0;
        std::optional<double> coherence_radius;  // defaults to beam_radius

        int ppm_order = 8;
        double snr_db = 10.0;

        std::vector<double> lens_u;  // cycles/mm, empty = all zero
        std::vector<double> lens_v;

        // Radius at which the SNR reference energy is computed; defaults to beam_radius.
        std::optional<double> reference_radius;

        std::uint64_t trials = 100000;
        std::uint64_t seed = 1;
        unsigned workers = 1;  // 0 = hardware concurrency

        /// Throws ConfigError on invalid values or combinations.
        void validate() const;

        double effective_sigma_x() const;
        double effective_coherence_radius() const;
    };

    struct SimResult
    {
        double estimate = 0.0;
        double standard_error = 0.0;
        std::uint64_t trials = 0;
        std::uint64_t seed = 0;
        double wall_time = 0.0;  // seconds
    };

    /// Geometry, energies and noise level resolved once from a configuration.
    /// Every trial-level method is const and safe to call concurrently.
    class PreparedScenario
    {
    public:
        explicit PreparedScenario(ScenarioConfig config);

        const ScenarioConfig& config() const { return config_; }
        const DetectorArray& array() const { return array_; }
        double noise_sigma() const { return sigma_; }
        double reference_energy() const { return reference_energy_; }
        double escape_probability() const { return escape_probability_; }

        /// Energies of a centred beam without the power split (multi-array and
        /// no-alignment receivers).
        const std::vector<double>& centred_energies() const { return centred_; }
        const EnergyTensor& tensor() const { return tensor_; }

        ChannelDraw draw_channel(std::uint64_t trial) const;

        /// Energies of every beam placed at its conditional escaped position,
        /// scaled by gamma. Only meaningful for the pointing scenarios.
        BeamEnergies escaped_energies(std::uint64_t trial) const;

        /// Closed-form error probability for one channel draw. For the
        /// asymptotic scenario the exact coherent gain of the draw stands in for W.
        double conditional_pe(const ChannelDraw& draw, const BeamEnergies& escaped) const;

        /// Error probability of trial `trial`, drawing every random input from
        /// streams keyed by (seed, trial).
        double trial_pe(std::uint64_t trial) const;

    private:
        ScenarioConfig config_;
        DetectorArray array_;
        PpmOrder order_;
        std::vector<double> centred_;
        std::vector<double> centred_gamma_;
        BeamEnergies separate_;
        EnergyTensor tensor_;
        double reference_energy_ = 0.0;
        double sigma_ = 0.0;
        double escape_probability_ = 0.0;
    };

    /// Monte Carlo mean of the conditional error probability.
    SimResult unconditional_pe(const ScenarioConfig& config);

    /// Symbol-by-symbol simulation of the ML detector for a fixed channel draw.
    /// For the pointing scenarios the escape set is drawn per trial.
    SimResult symbol_level_oracle(const ScenarioConfig& config, const ChannelDraw& draw);

    /// Normal-approximation interval clipped to [0, 1].
    std::pair<double, double> confidence_interval(const SimResult& result, double level);

    /// Runs body(begin, end) over [0, count) split into contiguous chunks.
    void parallel_for(std::uint64_t count, unsigned workers,
                      const std::function<void(std::uint64_t, std::uint64_t)>& body);
}
