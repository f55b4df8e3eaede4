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
#include "fso/rng.hpp"

#include <span>
#include <vector>

namespace fso
{
    /// Negative-exponential intensity fading (strong turbulence).
    struct FadingModel
    {
        double mean_intensity = 0.5;
    };

    /// One realisation of the per-beam channel state.
    struct ChannelDraw
    {
        std::vector<double> magnitudes;  // ||h_i|| = sqrt(alpha_i)
        std::vector<double> fractions;   // beta_i, summing to the total power
        std::vector<double> phases;      // residual phase error, radians

        std::size_t size() const { return magnitudes.size(); }
    };

    enum class PhaseKind
    {
        None,
        Gaussian,
        Uniform,
    };

    struct PhaseModel
    {
        PhaseKind kind = PhaseKind::None;
        double sigma = 0.0;  // radians, Gaussian only

        static PhaseModel none() { return {}; }
        static PhaseModel gaussian(double sigma) { return {PhaseKind::Gaussian, sigma}; }
        static PhaseModel uniform() { return {PhaseKind::Uniform, 0.0}; }
    };

    /// i.i.d. exponential intensities alpha_i with the model's mean.
    std::vector<double> sample_fading(int beams, const FadingModel& fading, RandomStream& rng);

    /// beta_i = total_power * alpha_i / sum_j alpha_j. Throws DegenerateChannel
    /// when every intensity is zero.
    std::vector<double> allocate_power(std::span<const double> intensities, double total_power = 1.0);

    /// Draws exactly one normal (Gaussian) or one uniform (Uniform) per beam so
    /// that sweeping sigma reuses the same underlying variates.
    std::vector<double> sample_phase_errors(int beams, const PhaseModel& model, RandomStream& rng);

    /// Channel state from intensities and phases, with power allocated in
    /// proportion to intensity and unit total power.
    ChannelDraw make_channel_draw(std::span<const double> intensities, std::vector<double> phases);

    /// Noise standard deviation for an amplitude-referenced SNR: E_ref / 10^(snr_db / 20).
    double noise_sigma_from_snr(double snr_db, double reference_energy);

    /// Energy the whole array captures from one centred beam carrying all the
    /// power at unit fading, scaled by the data-channel share gamma.
    double reference_energy(const DetectorArray& array, double radius, double peak_intensity, double gamma);

    /// E[||h_i||^2 beta_i] for exponential fading with unit total power.
    /// alpha_i / sum(alpha) is Beta(1, N-1) and independent of the sum, which
    /// gives 2 * mean / (N + 1).
    double mean_square_effective_gain(int beams, double mean_intensity);
}
