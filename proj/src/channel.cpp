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

#include "fso/channel.hpp"

#include "fso/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace fso
{
    std::vector<double> sample_fading(int beams, const FadingModel& fading, RandomStream& rng)
    {
        if (beams < 1)
            throw InvalidParameter("need at least one beam");
        if (!(fading.mean_intensity > 0.0))
            throw InvalidParameter("fading mean must be positive");
        std::vector<double> alpha(static_cast<std::size_t>(beams));
        for (auto& a : alpha)
            a = rng.exponential(fading.mean_intensity);
        return alpha;
    }

    std::vector<double> allocate_power(std::span<const double> intensities, double total_power)
    {
        double sum = 0.0;
        for (double a : intensities) {
            if (a < 0.0 || !std::isfinite(a))
                throw InvalidParameter("channel intensities must be finite and non-negative");
            sum += a;
        }
        if (!(sum > 0.0))
            throw DegenerateChannel("all channel intensities are zero");
        std::vector<double> beta(intensities.size());
        for (std::size_t i = 0; i < beta.size(); ++i)
            beta[i] = total_power * (intensities[i] / sum);
        return beta;
    }

    std::vector<double> sample_phase_errors(int beams, const PhaseModel& model, RandomStream& rng)
    {
        std::vector<double> phi(static_cast<std::size_t>(beams), 0.0);
        switch (model.kind) {
        case PhaseKind::None:
            break;
        case PhaseKind::Gaussian:
            if (model.sigma < 0.0)
                throw InvalidParameter("phase error deviation must be non-negative");
            for (auto& p : phi)
                p = model.sigma * rng.normal();
            break;
        case PhaseKind::Uniform:
            for (auto& p : phi)
                p = std::numbers::pi * (2.0 * rng.uniform() - 1.0);
            break;
        }
        return phi;
    }

    ChannelDraw make_channel_draw(std::span<const double> intensities, std::vector<double> phases)
    {
        ChannelDraw draw;
        draw.fractions = allocate_power(intensities, 1.0);
        draw.magnitudes.resize(intensities.size());
        for (std::size_t i = 0; i < intensities.size(); ++i)
            draw.magnitudes[i] = std::sqrt(intensities[i]);
        if (phases.empty())
            phases.assign(intensities.size(), 0.0);
        if (phases.size() != intensities.size())
            throw InvalidParameter("phase vector length does not match beam count");
        draw.phases = std::move(phases);
        return draw;
    }

    double noise_sigma_from_snr(double snr_db, double reference_energy)
    {
        if (!(reference_energy > 0.0))
            throw InvalidParameter("reference energy must be positive");
        return reference_energy / std::pow(10.0, snr_db / 20.0);
    }

    double reference_energy(const DetectorArray& array, double radius, double peak_intensity, double gamma)
    {
        if (!(gamma > 0.0 && gamma <= 1.0))
            throw InvalidParameter("power split factor must lie in (0, 1], got " + std::to_string(gamma));
        const auto energies = cell_energies(array, {0.0, 0.0}, radius, peak_intensity);
        return gamma * std::accumulate(energies.begin(), energies.end(), 0.0);
    }

    double mean_square_effective_gain(int beams, double mean_intensity)
    {
        if (beams < 1)
            throw InvalidParameter("need at least one beam");
        return 2.0 * mean_intensity / (beams + 1.0);
    }
}
