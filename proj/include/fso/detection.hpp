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
#include "fso/rng.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace fso
{
    /// Order of the pulse-position modulation, a power of two >= 2.
    class PpmOrder
    {
    public:
        explicit PpmOrder(int order);
        int value() const { return order_; }

    private:
        int order_;
    };

    enum class Combiner
    {
        MRC,
        EGC,
    };

    enum class Scenario
    {
        MultiArray,
        SingleNoAlignment,
        SinglePerfect,
        SinglePhaseError,
        SinglePointingError,
        SingleFull,
        AsymptoticUniformPhase,
    };

    std::string_view to_string(Combiner c);
    std::string_view to_string(Scenario s);
    Combiner parse_combiner(std::string_view text);
    Scenario parse_scenario(std::string_view text);

    /// Per-beam, per-cell captured energies x_i^(m) (beams x cells, row-major).
    class BeamEnergies
    {
    public:
        BeamEnergies() = default;
        BeamEnergies(std::size_t beams, std::size_t cells) : beams_(beams), cells_(cells), values_(beams * cells) {}

        std::size_t beams() const { return beams_; }
        std::size_t cells() const { return cells_; }
        double& at(std::size_t i, std::size_t m) { return values_[i * cells_ + m]; }
        double at(std::size_t i, std::size_t m) const { return values_[i * cells_ + m]; }
        std::span<const double> beam(std::size_t i) const { return {values_.data() + i * cells_, cells_}; }
        std::span<double> beam(std::size_t i) { return {values_.data() + i * cells_, cells_}; }

    private:
        std::size_t beams_ = 0;
        std::size_t cells_ = 0;
        std::vector<double> values_;
    };

    /// Gaussian tail probability P(Z > x).
    double q_function(double x);

    /// 1 - (1 - Q(argument))^(order - 1): symbol error probability of M-PPM when a
    /// single signal-vs-noise slot comparison succeeds with probability Q(-argument).
    double pe_from_argument(double argument, PpmOrder order);

    /// N separate arrays, one beam each.
    double pe_multi_array(Combiner combiner, const ChannelDraw& draw, const BeamEnergies& energies,
                          double sigma, PpmOrder order);

    /// One array, beams landing without overlap. MRC matches the multi-array
    /// receiver; EGC sums M cells of noise only.
    double pe_single_no_alignment(Combiner combiner, const ChannelDraw& draw, const BeamEnergies& energies,
                                  double sigma, PpmOrder order);

    /// b_m = sum_{i,l} x_{i,l}^(m) ||h_i|| ||h_l|| sqrt(beta_i beta_l) e^{j(phi_i - phi_l)}
    /// for every cell. The sum is a Hermitian form, so only the real part is
    /// kept; throws InconsistentInput if the tensor or the result is not Hermitian.
    std::vector<double> hermitian_quadratic_sum(const EnergyTensor& tensor, std::span<const double> magnitudes,
                                                std::span<const double> fractions, std::span<const double> phases);

    /// Co-centred beams, perfect phase synchronisation (draw phases ignored).
    double pe_single_perfect(Combiner combiner, const EnergyTensor& tensor, const ChannelDraw& draw, double sigma,
                             PpmOrder order);

    /// Co-centred beams with the draw's residual phases.
    double pe_single_phase(Combiner combiner, const EnergyTensor& tensor, const ChannelDraw& draw, double sigma,
                           PpmOrder order);

    /// Inputs for the pointing-error mixtures: the overlap tensor of co-centred
    /// beams plus, for every beam, the energies it deposits once it has left
    /// the coherence disc.
    struct AlignmentInputs
    {
        const EnergyTensor& tensor;
        const BeamEnergies& escaped_energies;
    };

    /// Binomial mixture over the number of escaped beams, perfect phase.
    /// Each beam escapes independently with probability
    /// escape_probability(rho_c, sigma_x); the conditional error for n0 escapes
    /// is the average over all escape sets of that size.
    double pe_single_pointing(Combiner combiner, const AlignmentInputs& inputs, const ChannelDraw& draw,
                              double sigma_x, double coherence_radius, double sigma, PpmOrder order);

    /// As pe_single_pointing with the draw's residual phases inside the aligned sum.
    double pe_single_full(Combiner combiner, const AlignmentInputs& inputs, const ChannelDraw& draw,
                          double sigma_x, double coherence_radius, double sigma, PpmOrder order);

    /// Conditional error probability when n0 beams with the given indices have
    /// escaped. Exposed for oracles and diagnostics.
    double pe_given_escape_set(Combiner combiner, const AlignmentInputs& inputs, const ChannelDraw& draw,
                               std::span<const bool> escaped, bool with_phase, double sigma, PpmOrder order);

    /// Large-N model with uniform phases: the combined peak intensity gain W is
    /// exponential and every cell sees W * x^(m).
    double pe_asymptotic(Combiner combiner, double gain, std::span<const double> cell_energies, double sigma,
                         PpmOrder order);

    /// Exponential draw with mean N * sigma_h^2.
    double sample_W(int beams, double mean_square_gain, RandomStream& rng);

    /// |sum_i ||h_i|| sqrt(beta_i) e^{j phi_i}|^2, the quantity the large-N model
    /// approximates as exponential.
    double coherent_intensity_gain(const ChannelDraw& draw);
}
