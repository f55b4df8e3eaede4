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

#include "fso/detection.hpp"

#include "fso/errors.hpp"
#include "fso/pointing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>

namespace fso
{
    namespace
    {
        constexpr double kHermitianTolerance = 1e-9;
        constexpr int kMaxMixtureBeams = 16;

        void require_sigma(double sigma)
        {
            if (!(sigma > 0.0) || !std::isfinite(sigma))
                throw InvalidParameter("noise deviation must be positive, got " + std::to_string(sigma));
        }

        // Sufficient-statistic moments shared by every closed form: MRC uses the
        // sum of squared per-cell signals, EGC the plain sum over `cells` noisy outputs.
        struct SignalMoments
        {
            double sum = 0.0;
            double sum_sq = 0.0;
            std::size_t cells = 0;
        };

        double pe_from_moments(Combiner combiner, const SignalMoments& s, double sigma, PpmOrder order)
        {
            const double two_var = 2.0 * sigma * sigma;
            const double argument = combiner == Combiner::MRC
                                        ? std::sqrt(s.sum_sq) / std::sqrt(two_var)
                                        : s.sum / std::sqrt(two_var * static_cast<double>(s.cells));
            return pe_from_argument(argument, order);
        }

        SignalMoments separate_beam_moments(const ChannelDraw& draw, const BeamEnergies& energies)
        {
            if (energies.beams() != draw.size() || draw.fractions.size() != draw.size())
                throw InvalidParameter("beam count mismatch between channel draw and energies");
            SignalMoments s;
            for (std::size_t i = 0; i < energies.beams(); ++i) {
                const double gain = draw.magnitudes[i] * draw.magnitudes[i] * draw.fractions[i];
                for (std::size_t m = 0; m < energies.cells(); ++m) {
                    const double v = gain * energies.at(i, m);
                    s.sum += v;
                    s.sum_sq += v * v;
                }
            }
            return s;
        }

        void require_hermitian(const EnergyTensor& tensor)
        {
            double scale = 0.0;
            for (std::size_t m = 0; m < tensor.cells(); ++m)
                for (std::size_t i = 0; i < tensor.beams(); ++i)
                    scale = std::max(scale, std::abs(tensor.at(m, i, i)));
            if (tensor.hermitian_defect() > kHermitianTolerance * (1.0 + scale))
                throw InconsistentInput("energy tensor is not Hermitian in its beam indices");
        }

        // Hermitian form restricted to beams with include[i] == true. An empty
        // mask means every beam.
        std::vector<double> quadratic_form(const EnergyTensor& tensor, std::span<const double> magnitudes,
                                           std::span<const double> fractions, std::span<const double> phases,
                                           std::span<const bool> include)
        {
            const std::size_t n = tensor.beams();
            if (magnitudes.size() != n || fractions.size() != n || phases.size() != n)
                throw InvalidParameter("beam count mismatch between channel draw and energy tensor");

            std::vector<std::complex<double>> z(n);
            for (std::size_t i = 0; i < n; ++i) {
                const bool on = include.empty() || include[i];
                const double g = on ? magnitudes[i] * std::sqrt(fractions[i]) : 0.0;
                z[i] = {g * std::cos(phases[i]), g * std::sin(phases[i])};
            }

            std::vector<double> b(tensor.cells());
            for (std::size_t m = 0; m < tensor.cells(); ++m) {
                std::complex<double> acc = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (z[i] == 0.0)
                        continue;
                    std::complex<double> row = 0.0;
                    for (std::size_t l = 0; l < n; ++l)
                        row += tensor.at(m, i, l) * std::conj(z[l]);
                    acc += z[i] * row;
                }
                if (std::abs(acc.imag()) > kHermitianTolerance * (1.0 + std::abs(acc.real())))
                    throw InconsistentInput("Hermitian form has a non-negligible imaginary part");
                b[m] = acc.real();
            }
            return b;
        }

        double mixture(Combiner combiner, const AlignmentInputs& inputs, const ChannelDraw& draw, double sigma_x,
                       double coherence_radius, double sigma, PpmOrder order, bool with_phase)
        {
            require_sigma(sigma);
            require_hermitian(inputs.tensor);
            const int n = static_cast<int>(draw.size());
            if (n > kMaxMixtureBeams)
                throw InvalidParameter("pointing mixture supports at most " + std::to_string(kMaxMixtureBeams) +
                                       " beams");
            const double p = escape_probability(coherence_radius, sigma_x);

            std::unique_ptr<bool[]> mask(new bool[static_cast<std::size_t>(n)]);
            double total = 0.0;
            for (unsigned long subset = 0; subset < (1ul << n); ++subset) {
                int escaped = 0;
                for (int i = 0; i < n; ++i) {
                    mask[static_cast<std::size_t>(i)] = (subset >> i) & 1ul;
                    escaped += mask[static_cast<std::size_t>(i)] ? 1 : 0;
                }
                const double weight = std::pow(p, escaped) * std::pow(1.0 - p, n - escaped);
                if (weight == 0.0)
                    continue;
                total += weight * pe_given_escape_set(combiner, inputs, draw,
                                                      {mask.get(), static_cast<std::size_t>(n)}, with_phase,
                                                      sigma, order);
            }
            return total;
        }
    }

    PpmOrder::PpmOrder(int order) : order_(order)
    {
        if (order < 2 || (order & (order - 1)) != 0)
            throw InvalidParameter("PPM order must be a power of two >= 2, got " + std::to_string(order));
    }

    std::string_view to_string(Combiner c)
    {
        return c == Combiner::MRC ? "MRC" : "EGC";
    }

    std::string_view to_string(Scenario s)
    {
        switch (s) {
        case Scenario::MultiArray:
            return "multi_array";
        case Scenario::SingleNoAlignment:
            return "single_no_alignment";
        case Scenario::SinglePerfect:
            return "single_perfect";
        case Scenario::SinglePhaseError:
            return "single_phase_error";
        case Scenario::SinglePointingError:
            return "single_pointing_error";
        case Scenario::SingleFull:
            return "single_full";
        case Scenario::AsymptoticUniformPhase:
            return "asymptotic_uniform_phase";
        }
        return "unknown";
    }

    Combiner parse_combiner(std::string_view text)
    {
        if (text == "MRC" || text == "mrc")
            return Combiner::MRC;
        if (text == "EGC" || text == "egc")
            return Combiner::EGC;
        throw InvalidParameter("unknown combiner '" + std::string(text) + "'");
    }

    Scenario parse_scenario(std::string_view text)
    {
        for (auto s : {Scenario::MultiArray, Scenario::SingleNoAlignment, Scenario::SinglePerfect,
                       Scenario::SinglePhaseError, Scenario::SinglePointingError, Scenario::SingleFull,
                       Scenario::AsymptoticUniformPhase})
            if (to_string(s) == text)
                return s;
        throw InvalidParameter("unknown scenario '" + std::string(text) + "'");
    }

    double q_function(double x)
    {
        return 0.5 * std::erfc(x / std::numbers::sqrt2);
    }

    double pe_from_argument(double argument, PpmOrder order)
    {
        if (std::isnan(argument))
            throw InvalidParameter("error-probability argument is NaN");
        const int comparisons = order.value() - 1;
        const double correct = q_function(-argument);
        if (correct > 0.99) {
            // Small error probabilities: avoid cancellation in 1 - correct^k.
            const double tail = q_function(argument);
            return -std::expm1(comparisons * std::log1p(-tail));
        }
        return 1.0 - std::pow(correct, comparisons);
    }

    double pe_multi_array(Combiner combiner, const ChannelDraw& draw, const BeamEnergies& energies, double sigma,
                          PpmOrder order)
    {
        require_sigma(sigma);
        SignalMoments s = separate_beam_moments(draw, energies);
        s.cells = energies.beams() * energies.cells();
        return pe_from_moments(combiner, s, sigma, order);
    }

    double pe_single_no_alignment(Combiner combiner, const ChannelDraw& draw, const BeamEnergies& energies,
                                  double sigma, PpmOrder order)
    {
        require_sigma(sigma);
        SignalMoments s = separate_beam_moments(draw, energies);
        s.cells = energies.cells();
        return pe_from_moments(combiner, s, sigma, order);
    }

    std::vector<double> hermitian_quadratic_sum(const EnergyTensor& tensor, std::span<const double> magnitudes,
                                                std::span<const double> fractions, std::span<const double> phases)
    {
        require_hermitian(tensor);
        return quadratic_form(tensor, magnitudes, fractions, phases, {});
    }

    double pe_given_escape_set(Combiner combiner, const AlignmentInputs& inputs, const ChannelDraw& draw,
                               std::span<const bool> escaped, bool with_phase, double sigma, PpmOrder order)
    {
        require_sigma(sigma);
        const EnergyTensor& tensor = inputs.tensor;
        const std::size_t n = tensor.beams();
        if (!escaped.empty() && escaped.size() != n)
            throw InvalidParameter("escape mask length does not match beam count");

        std::unique_ptr<bool[]> aligned(new bool[n]);
        bool any_escaped = false;
        for (std::size_t i = 0; i < n; ++i) {
            const bool out = !escaped.empty() && escaped[i];
            aligned[i] = !out;
            any_escaped = any_escaped || out;
        }

        const std::vector<double> zeros(n, 0.0);
        const std::span<const double> phases = with_phase ? std::span<const double>(draw.phases) : zeros;
        const auto b = quadratic_form(tensor, draw.magnitudes, draw.fractions, phases,
                                      any_escaped ? std::span<const bool>(aligned.get(), n) : std::span<const bool>{});

        SignalMoments s;
        s.cells = tensor.cells();
        for (double v : b) {
            s.sum += v;
            s.sum_sq += v * v;
        }
        if (any_escaped) {
            const BeamEnergies& out = inputs.escaped_energies;
            if (out.beams() != n || out.cells() != tensor.cells())
                throw InvalidParameter("escaped-beam energies do not match the energy tensor");
            for (std::size_t j = 0; j < n; ++j) {
                if (aligned[j])
                    continue;
                const double gain = draw.magnitudes[j] * draw.magnitudes[j] * draw.fractions[j];
                for (std::size_t m = 0; m < out.cells(); ++m) {
                    const double v = gain * out.at(j, m);
                    s.sum += v;
                    s.sum_sq += v * v;
                }
            }
        }
        return pe_from_moments(combiner, s, sigma, order);
    }

    double pe_single_perfect(Combiner combiner, const EnergyTensor& tensor, const ChannelDraw& draw, double sigma,
                             PpmOrder order)
    {
        require_hermitian(tensor);
        const BeamEnergies none;
        return pe_given_escape_set(combiner, {tensor, none}, draw, {}, false, sigma, order);
    }

    double pe_single_phase(Combiner combiner, const EnergyTensor& tensor, const ChannelDraw& draw, double sigma,
                           PpmOrder order)
    {
        require_hermitian(tensor);
        const BeamEnergies none;
        return pe_given_escape_set(combiner, {tensor, none}, draw, {}, true, sigma, order);
    }

    double pe_single_pointing(Combiner combiner, const AlignmentInputs& inputs, const ChannelDraw& draw,
                              double sigma_x, double coherence_radius, double sigma, PpmOrder order)
    {
        return mixture(combiner, inputs, draw, sigma_x, coherence_radius, sigma, order, false);
    }

    double pe_single_full(Combiner combiner, const AlignmentInputs& inputs, const ChannelDraw& draw,
                          double sigma_x, double coherence_radius, double sigma, PpmOrder order)
    {
        return mixture(combiner, inputs, draw, sigma_x, coherence_radius, sigma, order, true);
    }

    double pe_asymptotic(Combiner combiner, double gain, std::span<const double> cell_energies, double sigma,
                         PpmOrder order)
    {
        require_sigma(sigma);
        if (!(gain >= 0.0))
            throw InvalidParameter("intensity gain must be non-negative");
        SignalMoments s;
        s.cells = cell_energies.size();
        for (double x : cell_energies) {
            s.sum += x;
            s.sum_sq += x * x;
        }
        const double two_var = 2.0 * sigma * sigma;
        const double argument = combiner == Combiner::MRC
                                    ? gain * std::sqrt(s.sum_sq) / std::sqrt(two_var)
                                    : gain * s.sum / std::sqrt(two_var * static_cast<double>(s.cells));
        return pe_from_argument(argument, order);
    }

    double sample_W(int beams, double mean_square_gain, RandomStream& rng)
    {
        if (beams < 1 || !(mean_square_gain > 0.0))
            throw InvalidParameter("asymptotic model needs N >= 1 and a positive mean-square gain");
        return rng.exponential(beams * mean_square_gain);
    }

    double coherent_intensity_gain(const ChannelDraw& draw)
    {
        double x = 0.0;
        double y = 0.0;
        for (std::size_t i = 0; i < draw.size(); ++i) {
            const double g = draw.magnitudes[i] * std::sqrt(draw.fractions[i]);
            x += g * std::cos(draw.phases[i]);
            y += g * std::sin(draw.phases[i]);
        }
        return x * x + y * y;
    }
}
