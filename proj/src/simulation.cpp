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

#include "fso/simulation.hpp"

#include "fso/errors.hpp"
#include "fso/pointing.hpp"
#include "fso/rng.hpp"
#include "fso/statistics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace fso
{
    namespace
    {
        void check(bool ok, const std::string& message)
        {
            if (!ok)
                throw ConfigError(message);
        }

        bool uses_tensor(Scenario s)
        {
            return s == Scenario::SinglePerfect || s == Scenario::SinglePhaseError ||
                   s == Scenario::SinglePointingError || s == Scenario::SingleFull;
        }

        bool uses_pointing(Scenario s)
        {
            return s == Scenario::SinglePointingError || s == Scenario::SingleFull;
        }

        const ScenarioConfig& validated(const ScenarioConfig& config)
        {
            config.validate();
            return config;
        }
    }

    void ScenarioConfig::validate() const
    {
        check(beams >= 1, "beams must be at least 1");
        check(!uses_pointing(scenario) || beams <= 16, "pointing scenarios support at most 16 beams");
        check(array_side > 0.0 && std::isfinite(array_side), "array side must be positive");
        check(rows >= 1 && cols >= 1, "array rows and cols must be at least 1");
        check(beam_radius > 0.0 && std::isfinite(beam_radius), "beam radius must be positive");
        check(peak_intensity > 0.0, "peak intensity must be positive");
        check(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
        check(fading_mean > 0.0, "fading mean must be positive");
        check(phase.sigma >= 0.0, "phase error deviation must be non-negative");
        check(sigma_x >= 0.0, "sigma_x must be non-negative");
        if (tracker_a) {
            check(sigma_x == 0.0, "give either sigma_x or the tracker parameters, not both");
            check(std::abs(*tracker_a) < 1.0, "tracker coefficient a must satisfy |a| < 1");
            check(tracker_sigma_w >= 0.0, "tracker sigma_w must be non-negative");
        }
        check(!coherence_radius || *coherence_radius >= 0.0, "coherence radius must be non-negative");
        check(!reference_radius || *reference_radius > 0.0, "reference radius must be positive");
        check(ppm_order >= 2 && (ppm_order & (ppm_order - 1)) == 0, "PPM order must be a power of two >= 2");
        check(std::isfinite(snr_db), "snr_db must be finite");
        check(lens_u.empty() || lens_u.size() == static_cast<std::size_t>(beams),
              "lens_u needs one value per beam");
        check(lens_v.empty() || lens_v.size() == static_cast<std::size_t>(beams),
              "lens_v needs one value per beam");
        check(trials >= 1, "trials must be at least 1");
    }

    double ScenarioConfig::effective_sigma_x() const
    {
        return tracker_a ? steady_state_sigma(*tracker_a, tracker_sigma_w) : sigma_x;
    }

    double ScenarioConfig::effective_coherence_radius() const
    {
        return coherence_radius.value_or(beam_radius);
    }

    PreparedScenario::PreparedScenario(ScenarioConfig config)
        : config_(validated(config)),
          array_(make_array(config_.array_side, config_.rows, config_.cols)),
          order_(config_.ppm_order)
    {
        const auto& c = config_;
        const std::size_t m = array_.size();
        const std::size_t n = static_cast<std::size_t>(c.beams);

        centred_ = cell_energies(array_, {0.0, 0.0}, c.beam_radius, c.peak_intensity);
        centred_gamma_.resize(m);
        for (std::size_t k = 0; k < m; ++k)
            centred_gamma_[k] = c.gamma * centred_[k];

        separate_ = BeamEnergies(n, m);
        for (std::size_t i = 0; i < n; ++i)
            std::copy(centred_.begin(), centred_.end(), separate_.beam(i).begin());

        if (uses_tensor(c.scenario)) {
            std::vector<BeamProfile> profiles(n);
            for (std::size_t i = 0; i < n; ++i) {
                profiles[i].peak_intensity = c.peak_intensity;
                profiles[i].radius = c.beam_radius;
                profiles[i].lens_offset = {c.lens_u.empty() ? 0.0 : c.lens_u[i],
                                           c.lens_v.empty() ? 0.0 : c.lens_v[i]};
            }
            tensor_ = energy_matrix(array_, profiles, c.gamma);
        }

        reference_energy_ = ::fso::reference_energy(array_, c.reference_radius.value_or(c.beam_radius),
                                                    c.peak_intensity, c.gamma);
        sigma_ = noise_sigma_from_snr(c.snr_db, reference_energy_) / std::sqrt(static_cast<double>(m));
        if (uses_pointing(c.scenario))
            escape_probability_ = ::fso::escape_probability(c.effective_coherence_radius(), c.effective_sigma_x());
    }

    ChannelDraw PreparedScenario::draw_channel(std::uint64_t trial) const
    {
        RandomStream fading_rng(config_.seed, trial, StreamRole::Fading);
        RandomStream phase_rng(config_.seed, trial, StreamRole::Phase);
        const auto alpha = sample_fading(config_.beams, {config_.fading_mean}, fading_rng);
        return make_channel_draw(alpha, sample_phase_errors(config_.beams, config_.phase, phase_rng));
    }

    BeamEnergies PreparedScenario::escaped_energies(std::uint64_t trial) const
    {
        const std::size_t n = static_cast<std::size_t>(config_.beams);
        BeamEnergies out(n, array_.size());
        if (escape_probability_ == 0.0)
            return out;
        RandomStream rng(config_.seed, trial, StreamRole::Pointing);
        const double rc = config_.effective_coherence_radius();
        const double sx = config_.effective_sigma_x();
        for (std::size_t i = 0; i < n; ++i) {
            const Point c = sample_escaped_center(rc, sx, rng);
            const auto x = cell_energies(array_, c, config_.beam_radius, config_.peak_intensity);
            auto row = out.beam(i);
            for (std::size_t k = 0; k < x.size(); ++k)
                row[k] = config_.gamma * x[k];
        }
        return out;
    }

    double PreparedScenario::conditional_pe(const ChannelDraw& draw, const BeamEnergies& escaped) const
    {
        const Combiner comb = config_.combiner;
        switch (config_.scenario) {
        case Scenario::MultiArray:
            return pe_multi_array(comb, draw, separate_, sigma_, order_);
        case Scenario::SingleNoAlignment:
            return pe_single_no_alignment(comb, draw, separate_, sigma_, order_);
        case Scenario::SinglePerfect:
            return pe_single_perfect(comb, tensor_, draw, sigma_, order_);
        case Scenario::SinglePhaseError:
            return pe_single_phase(comb, tensor_, draw, sigma_, order_);
        case Scenario::SinglePointingError:
            return pe_single_pointing(comb, {tensor_, escaped}, draw, config_.effective_sigma_x(),
                                      config_.effective_coherence_radius(), sigma_, order_);
        case Scenario::SingleFull:
            return pe_single_full(comb, {tensor_, escaped}, draw, config_.effective_sigma_x(),
                                  config_.effective_coherence_radius(), sigma_, order_);
        case Scenario::AsymptoticUniformPhase:
            return pe_asymptotic(comb, coherent_intensity_gain(draw), centred_gamma_, sigma_, order_);
        }
        throw ConfigError("unknown scenario");
    }

    double PreparedScenario::trial_pe(std::uint64_t trial) const
    {
        if (config_.scenario == Scenario::AsymptoticUniformPhase) {
            RandomStream rng(config_.seed, trial, StreamRole::Fading);
            const double w =
                sample_W(config_.beams, mean_square_effective_gain(config_.beams, config_.fading_mean), rng);
            return pe_asymptotic(config_.combiner, w, centred_gamma_, sigma_, order_);
        }
        const ChannelDraw draw = draw_channel(trial);
        if (uses_pointing(config_.scenario))
            return conditional_pe(draw, escaped_energies(trial));
        return conditional_pe(draw, BeamEnergies{});
    }

    void parallel_for(std::uint64_t count, unsigned workers,
                      const std::function<void(std::uint64_t, std::uint64_t)>& body)
    {
        if (workers == 0)
            workers = std::max(1u, std::thread::hardware_concurrency());
        const std::uint64_t chunks = std::min<std::uint64_t>(workers, count);
        if (chunks <= 1) {
            body(0, count);
            return;
        }
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (std::uint64_t w = 0; w < chunks; ++w) {
            const std::uint64_t begin = count * w / chunks;
            const std::uint64_t end = count * (w + 1) / chunks;
            pool.emplace_back([&, begin, end] {
                try {
                    body(begin, end);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            });
        }
        for (auto& t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    SimResult unconditional_pe(const ScenarioConfig& config)
    {
        const auto start = std::chrono::steady_clock::now();
        const PreparedScenario prepared(config);
        std::vector<double> values(config.trials);
        parallel_for(config.trials, config.workers, [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t t = begin; t < end; ++t)
                values[t] = prepared.trial_pe(t);
        });
        const SampleSummary s = summarize(values);
        SimResult r;
        r.estimate = std::clamp(s.mean, 0.0, 1.0);
        r.standard_error = s.standard_error;
        r.trials = config.trials;
        r.seed = config.seed;
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

    namespace
    {
        // Noisy observations entering the decision statistic: per-cell signal
        // means in the pulse slot and the combining weights.
        struct Observation
        {
            std::vector<double> means;
            std::vector<double> weights;
        };

        Observation finish(Combiner combiner, std::vector<double> means)
        {
            Observation o;
            o.weights = combiner == Combiner::MRC ? means : std::vector<double>(means.size(), 1.0);
            o.means = std::move(means);
            return o;
        }

        double beam_gain(const ChannelDraw& draw, std::size_t i)
        {
            return draw.magnitudes[i] * draw.magnitudes[i] * draw.fractions[i];
        }

        std::vector<double> coherent_means(const EnergyTensor& tensor, const ChannelDraw& draw, bool with_phase,
                                           std::span<const int> aligned)
        {
            std::vector<double> magnitudes(draw.size(), 0.0);
            for (int i : aligned)
                magnitudes[static_cast<std::size_t>(i)] = draw.magnitudes[static_cast<std::size_t>(i)];
            const std::vector<double> zeros(draw.size(), 0.0);
            return hermitian_quadratic_sum(tensor, magnitudes, draw.fractions,
                                           with_phase ? std::span<const double>(draw.phases) : zeros);
        }

        // One M-PPM symbol: true on error. Ties with the pulse slot are broken uniformly.
        bool symbol_error(const Observation& obs, double sigma, int order, RandomStream& rng)
        {
            auto statistic = [&](bool pulse) {
                double s = 0.0;
                for (std::size_t c = 0; c < obs.means.size(); ++c)
                    s += obs.weights[c] * ((pulse ? obs.means[c] : 0.0) + sigma * rng.normal());
                return s;
            };
            const double signal = statistic(true);
            int ties = 0;
            bool beaten = false;
            for (int k = 1; k < order; ++k) {
                const double other = statistic(false);
                if (other > signal)
                    beaten = true;
                else if (other == signal)
                    ++ties;
            }
            if (beaten)
                return true;
            if (ties > 0)
                return rng.uniform() * (ties + 1) >= 1.0;
            return false;
        }
    }

    SimResult symbol_level_oracle(const ScenarioConfig& config, const ChannelDraw& draw)
    {
        const auto start = std::chrono::steady_clock::now();
        const PreparedScenario prepared(config);
        const auto& c = prepared.config();
        if (c.scenario == Scenario::AsymptoticUniformPhase)
            throw ConfigError("the symbol-level oracle has no observation model for the asymptotic scenario");
        if (draw.size() != static_cast<std::size_t>(c.beams))
            throw ConfigError("channel draw does not match the configured beam count");

        const std::size_t n = draw.size();
        const std::size_t m = prepared.array().size();
        const auto& x = prepared.centred_energies();
        const double sigma = prepared.noise_sigma();
        const int order = c.ppm_order;

        std::vector<int> all(n);
        for (std::size_t i = 0; i < n; ++i)
            all[i] = static_cast<int>(i);

        Observation fixed;
        switch (c.scenario) {
        case Scenario::MultiArray:
        case Scenario::SingleNoAlignment: {
            const bool pooled = c.scenario == Scenario::SingleNoAlignment && c.combiner == Combiner::EGC;
            std::vector<double> means(pooled ? m : n * m, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < m; ++k)
                    means[pooled ? k : i * m + k] += beam_gain(draw, i) * x[k];
            fixed = finish(c.combiner, std::move(means));
            break;
        }
        case Scenario::SinglePerfect:
        case Scenario::SinglePhaseError:
            fixed = finish(c.combiner, coherent_means(prepared.tensor(), draw,
                                                      c.scenario == Scenario::SinglePhaseError, all));
            break;
        default:
            break;
        }

        const bool pointing = uses_pointing(c.scenario);
        const double sx = c.effective_sigma_x();
        const double rc = c.effective_coherence_radius();
        std::vector<double> outcomes(c.trials);
        parallel_for(c.trials, c.workers, [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t t = begin; t < end; ++t) {
                RandomStream noise(c.seed, t, StreamRole::Noise);
                if (!pointing) {
                    outcomes[t] = symbol_error(fixed, sigma, order, noise) ? 1.0 : 0.0;
                    continue;
                }
                AlignmentState state;
                if (sx > 0.0) {
                    RandomStream rng(c.seed, t, StreamRole::Pointing);
                    state = sample_alignment(c.beams, rc, sx, rng);
                } else {
                    state.aligned = all;
                }
                auto means = coherent_means(prepared.tensor(), draw, c.scenario == Scenario::SingleFull,
                                            state.aligned);
                for (std::size_t j = 0; j < state.escaped.size(); ++j) {
                    const auto xe = cell_energies(prepared.array(), state.escaped_centers[j], c.beam_radius,
                                                  c.peak_intensity);
                    const double g = c.gamma * beam_gain(draw, static_cast<std::size_t>(state.escaped[j]));
                    if (c.combiner == Combiner::MRC) {
                        for (double v : xe)
                            means.push_back(g * v);
                    } else {
                        for (std::size_t k = 0; k < m; ++k)
                            means[k] += g * xe[k];
                    }
                }
                outcomes[t] = symbol_error(finish(c.combiner, std::move(means)), sigma, order, noise) ? 1.0 : 0.0;
            }
        });

        const SampleSummary s = summarize(outcomes);
        SimResult r;
        r.estimate = s.mean;
        r.standard_error = s.standard_error;
        r.trials = c.trials;
        r.seed = c.seed;
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

    std::pair<double, double> confidence_interval(const SimResult& result, double level)
    {
        if (!(level > 0.0 && level < 1.0))
            throw InvalidParameter("confidence level must lie in (0, 1)");
        const double half = normal_quantile(0.5 + level / 2.0) * result.standard_error;
        return {std::max(0.0, result.estimate - half), std::min(1.0, result.estimate + half)};
    }
}
