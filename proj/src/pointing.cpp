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

#include "fso/pointing.hpp"

#include "fso/errors.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <cmath>
#include <numbers>

namespace fso
{
    TrackerParams TrackerParams::diagonal(double a, double disturbance_sigma, double initial_sigma,
                                          long reset_period)
    {
        TrackerParams p;
        p.transition = a * Eigen::Matrix2d::Identity();
        p.disturbance_sigma = disturbance_sigma;
        p.initial_sigma = initial_sigma;
        p.reset_period = reset_period;
        return p;
    }

    TrackerState step(const TrackerState& state, const TrackerParams& params, RandomStream& rng,
                      bool estimate_perfect)
    {
        if (params.reset_period < 1)
            throw InvalidParameter("reset period must be a positive integer");
        TrackerState next;
        next.step = state.step + 1;
        const double wx = params.disturbance_sigma * rng.normal();
        const double wy = params.disturbance_sigma * rng.normal();
        const Eigen::Vector2d w(wx, wy);
        if (estimate_perfect && next.step % params.reset_period == 0)
            next.position = w;
        else
            next.position = params.transition * state.position + w;
        return next;
    }

    Eigen::Matrix2d covariance_at(long n, const TrackerParams& params)
    {
        if (n < 0)
            throw InvalidParameter("time index must be non-negative");
        const Eigen::Matrix2d& phi = params.transition;
        Eigen::Matrix2d cov = params.initial_sigma * params.initial_sigma * Eigen::Matrix2d::Identity();
        const Eigen::Matrix2d disturbance =
            params.disturbance_sigma * params.disturbance_sigma * Eigen::Matrix2d::Identity();
        for (long k = 0; k < n; ++k)
            cov = phi * cov * phi.transpose() + disturbance;
        return cov;
    }

    double steady_state_sigma(double a, double disturbance_sigma)
    {
        if (!(std::abs(a) < 1.0))
            throw NonStationary("tracker transition must satisfy |a| < 1 for a steady state");
        return disturbance_sigma / std::sqrt(1.0 - a * a);
    }

    double escape_probability(double coherence_radius, double sigma_x)
    {
        if (coherence_radius < 0.0)
            throw InvalidParameter("coherence radius must be non-negative");
        if (sigma_x < 0.0)
            throw InvalidParameter("pointing deviation must be non-negative");
        if (sigma_x == 0.0)
            return coherence_radius > 0.0 ? 0.0 : 1.0;
        return std::exp(-coherence_radius * coherence_radius / (2.0 * sigma_x * sigma_x));
    }

    std::vector<double> n0_pmf(int beams, double p)
    {
        if (beams < 1)
            throw InvalidParameter("need at least one beam");
        if (!(p >= 0.0 && p <= 1.0))
            throw InvalidParameter("escape probability must lie in [0, 1]");
        const boost::math::binomial_distribution<double> law(beams, p);
        std::vector<double> pmf(static_cast<std::size_t>(beams) + 1);
        for (int k = 0; k <= beams; ++k)
            pmf[static_cast<std::size_t>(k)] = boost::math::pdf(law, k);
        return pmf;
    }

    AlignmentState sample_alignment(int beams, double coherence_radius, double sigma_x, RandomStream& rng)
    {
        if (!(sigma_x > 0.0))
            throw InvalidParameter("alignment sampling needs a positive pointing deviation");
        AlignmentState state;
        for (int i = 0; i < beams; ++i) {
            const Point pos{sigma_x * rng.normal(), sigma_x * rng.normal()};
            if (std::hypot(pos.x, pos.y) > coherence_radius) {
                state.escaped.push_back(i);
                state.escaped_centers.push_back(pos);
            } else {
                state.aligned.push_back(i);
            }
        }
        return state;
    }

    Point sample_escaped_center(double coherence_radius, double sigma_x, RandomStream& rng)
    {
        const double u = rng.uniform();
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        const double r =
            std::sqrt(coherence_radius * coherence_radius - 2.0 * sigma_x * sigma_x * std::log(u));
        return {r * std::cos(angle), r * std::sin(angle)};
    }
}
