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

#include <Eigen/Dense>

#include <vector>

namespace fso
{
    /// Gauss-Markov beam wander X_n = Phi X_{n-1} + W_n with W_n ~ N(0, sigma_w^2 I),
    /// reset to the array centre every reset_period steps.
    struct TrackerParams
    {
        Eigen::Matrix2d transition = Eigen::Matrix2d::Zero();
        double disturbance_sigma = 0.0;  // sigma_W, mm per axis
        double initial_sigma = 0.0;      // sigma_0, mm per axis
        long reset_period = 1;           // n_0

        static TrackerParams diagonal(double a, double disturbance_sigma, double initial_sigma = 0.0,
                                      long reset_period = 1);
    };

    struct TrackerState
    {
        Eigen::Vector2d position = Eigen::Vector2d::Zero();
        long step = 0;
    };

    /// Advances one time step. At multiples of the reset period with a perfect
    /// estimate, the control input cancels Phi X_{n-1} and only W_n remains.
    TrackerState step(const TrackerState& state, const TrackerParams& params, RandomStream& rng,
                      bool estimate_perfect);

    /// Covariance of X_n between resets:
    /// sigma_0^2 Phi^n (Phi^n)^T + sigma_w^2 sum_{l=1..n} Phi^(n-l) (Phi^(n-l))^T.
    Eigen::Matrix2d covariance_at(long n, const TrackerParams& params);

    /// Per-axis steady-state deviation sigma_w / sqrt(1 - a^2); throws NonStationary for |a| >= 1.
    double steady_state_sigma(double a, double disturbance_sigma);

    /// Probability that an isotropic Gaussian position with per-axis deviation
    /// sigma_x lies outside the coherence disc of radius rho_c.
    double escape_probability(double coherence_radius, double sigma_x);

    /// Binomial pmf of the number of escaped beams, indexed 0..N.
    std::vector<double> n0_pmf(int beams, double p);

    struct AlignmentState
    {
        std::vector<int> aligned;
        std::vector<int> escaped;
        std::vector<Point> escaped_centers;  // parallel to `escaped`
    };

    /// Draws every beam's steady-state position and splits the beams into
    /// those inside and outside the coherence disc. Aligned beams are treated
    /// as sitting at the array centre.
    AlignmentState sample_alignment(int beams, double coherence_radius, double sigma_x, RandomStream& rng);

    /// Position drawn from the steady-state law conditioned on lying outside the
    /// coherence disc (Rayleigh tail, uniform angle). Consumes two uniforms.
    Point sample_escaped_center(double coherence_radius, double sigma_x, RandomStream& rng);
}
