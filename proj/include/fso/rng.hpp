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

#include <array>
#include <cstdint>
#include <limits>

namespace fso
{
    /// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
    std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);

    /// Identifies which part of a trial consumes a stream, so that draws for
    /// one role never shift when another role changes its consumption.
    enum class StreamRole : std::uint32_t
    {
        Fading = 1,
        Phase = 2,
        Pointing = 3,
        Noise = 4,
        Tracker = 5,
        Genetic = 6,
        Generic = 7,
    };

    /// Counter-based random stream keyed by (seed, index, role).
    ///
    /// Two streams built from the same triple produce identical sequences no
    /// matter which thread creates them or in what order, which is what makes
    /// Monte Carlo results independent of the worker count.
    class RandomStream
    {
    public:
        using result_type = std::uint64_t;

        RandomStream(std::uint64_t seed, std::uint64_t index, StreamRole role = StreamRole::Generic);

        static constexpr result_type min() { return 0; }
        static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
        result_type operator()() { return next_u64(); }

        std::uint64_t next_u64();

        /// Uniform on the open interval (0, 1), 53-bit resolution.
        double uniform();

        /// Standard normal via Box-Muller; the second variate of each pair is cached.
        double normal();

        double exponential(double mean);

    private:
        void refill();

        std::array<std::uint32_t, 2> key_;
        std::array<std::uint32_t, 4> counter_;
        std::array<std::uint32_t, 4> block_{};
        int used_ = 4;
        bool has_spare_ = false;
        double spare_ = 0.0;
    };
}
