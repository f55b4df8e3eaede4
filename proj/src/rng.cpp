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

#include "fso/rng.hpp"

#include <cmath>
#include <numbers>

namespace fso
{
    namespace
    {
        constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
        constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
        constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
        constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi)
        {
            const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
            lo = static_cast<std::uint32_t>(product);
            hi = static_cast<std::uint32_t>(product >> 32);
        }
    }

    std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key)
    {
        for (int round = 0; round < 10; ++round) {
            std::uint32_t lo0, hi0, lo1, hi1;
            mulhilo(kPhiloxM4x32A, ctr[0], lo0, hi0);
            mulhilo(kPhiloxM4x32B, ctr[2], lo1, hi1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kPhiloxW32A;
            key[1] += kPhiloxW32B;
        }
        return ctr;
    }

    RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index, StreamRole role)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{0u, static_cast<std::uint32_t>(role), static_cast<std::uint32_t>(index),
                   static_cast<std::uint32_t>(index >> 32)}
    {
    }

    void RandomStream::refill()
    {
        block_ = philox4x32(counter_, key_);
        ++counter_[0];
        used_ = 0;
    }

    std::uint64_t RandomStream::next_u64()
    {
        if (used_ > 2)
            refill();
        const std::uint64_t lo = block_[used_];
        const std::uint64_t hi = block_[used_ + 1];
        used_ += 2;
        return (hi << 32) | lo;
    }

    double RandomStream::uniform()
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double RandomStream::normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double RandomStream::exponential(double mean)
    {
        return -mean * std::log(uniform());
    }
}
