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

#include "fso/detection.hpp"
#include "fso/simulation.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fso
{
    enum class SweepVariable
    {
        SnrDb,
        SigmaPhi,
        SigmaX,
        Rho,
        CellCount,  // M, a perfect square
        BeamCount,  // N
    };

    SweepVariable parse_sweep_variable(std::string_view text);
    std::string_view to_string(SweepVariable v);

    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::SnrDb;
        std::vector<double> values;
        std::vector<Combiner> combiners{Combiner::MRC, Combiner::EGC};
        std::vector<Scenario> scenarios{Scenario::SinglePerfect};
        ScenarioConfig base;
    };

    /// `base` with the swept variable set to `value`. Throws ConfigError when
    /// the value is outside the variable's domain.
    ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable variable, double value);

    /// Shortest round-trip text for integers, otherwise 17 significant digits;
    /// independent of the locale.
    std::string format_double(double value);

    /// Writes the CSV header and one row per (value, scenario, combiner).
    void run_sweep(const SweepSpec& spec, std::ostream& out);

    inline constexpr std::string_view kSweepHeader = "swept_value,combiner,scenario,estimate,std_error,trials,seed";
}
