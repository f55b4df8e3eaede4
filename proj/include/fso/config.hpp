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

#include "fso/optimizer.hpp"
#include "fso/simulation.hpp"
#include "fso/sweep.hpp"

#include <istream>
#include <optional>
#include <string>

namespace fso
{
    struct OptimizeSpec
    {
        GaConfig ga;
        ScenarioConfig base;
        double reference_radius = 0.2;  // mm
    };

    /// Parsed configuration file. Sections: [array], [channel], [pointing],
    /// [ppm], [sweep], [ga]. Keys are `name = value`; `#` and `;` start comments.
    struct RunConfig
    {
        ScenarioConfig base;
        std::optional<SweepSpec> sweep;
        std::optional<OptimizeSpec> optimize;
    };

    /// Throws ConfigError with a "line N:" prefix for syntax errors, unknown
    /// sections or keys, duplicates and out-of-domain values.
    RunConfig parse_config(std::istream& in);

    /// Throws ConfigError when the file cannot be opened for reading.
    RunConfig load_config(const std::string& path);
}
