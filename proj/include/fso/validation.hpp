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

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fso
{
    struct ValidationOptions
    {
        bool quick = false;
        // Multiplies every acceptance margin; 0 makes every check fail.
        double tolerance_scale = 1.0;
        std::uint64_t seed = 20240601;
        unsigned workers = 1;
    };

    struct CheckResult
    {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    std::vector<CheckResult> run_validation(const ValidationOptions& options);

    /// One "PASS name: detail" / "FAIL name: detail" line per check. Returns
    /// true iff every check passed.
    bool print_report(const std::vector<CheckResult>& results, std::ostream& out);
}
