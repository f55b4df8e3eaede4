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

#include "fso/sweep.hpp"

#include "fso/errors.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace fso
{
    SweepVariable parse_sweep_variable(std::string_view text)
    {
        for (auto v : {SweepVariable::SnrDb, SweepVariable::SigmaPhi, SweepVariable::SigmaX, SweepVariable::Rho,
                       SweepVariable::CellCount, SweepVariable::BeamCount})
            if (to_string(v) == text)
                return v;
        throw ConfigError("unknown sweep variable '" + std::string(text) + "'");
    }

    std::string_view to_string(SweepVariable v)
    {
        switch (v) {
        case SweepVariable::SnrDb:
            return "snr_db";
        case SweepVariable::SigmaPhi:
            return "sigma_phi";
        case SweepVariable::SigmaX:
            return "sigma_x";
        case SweepVariable::Rho:
            return "rho";
        case SweepVariable::CellCount:
            return "M";
        case SweepVariable::BeamCount:
            return "N";
        }
        return "unknown";
    }

    namespace
    {
        int as_count(double value, std::string_view name)
        {
            if (!(value >= 1.0) || value != std::floor(value) || value > 1e6)
                throw ConfigError(std::string(name) + " must be a positive integer, got " + format_double(value));
            return static_cast<int>(value);
        }
    }

    ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable variable, double value)
    {
        ScenarioConfig c = base;
        switch (variable) {
        case SweepVariable::SnrDb:
            c.snr_db = value;
            break;
        case SweepVariable::SigmaPhi:
            if (c.phase.kind == PhaseKind::Uniform)
                throw ConfigError("cannot sweep sigma_phi with uniform phase errors");
            c.phase = PhaseModel::gaussian(value);
            break;
        case SweepVariable::SigmaX:
            if (c.tracker_a)
                throw ConfigError("cannot sweep sigma_x when tracker parameters are given");
            c.sigma_x = value;
            break;
        case SweepVariable::Rho:
            c.reference_radius = base.reference_radius.value_or(base.beam_radius);
            c.beam_radius = value;
            break;
        case SweepVariable::CellCount: {
            const int m = as_count(value, "M");
            const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
            if (side * side != m)
                throw ConfigError("M must be a perfect square, got " + std::to_string(m));
            c.rows = c.cols = side;
            break;
        }
        case SweepVariable::BeamCount:
            if (!c.lens_u.empty() || !c.lens_v.empty())
                throw ConfigError("cannot sweep N with per-beam lens offsets");
            c.beams = as_count(value, "N");
            break;
        }
        c.validate();
        return c;
    }

    std::string format_double(double value)
    {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, value);
        const std::string shortest(buf, res.ptr);
        if (value == std::floor(value) && std::abs(value) < 1e15)
            return shortest;
        res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
        return {buf, res.ptr};
    }

    void run_sweep(const SweepSpec& spec, std::ostream& out)
    {
        if (spec.values.empty())
            throw ConfigError("sweep grid is empty");
        if (spec.combiners.empty() || spec.scenarios.empty())
            throw ConfigError("sweep needs at least one combiner and one scenario");
        out << kSweepHeader << '\n';
        for (double value : spec.values) {
            ScenarioConfig point = apply_sweep_value(spec.base, spec.variable, value);
            for (Scenario s : spec.scenarios) {
                for (Combiner comb : spec.combiners) {
                    point.scenario = s;
                    point.combiner = comb;
                    const SimResult r = unconditional_pe(point);
                    out << format_double(value) << ',' << to_string(comb) << ',' << to_string(s) << ','
                        << format_double(r.estimate) << ',' << format_double(r.standard_error) << ','
                        << r.trials << ',' << r.seed << '\n';
                }
            }
        }
        if (!out)
            throw std::ios_base::failure("failed writing sweep output");
    }
}
