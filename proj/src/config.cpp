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

#include "fso/config.hpp"

#include "fso/errors.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fso
{
    namespace
    {
        struct Entry
        {
            std::string value;
            int line = 0;
        };

        using Section = std::map<std::string, Entry>;

        std::string trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return std::string(s.substr(first, last - first + 1));
        }

        [[noreturn]] void fail(int line, const std::string& message)
        {
            throw ConfigError("line " + std::to_string(line) + ": " + message);
        }

        const std::map<std::string, std::set<std::string>>& schema()
        {
            static const std::map<std::string, std::set<std::string>> keys{
                {"array", {"side", "rows", "cols", "beam_radius", "peak_intensity", "gamma", "lens_u", "lens_v"}},
                {"channel", {"beams", "fading_mean", "phase", "sigma_phi", "snr_db"}},
                {"pointing", {"sigma_x", "a", "sigma_w", "coherence_radius"}},
                {"ppm", {"order"}},
                {"sweep", {"variable", "values", "combiners", "scenarios", "trials", "seed", "workers"}},
                {"ga",
                 {"population", "generations", "crossover_rate", "mutation_rate", "mutation_scale", "elitism",
                  "tournament", "rho_min", "rho_max", "seed", "reference_radius", "scenario", "combiner", "trials",
                  "workers"}},
            };
            return keys;
        }

        std::map<std::string, Section> read_sections(std::istream& in)
        {
            std::map<std::string, Section> sections;
            std::string current;
            std::string raw;
            int line = 0;
            while (std::getline(in, raw)) {
                ++line;
                const auto cut = raw.find_first_of("#;");
                const std::string text = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
                if (text.empty())
                    continue;
                if (text.front() == '[') {
                    if (text.back() != ']')
                        fail(line, "malformed section header");
                    current = trim(std::string_view(text).substr(1, text.size() - 2));
                    if (!schema().contains(current))
                        fail(line, "unknown section [" + current + "]");
                    if (sections.contains(current))
                        fail(line, "section [" + current + "] appears twice");
                    sections[current];
                    continue;
                }
                const auto eq = text.find('=');
                if (eq == std::string::npos)
                    fail(line, "expected 'key = value'");
                if (current.empty())
                    fail(line, "key outside of any section");
                const std::string key = trim(std::string_view(text).substr(0, eq));
                const std::string value = trim(std::string_view(text).substr(eq + 1));
                if (!schema().at(current).contains(key))
                    fail(line, "unknown key '" + key + "' in [" + current + "]");
                if (value.empty())
                    fail(line, "empty value for '" + key + "'");
                auto& section = sections[current];
                if (section.contains(key))
                    fail(line, "duplicate key '" + key + "'");
                section[key] = {value, line};
            }
            return sections;
        }

        double to_double(const Entry& e)
        {
            double v = 0.0;
            const char* end = e.value.data() + e.value.size();
            const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
            if (ec != std::errc() || ptr != end)
                fail(e.line, "expected a number, got '" + e.value + "'");
            return v;
        }

        long long to_integer(const Entry& e)
        {
            long long v = 0;
            const char* end = e.value.data() + e.value.size();
            const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
            if (ec != std::errc() || ptr != end)
                fail(e.line, "expected an integer, got '" + e.value + "'");
            return v;
        }

        std::vector<std::string> split_list(const Entry& e)
        {
            std::vector<std::string> items;
            std::stringstream ss(e.value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty())
                    fail(e.line, "empty item in list");
                items.push_back(item);
            }
            return items;
        }

        std::vector<double> to_doubles(const Entry& e)
        {
            std::vector<double> out;
            for (const auto& item : split_list(e))
                out.push_back(to_double({item, e.line}));
            return out;
        }

        // Runs `parse` and re-anchors library errors at the entry's line.
        template <class F>
        auto anchored(const Entry& e, F&& parse)
        {
            try {
                return parse();
            } catch (const ConfigError& err) {
                const std::string what = err.what();
                if (what.rfind("line ", 0) == 0)
                    throw;
                fail(e.line, what);
            } catch (const Error& err) {
                fail(e.line, err.what());
            }
        }

        class Reader
        {
        public:
            explicit Reader(const Section* s) : s_(s) {}

            const Entry* find(const std::string& key) const
            {
                if (s_ == nullptr)
                    return nullptr;
                const auto it = s_->find(key);
                return it == s_->end() ? nullptr : &it->second;
            }

            void number(const std::string& key, double& target) const
            {
                if (const Entry* e = find(key))
                    target = to_double(*e);
            }

            template <class Int>
            void integer(const std::string& key, Int& target, long long lo) const
            {
                if (const Entry* e = find(key)) {
                    const long long v = to_integer(*e);
                    if (v < lo)
                        fail(e->line, key + " must be at least " + std::to_string(lo));
                    target = static_cast<Int>(v);
                }
            }

        private:
            const Section* s_;
        };

        const Section* section(const std::map<std::string, Section>& all, const std::string& name)
        {
            const auto it = all.find(name);
            return it == all.end() ? nullptr : &it->second;
        }

        int first_line(const Section* s)
        {
            int line = 0;
            if (s != nullptr)
                for (const auto& [key, e] : *s)
                    line = line == 0 ? e.line : std::min(line, e.line);
            return line;
        }

        ScenarioConfig read_base(const std::map<std::string, Section>& all)
        {
            ScenarioConfig c;
            const Reader array(section(all, "array"));
            array.number("side", c.array_side);
            array.integer("rows", c.rows, 1);
            array.integer("cols", c.cols, 1);
            array.number("beam_radius", c.beam_radius);
            array.number("peak_intensity", c.peak_intensity);
            array.number("gamma", c.gamma);
            if (const Entry* e = array.find("lens_u"))
                c.lens_u = to_doubles(*e);
            if (const Entry* e = array.find("lens_v"))
                c.lens_v = to_doubles(*e);

            const Reader channel(section(all, "channel"));
            channel.integer("beams", c.beams, 1);
            channel.number("fading_mean", c.fading_mean);
            channel.number("snr_db", c.snr_db);
            double sigma_phi = 0.0;
            channel.number("sigma_phi", sigma_phi);
            std::string phase = channel.find("sigma_phi") ? "gaussian" : "none";
            if (const Entry* e = channel.find("phase")) {
                phase = e->value;
                if (phase != "none" && phase != "gaussian" && phase != "uniform")
                    fail(e->line, "phase must be none, gaussian or uniform");
                if (phase != "gaussian" && channel.find("sigma_phi"))
                    fail(e->line, "sigma_phi only applies to gaussian phase errors");
            }
            if (phase == "gaussian")
                c.phase = PhaseModel::gaussian(sigma_phi);
            else if (phase == "uniform")
                c.phase = PhaseModel::uniform();

            const Reader pointing(section(all, "pointing"));
            pointing.number("sigma_x", c.sigma_x);
            if (const Entry* e = pointing.find("a")) {
                c.tracker_a = to_double(*e);
                if (!pointing.find("sigma_w"))
                    fail(e->line, "tracker coefficient a needs sigma_w");
            }
            pointing.number("sigma_w", c.tracker_sigma_w);
            if (const Entry* e = pointing.find("sigma_w"); e && !c.tracker_a)
                fail(e->line, "sigma_w needs the tracker coefficient a");
            if (const Entry* e = pointing.find("coherence_radius"))
                c.coherence_radius = to_double(*e);

            const Reader ppm(section(all, "ppm"));
            ppm.integer("order", c.ppm_order, 2);
            return c;
        }

        void read_run_keys(const Reader& r, ScenarioConfig& c)
        {
            r.integer("trials", c.trials, 1);
            r.integer("seed", c.seed, 0);
            r.integer("workers", c.workers, 0);
        }
    }

    RunConfig parse_config(std::istream& in)
    {
        const auto all = read_sections(in);
        RunConfig run;
        const int anchor = std::max(1, first_line(section(all, "array")));
        run.base = anchored(Entry{"", anchor}, [&] {
            ScenarioConfig c = read_base(all);
            c.validate();
            return c;
        });

        if (const Section* s = section(all, "sweep")) {
            const Reader r(s);
            SweepSpec spec;
            spec.base = run.base;
            read_run_keys(r, spec.base);
            const Entry* variable = r.find("variable");
            const Entry* values = r.find("values");
            if (variable == nullptr || values == nullptr)
                fail(std::max(1, first_line(s)), "[sweep] needs both 'variable' and 'values'");
            spec.variable = anchored(*variable, [&] { return parse_sweep_variable(variable->value); });
            spec.values = to_doubles(*values);
            if (const Entry* e = r.find("combiners")) {
                spec.combiners.clear();
                for (const auto& item : split_list(*e))
                    spec.combiners.push_back(anchored(*e, [&] { return parse_combiner(item); }));
            }
            if (const Entry* e = r.find("scenarios")) {
                spec.scenarios.clear();
                for (const auto& item : split_list(*e))
                    spec.scenarios.push_back(anchored(*e, [&] { return parse_scenario(item); }));
            }
            for (double v : spec.values)
                anchored(*values, [&] { return apply_sweep_value(spec.base, spec.variable, v); });
            run.sweep = std::move(spec);
        }

        if (const Section* s = section(all, "ga")) {
            const Reader r(s);
            OptimizeSpec opt;
            opt.base = run.base;
            read_run_keys(r, opt.base);
            r.integer("population", opt.ga.population_size, 4);
            r.integer("generations", opt.ga.generations, 1);
            r.number("crossover_rate", opt.ga.crossover_rate);
            r.number("mutation_rate", opt.ga.mutation_rate);
            r.number("mutation_scale", opt.ga.mutation_scale);
            r.integer("elitism", opt.ga.elitism_count, 0);
            r.integer("tournament", opt.ga.tournament_size, 1);
            r.number("rho_min", opt.ga.rho_min);
            r.number("rho_max", opt.ga.rho_max);
            r.integer("seed", opt.ga.seed, 0);
            r.number("reference_radius", opt.reference_radius);
            if (const Entry* e = r.find("scenario"))
                opt.base.scenario = anchored(*e, [&] { return parse_scenario(e->value); });
            if (const Entry* e = r.find("combiner"))
                opt.base.combiner = anchored(*e, [&] { return parse_combiner(e->value); });
            const Entry at{"", std::max(1, first_line(s))};
            anchored(at, [&] {
                opt.ga.validate();
                if (!(opt.reference_radius > 0.0))
                    throw ConfigError("reference_radius must be positive");
                opt.base.validate();
                return 0;
            });
            run.optimize = std::move(opt);
        }
        return run;
    }

    RunConfig load_config(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path + "'");
        return parse_config(in);
    }
}
