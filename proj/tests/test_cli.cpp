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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace
{
    const std::string kExe = FSO_MISO_EXE;
    const std::string kDir = std::string(FSO_TEST_DIR) + "/cli";

    std::string path(const std::string& name)
    {
        return kDir + "/" + name;
    }

    void write(const std::string& name, const std::string& text)
    {
        std::filesystem::create_directories(kDir);
        std::ofstream(path(name)) << text;
    }

    std::string read(const std::string& name)
    {
        std::ifstream in(path(name), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    int run(const std::string& args, const std::string& stdout_name = "stdout.txt")
    {
        const std::string cmd = "'" + kExe + "' " + args + " > '" + path(stdout_name) + "' 2> '" +
                                path("stderr.txt") + "'";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    const char* kSweep = R"([array]
side = 2.0
rows = 4
cols = 4
beam_radius = 0.2
[channel]
beams = 3
fading_mean = 0.5
sigma_phi = 0.4
[pointing]
sigma_x = 0.08
[ppm]
order = 8
[sweep]
variable = snr_db
values = 0, 5, 10
combiners = mrc, egc
scenarios = single_full, multi_array, asymptotic_uniform_phase
trials = 3000
seed = 17
)";

    const char* kGa = R"([channel]
beams = 2
[ga]
population = 20
generations = 30
rho_min = 0.05
rho_max = 1.0
seed = 4
)";
}

TEST_CASE("sweep writes CSV and reruns are byte-identical across worker counts")
{
    write("sweep.ini", kSweep);
    REQUIRE(run("sweep --config '" + path("sweep.ini") + "' --out '" + path("a.csv") + "' --workers 1") == 0);
    REQUIRE(run("sweep --config '" + path("sweep.ini") + "' --out '" + path("b.csv") + "' --workers 4") == 0);
    REQUIRE(run("sweep --config '" + path("sweep.ini") + "' --out '" + path("c.csv") + "'") == 0);
    const std::string a = read("a.csv");
    CHECK(a.rfind("swept_value,combiner,scenario,estimate,std_error,trials,seed\n", 0) == 0);
    CHECK(a == read("b.csv"));
    CHECK(a == read("c.csv"));
    int rows = 0;
    for (char ch : a)
        rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 1 + 3 * 3 * 2);
    CHECK(a.find("0,MRC,single_full,") != std::string::npos);
    CHECK(a.find(",3000,17\n") != std::string::npos);

    REQUIRE(run("sweep --config '" + path("sweep.ini") + "' --out '" + path("d.csv") + "' --seed 18 --trials 500") ==
            0);
    const std::string d = read("d.csv");
    CHECK(d != a);
    CHECK(d.find(",500,18\n") != std::string::npos);
}

TEST_CASE("single-point grid gives a single data row")
{
    write("one.ini", "[sweep]\nvariable = N\nvalues = 4\ncombiners = egc\nscenarios = multi_array\ntrials = 100\n");
    REQUIRE(run("sweep --config '" + path("one.ini") + "' --out '" + path("one.csv") + "'") == 0);
    const std::string csv = read("one.csv");
    CHECK(csv.substr(csv.find('\n') + 1).rfind("4,EGC,multi_array,", 0) == 0);
    int rows = 0;
    for (char ch : csv)
        rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 2);
}

TEST_CASE("exit codes for configuration and I/O failures")
{
    write("bad.ini", "[array]\nside = 2\nradius = 0.2\n");
    CHECK(run("sweep --config '" + path("bad.ini") + "' --out '" + path("x.csv") + "'") == 1);
    CHECK(read("stderr.txt").find("line 3") != std::string::npos);
    CHECK(run("sweep --config '" + path("missing.ini") + "' --out '" + path("x.csv") + "'") == 1);
    write("nosweep.ini", "[channel]\nbeams = 2\n");
    CHECK(run("sweep --config '" + path("nosweep.ini") + "' --out '" + path("x.csv") + "'") == 1);
    CHECK(run("sweep --config '" + path("one.ini") + "' --out '" + kDir + "/no/such/dir/x.csv'") == 2);
    CHECK(run("frobnicate") == 1);
    CHECK(run("sweep --config '" + path("one.ini") + "'") == 1);
}

TEST_CASE("validate: every check listed once, fault injection fails")
{
    REQUIRE(run("validate --quick", "validate.txt") == 0);
    const std::string report = read("validate.txt");
    std::map<std::string, int> seen;
    std::istringstream lines(report);
    std::string line;
    int checks = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("PASS ", 0) != 0 && line.rfind("FAIL ", 0) != 0)
            continue;
        ++checks;
        ++seen[line.substr(5, line.find(':') - 5)];
    }
    CHECK(checks >= 8);
    for (const auto& [name, count] : seen)
        CHECK_MESSAGE(count == 1, name);
    CHECK(report.find("FAIL") == std::string::npos);
    CHECK(seen.contains("quadrature"));
    CHECK(seen.contains("tracker_variance"));
    CHECK(seen.contains("fading_ks"));

    CHECK(run("validate --quick --tolerance-scale 0", "broken.txt") == 3);
    CHECK(read("broken.txt").find("FAIL") != std::string::npos);
}

TEST_CASE("optimize: synthetic objective and history length")
{
    write("ga.ini", kGa);
    REQUIRE(run("optimize --config '" + path("ga.ini") + "' --out '" + path("hist.csv") + "' --synthetic",
                "summary.txt") == 0);
    const std::string summary = read("summary.txt");
    REQUIRE(summary.rfind("rho_star,pe_star\n", 0) == 0);
    const double rho = std::stod(summary.substr(summary.find('\n') + 1));
    CHECK(std::abs(rho - 0.3) < 0.005);
    const std::string hist = read("hist.csv");
    CHECK(hist.rfind("generation,best_rho,best_pe,mean_pe\n", 0) == 0);
    int rows = 0;
    for (char ch : hist)
        rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 1 + 30);

    CHECK(run("optimize --config '" + path("sweep.ini") + "' --out '" + path("h.csv") + "' --synthetic") == 1);
}
