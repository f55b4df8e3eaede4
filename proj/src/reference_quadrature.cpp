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

#include "fso/reference_quadrature.hpp"

#include <cmath>
#include <numbers>

namespace fso::reference
{
    std::complex<double> simpson_2d(const std::function<std::complex<double>(double, double)>& f, double x_lo,
                                    double x_hi, double y_lo, double y_hi, int n)
    {
        if (n < 2)
            n = 2;
        if (n % 2 != 0)
            ++n;
        const double hx = (x_hi - x_lo) / n;
        const double hy = (y_hi - y_lo) / n;
        auto weight = [n](int k) { return (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0); };

        std::complex<double> total = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double y = y_lo + j * hy;
            std::complex<double> row = 0.0;
            for (int i = 0; i <= n; ++i)
                row += weight(i) * f(x_lo + i * hx, y);
            total += weight(j) * row;
        }
        return total * (hx * hy / 9.0);
    }

    double cell_energy_bruteforce(const Cell& cell, Point c, double radius, double peak_intensity, int n)
    {
        const double scale = peak_intensity / (radius * radius);
        const double inv = 1.0 / (2.0 * radius * radius);
        auto f = [&](double x, double y) -> std::complex<double> {
            const double dx = x - c.x;
            const double dy = y - c.y;
            return scale * std::exp(-(dx * dx + dy * dy) * inv);
        };
        return simpson_2d(f, cell.x_lo, cell.x_hi, cell.y_lo, cell.y_hi, n).real();
    }

    std::complex<double> cross_energy_bruteforce(const Cell& cell, double du, double dv, double radius,
                                                 double peak_intensity, double gamma, int n)
    {
        const double scale = gamma * peak_intensity / (radius * radius);
        const double inv = 1.0 / (2.0 * radius * radius);
        const double two_pi = 2.0 * std::numbers::pi;
        auto f = [&](double x, double y) {
            const double envelope = scale * std::exp(-(x * x + y * y) * inv);
            const double phase = -two_pi * (du * x + dv * y);
            return std::complex<double>(envelope * std::cos(phase), envelope * std::sin(phase));
        };
        return simpson_2d(f, cell.x_lo, cell.x_hi, cell.y_lo, cell.y_hi, n);
    }
}
