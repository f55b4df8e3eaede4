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

#include <complex>
#include <functional>

namespace fso::reference
{
    /// Composite Simpson rule on an n x n grid (n rounded up to even) over a
    /// rectangle. Brute force, used only to cross-check the production integrals.
    std::complex<double> simpson_2d(const std::function<std::complex<double>(double, double)>& f, double x_lo,
                                    double x_hi, double y_lo, double y_hi, int n);

    /// Brute-force counterparts of cell_energy and cross_energy that integrate
    /// the full 2-D integrand without separating it.
    double cell_energy_bruteforce(const Cell& cell, Point beam_center, double radius, double peak_intensity,
                                  int n);
    std::complex<double> cross_energy_bruteforce(const Cell& cell, double du, double dv, double radius,
                                                 double peak_intensity, double gamma, int n);
}
