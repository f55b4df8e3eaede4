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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fso
{
    /// Pairwise (cascade) summation. The result depends only on the order of
    /// the input, never on how the input was produced.
    double pairwise_sum(std::span<const double> values);

    struct SampleSummary
    {
        double mean = 0.0;
        double standard_error = 0.0;  // sample std / sqrt(n), 0 for n < 2
    };

    SampleSummary summarize(std::span<const double> values);

    /// Two-sided one-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
    double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

    /// Asymptotic p-value of the KS statistic with Stephens' small-sample correction.
    double ks_pvalue(double statistic, std::size_t n);

    struct ChiSquareResult
    {
        double statistic = 0.0;
        int degrees_of_freedom = 0;
        double p_value = 1.0;
    };

    /// Goodness of fit of observed counts to category probabilities. Adjacent
    /// categories are pooled until every expected count is at least 5.
    ChiSquareResult chi_square_test(std::span<const long> observed, std::span<const double> probabilities);

    /// Standard normal quantile.
    double normal_quantile(double p);
}
