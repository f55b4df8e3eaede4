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

#include "fso/statistics.hpp"

#include "fso/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

namespace fso
{
    double pairwise_sum(std::span<const double> values)
    {
        constexpr std::size_t block = 16;
        if (values.size() <= block) {
            double s = 0.0;
            for (double v : values)
                s += v;
            return s;
        }
        const std::size_t half = values.size() / 2;
        return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
    }

    SampleSummary summarize(std::span<const double> values)
    {
        SampleSummary out;
        const std::size_t n = values.size();
        if (n == 0)
            return out;
        out.mean = pairwise_sum(values) / static_cast<double>(n);
        if (n < 2)
            return out;
        std::vector<double> dev(n);
        for (std::size_t i = 0; i < n; ++i)
            dev[i] = (values[i] - out.mean) * (values[i] - out.mean);
        const double variance = pairwise_sum(dev) / static_cast<double>(n - 1);
        out.standard_error = std::sqrt(variance / static_cast<double>(n));
        return out;
    }

    double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf)
    {
        if (sample.empty())
            throw InvalidParameter("KS statistic needs a non-empty sample");
        std::sort(sample.begin(), sample.end());
        const double n = static_cast<double>(sample.size());
        double d = 0.0;
        for (std::size_t i = 0; i < sample.size(); ++i) {
            const double f = cdf(sample[i]);
            d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
        }
        return d;
    }

    double ks_pvalue(double statistic, std::size_t n)
    {
        const double rn = std::sqrt(static_cast<double>(n));
        const double lambda = (rn + 0.12 + 0.11 / rn) * statistic;
        if (lambda < 0.2)
            return 1.0;
        double sum = 0.0;
        for (int k = 1; k <= 100; ++k) {
            const double term = std::exp(-2.0 * k * k * lambda * lambda);
            sum += (k % 2 == 1 ? term : -term);
            if (term < 1e-17)
                break;
        }
        return std::clamp(2.0 * sum, 0.0, 1.0);
    }

    ChiSquareResult chi_square_test(std::span<const long> observed, std::span<const double> probabilities)
    {
        if (observed.size() != probabilities.size() || observed.empty())
            throw InvalidParameter("observed and expected categories differ in number");
        double total = 0.0;
        for (long o : observed)
            total += static_cast<double>(o);

        std::vector<double> obs;
        std::vector<double> exp;
        double o_acc = 0.0;
        double e_acc = 0.0;
        for (std::size_t k = 0; k < observed.size(); ++k) {
            o_acc += static_cast<double>(observed[k]);
            e_acc += probabilities[k] * total;
            if (e_acc >= 5.0) {
                obs.push_back(o_acc);
                exp.push_back(e_acc);
                o_acc = e_acc = 0.0;
            }
        }
        if (e_acc > 0.0 || o_acc > 0.0) {
            if (exp.empty()) {
                obs.push_back(o_acc);
                exp.push_back(e_acc);
            } else {
                obs.back() += o_acc;
                exp.back() += e_acc;
            }
        }

        ChiSquareResult r;
        r.degrees_of_freedom = static_cast<int>(exp.size()) - 1;
        for (std::size_t k = 0; k < exp.size(); ++k)
            r.statistic += (obs[k] - exp[k]) * (obs[k] - exp[k]) / exp[k];
        if (r.degrees_of_freedom < 1) {
            r.p_value = 1.0;
            return r;
        }
        const boost::math::chi_squared dist(r.degrees_of_freedom);
        r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
        return r;
    }

    double normal_quantile(double p)
    {
        if (!(p > 0.0 && p < 1.0))
            throw InvalidParameter("quantile level must lie in (0, 1)");
        return boost::math::quantile(boost::math::normal(), p);
    }
}
