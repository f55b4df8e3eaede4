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

#include "fso/array_geometry.hpp"

#include "fso/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fso
{
    namespace
    {
        constexpr double kQuadratureTolerance = 1e-13;
        constexpr unsigned kQuadratureDepth = 20;

        // P(a < Z < b) for a standard normal Z, evaluated on the tail that keeps precision.
        double normal_mass(double a, double b)
        {
            if (!(a < b))
                return 0.0;
            const double s = 1.0 / std::numbers::sqrt2;
            if (a >= 0.0)
                return 0.5 * (std::erfc(a * s) - std::erfc(b * s));
            if (b <= 0.0)
                return 0.5 * (std::erfc(-b * s) - std::erfc(-a * s));
            return 1.0 - 0.5 * (std::erfc(-a * s) + std::erfc(b * s));
        }

        // integral_a^b exp(-x^2 / (2 rho^2)) exp(-j 2 pi f x) dx
        std::complex<double> modulated_gaussian_segment(double a, double b, double radius, double frequency)
        {
            const double gaussian_mass =
                radius * std::sqrt(2.0 * std::numbers::pi) * normal_mass(a / radius, b / radius);
            if (frequency == 0.0 || gaussian_mass == 0.0)
                return {gaussian_mass, 0.0};

            using boost::math::quadrature::gauss_kronrod;
            const double inv_two_var = 1.0 / (2.0 * radius * radius);
            const double omega = 2.0 * std::numbers::pi * frequency;

            // The integrand is negligible beyond 40 standard deviations.
            const double lo = std::max(a, -40.0 * radius);
            const double hi = std::min(b, 40.0 * radius);
            if (!(lo < hi))
                return {0.0, 0.0};

            auto re = [&](double x) { return std::exp(-x * x * inv_two_var) * std::cos(omega * x); };
            auto im = [&](double x) { return -std::exp(-x * x * inv_two_var) * std::sin(omega * x); };
            double err = 0.0;
            const double real = gauss_kronrod<double, 31>::integrate(re, lo, hi, kQuadratureDepth,
                                                                     kQuadratureTolerance, &err);
            const double imag = gauss_kronrod<double, 31>::integrate(im, lo, hi, kQuadratureDepth,
                                                                     kQuadratureTolerance, &err);
            return {real, imag};
        }

        void require_radius(double radius)
        {
            if (!(radius > 0.0) || !std::isfinite(radius))
                throw InvalidParameter("beam radius must be positive, got " + std::to_string(radius));
        }
    }

    DetectorArray::DetectorArray(double side, int rows, int cols) : side_(side), rows_(rows), cols_(cols)
    {
        if (!(side > 0.0) || !std::isfinite(side))
            throw InvalidGeometry("array side must be positive, got " + std::to_string(side));
        if (rows < 1 || cols < 1)
            throw InvalidGeometry("array must have at least one row and one column");

        const double half = 0.5 * side;
        const double dx = side / cols;
        const double dy = side / rows;
        cells_.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
        for (int r = 0; r < rows; ++r) {
            // Outer edges are pinned to +-half so the tiling is exact.
            const double y_lo = r == 0 ? -half : -half + r * dy;
            const double y_hi = r == rows - 1 ? half : -half + (r + 1) * dy;
            for (int c = 0; c < cols; ++c) {
                const double x_lo = c == 0 ? -half : -half + c * dx;
                const double x_hi = c == cols - 1 ? half : -half + (c + 1) * dx;
                cells_.push_back({cells_.size(), x_lo, x_hi, y_lo, y_hi});
            }
        }
    }

    DetectorArray make_array(double side, int rows, int cols)
    {
        return DetectorArray(side, rows, cols);
    }

    double cell_energy(const Cell& cell, Point beam_center, double radius, double peak_intensity)
    {
        require_radius(radius);
        const double px = normal_mass((cell.x_lo - beam_center.x) / radius, (cell.x_hi - beam_center.x) / radius);
        const double py = normal_mass((cell.y_lo - beam_center.y) / radius, (cell.y_hi - beam_center.y) / radius);
        return 2.0 * std::numbers::pi * peak_intensity * px * py;
    }

    std::vector<double> cell_energies(const DetectorArray& array, Point beam_center, double radius,
                                      double peak_intensity)
    {
        require_radius(radius);
        // Separable: one column factor per grid column, one row factor per grid row.
        std::vector<double> px(static_cast<std::size_t>(array.cols()));
        std::vector<double> py(static_cast<std::size_t>(array.rows()));
        const auto cells = array.cells();
        for (int c = 0; c < array.cols(); ++c) {
            const Cell& cell = cells[static_cast<std::size_t>(c)];
            px[static_cast<std::size_t>(c)] =
                normal_mass((cell.x_lo - beam_center.x) / radius, (cell.x_hi - beam_center.x) / radius);
        }
        for (int r = 0; r < array.rows(); ++r) {
            const Cell& cell = cells[static_cast<std::size_t>(r * array.cols())];
            py[static_cast<std::size_t>(r)] =
                normal_mass((cell.y_lo - beam_center.y) / radius, (cell.y_hi - beam_center.y) / radius);
        }
        std::vector<double> out(array.size());
        const double scale = 2.0 * std::numbers::pi * peak_intensity;
        for (int r = 0; r < array.rows(); ++r)
            for (int c = 0; c < array.cols(); ++c)
                out[static_cast<std::size_t>(r * array.cols() + c)] =
                    scale * px[static_cast<std::size_t>(c)] * py[static_cast<std::size_t>(r)];
        return out;
    }

    std::complex<double> cross_energy(const Cell& cell, double du, double dv, double radius, double peak_intensity,
                                      double gamma)
    {
        require_radius(radius);
        if (!(gamma > 0.0 && gamma <= 1.0))
            throw InvalidParameter("power split factor must lie in (0, 1], got " + std::to_string(gamma));
        const auto fx = modulated_gaussian_segment(cell.x_lo, cell.x_hi, radius, du);
        const auto fy = modulated_gaussian_segment(cell.y_lo, cell.y_hi, radius, dv);
        return gamma * peak_intensity / (radius * radius) * fx * fy;
    }

    EnergyTensor::EnergyTensor(std::size_t cells, std::size_t beams)
        : cells_(cells), beams_(beams), values_(cells * beams * beams)
    {
    }

    double EnergyTensor::hermitian_defect() const
    {
        double worst = 0.0;
        for (std::size_t m = 0; m < cells_; ++m)
            for (std::size_t i = 0; i < beams_; ++i)
                for (std::size_t l = i; l < beams_; ++l)
                    worst = std::max(worst, std::abs(at(m, i, l) - std::conj(at(m, l, i))));
        return worst;
    }

    EnergyTensor energy_matrix(const DetectorArray& array, std::span<const BeamProfile> beams, double gamma)
    {
        if (beams.empty())
            throw InvalidParameter("energy_matrix needs at least one beam");
        const double radius = beams.front().radius;
        const double peak = beams.front().peak_intensity;
        for (const auto& beam : beams)
            if (beam.radius != radius || beam.peak_intensity != peak)
                throw InvalidParameter("all beams must share one radius and peak intensity");

        const std::size_t n = beams.size();
        EnergyTensor tensor(array.size(), n);
        for (const Cell& cell : array.cells()) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t l = i; l < n; ++l) {
                    const double du = beams[i].lens_offset.x - beams[l].lens_offset.x;
                    const double dv = beams[i].lens_offset.y - beams[l].lens_offset.y;
                    const auto value = cross_energy(cell, du, dv, radius, peak, gamma);
                    tensor.at(cell.index, i, l) = value;
                    tensor.at(cell.index, l, i) = std::conj(value);
                }
            }
        }
        return tensor;
    }

    double lens_frequency(double offset_on_lens, double wavelength, double focal_length)
    {
        if (!(wavelength > 0.0) || !(focal_length > 0.0))
            throw InvalidParameter("wavelength and focal length must be positive");
        return offset_on_lens / (wavelength * focal_length);
    }
}
