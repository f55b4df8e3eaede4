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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fso
{
    struct Point
    {
        double x = 0.0;
        double y = 0.0;
    };

    /// One square detector of the array. Coordinates in millimetres.
    struct Cell
    {
        std::size_t index = 0;
        double x_lo = 0.0;
        double x_hi = 0.0;
        double y_lo = 0.0;
        double y_hi = 0.0;

        double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
    };

    /// Square detector array centred at the origin, cells enumerated row-major
    /// starting from the (x_lo, y_lo) corner.
    class DetectorArray
    {
    public:
        DetectorArray(double side, int rows, int cols);

        double side() const { return side_; }
        int rows() const { return rows_; }
        int cols() const { return cols_; }
        std::size_t size() const { return cells_.size(); }
        std::span<const Cell> cells() const { return cells_; }
        const Cell& cell(std::size_t m) const { return cells_.at(m); }

    private:
        double side_;
        int rows_;
        int cols_;
        std::vector<Cell> cells_;
    };

    /// Throws InvalidGeometry for a non-positive side or an empty grid.
    DetectorArray make_array(double side, int rows, int cols);

    /// One received beam. Peak intensity and radius are shared by all beams
    /// of a link; the remaining fields are per beam.
    struct BeamProfile
    {
        double peak_intensity = 1.0;     // energy / mm^2 / slot
        double radius = 0.2;             // mm
        Point center;                    // mm
        Point lens_offset;               // cycles / mm, (u_i, v_i)
        double channel_magnitude = 1.0;  // ||h_i||
        double power_fraction = 1.0;     // beta_i
        double phase = 0.0;              // radians
    };

    /// Energy of a circular Gaussian spot captured by one cell:
    /// integral over the cell of (peak / rho^2) exp(-|r - c|^2 / (2 rho^2)).
    /// Cell limits may be infinite.
    double cell_energy(const Cell& cell, Point beam_center, double radius, double peak_intensity = 1.0);

    /// cell_energy for every cell of the array.
    std::vector<double> cell_energies(const DetectorArray& array, Point beam_center, double radius,
                                      double peak_intensity = 1.0);

    /// Overlap energy of two beams centred at the origin whose lens offsets differ
    /// by (du, dv): gamma * integral over the cell of
    /// (peak / rho^2) exp(-|r|^2 / (2 rho^2)) exp(-j 2 pi (du x + dv y)).
    std::complex<double> cross_energy(const Cell& cell, double du, double dv, double radius,
                                      double peak_intensity = 1.0, double gamma = 1.0);

    /// M x N x N overlap tensor; entry (m, i, l) is the (i, l) cross energy in cell m.
    class EnergyTensor
    {
    public:
        EnergyTensor() = default;
        EnergyTensor(std::size_t cells, std::size_t beams);

        std::size_t cells() const { return cells_; }
        std::size_t beams() const { return beams_; }

        std::complex<double>& at(std::size_t m, std::size_t i, std::size_t l)
        {
            return values_[(m * beams_ + i) * beams_ + l];
        }
        const std::complex<double>& at(std::size_t m, std::size_t i, std::size_t l) const
        {
            return values_[(m * beams_ + i) * beams_ + l];
        }

        /// Largest |x(m,i,l) - conj(x(m,l,i))| over the tensor.
        double hermitian_defect() const;

    private:
        std::size_t cells_ = 0;
        std::size_t beams_ = 0;
        std::vector<std::complex<double>> values_;
    };

    /// Builds the overlap tensor for beams sharing one radius and peak intensity.
    /// Beam centres are ignored: the overlapping beams sit at the array centre.
    EnergyTensor energy_matrix(const DetectorArray& array, std::span<const BeamProfile> beams, double gamma);

    /// Spatial frequency on the detector plane for a beam centred u' mm off the
    /// lens axis: u' / (wavelength * focal_length).
    double lens_frequency(double offset_on_lens, double wavelength, double focal_length);
}
