// SPDX-License-Identifier: Apache-2.0
//
// vmfcorr - correlation functions for channels with von Mises-Fisher scattering
// Copyright (C) 2026 The vmfcorr Authors
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

#ifndef VMFCORR_ARRAYS_HPP
#define VMFCORR_ARRAYS_HPP

#include "correlation.hpp"
#include "errors.hpp"
#include "vec3.hpp"
#include "vmf.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace vmfcorr
{
    // Minimum separation between two array elements [m]
    inline constexpr double min_element_separation = 1e-9;

    // Ordered element positions with a designated reference element
    // - path_coordinates holds the signed distance of each element along the array path,
    //   relative to the reference element
    class array_geometry
    {
    public:
        // Path coordinates default to the cumulative polyline length through the elements
        array_geometry(std::vector<vec3> positions, std::size_t reference_index)
            : array_geometry(std::move(positions), reference_index, {}) {}

        array_geometry(std::vector<vec3> positions, std::size_t reference_index, std::vector<double> path_coordinates)
            : positions_(std::move(positions)), reference_(reference_index), path_(std::move(path_coordinates))
        {
            detail::require(!positions_.empty(), "array_geometry: at least one element is required");
            detail::require(reference_ < positions_.size(), "array_geometry: reference index out of range");
            for (std::size_t i = 0; i < positions_.size(); ++i)
            {
                detail::require(is_finite(positions_[i]), "array_geometry: positions must be finite");
                for (std::size_t k = 0; k < i; ++k)
                    detail::require(norm(positions_[i] - positions_[k]) >= min_element_separation,
                                    "array_geometry: duplicate element positions");
            }
            if (path_.empty())
                path_ = polyline_coordinates();
            detail::require(path_.size() == positions_.size(), "array_geometry: path coordinate count mismatch");
        }

        std::size_t size() const { return positions_.size(); }
        std::size_t reference_index() const { return reference_; }
        const std::vector<vec3> &positions() const { return positions_; }
        const vec3 &reference_position() const { return positions_[reference_]; }
        const std::vector<double> &path_coordinates() const { return path_; }

    private:
        std::vector<double> polyline_coordinates() const
        {
            std::vector<double> s(positions_.size(), 0.0);
            for (std::size_t i = 1; i < s.size(); ++i)
                s[i] = s[i - 1] + norm(positions_[i] - positions_[i - 1]);
            const double s_ref = s[reference_];
            for (auto &v : s)
                v -= s_ref;
            return s;
        }

        std::vector<vec3> positions_;
        std::size_t reference_;
        std::vector<double> path_;
    };

    // n equispaced elements along axis; the reference sits at the origin, index (n - 1) / 2
    inline array_geometry linear_array(std::size_t n, double spacing, const direction &axis)
    {
        detail::require(n >= 1, "linear_array: n must be >= 1");
        detail::require(std::isfinite(spacing) && spacing > 0.0, "linear_array: spacing must be positive");
        const std::size_t ref = (n - 1) / 2;
        std::vector<vec3> pos(n);
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            s[i] = (double(i) - double(ref)) * spacing;
            pos[i] = s[i] * axis.unit();
        }
        return {std::move(pos), ref, std::move(s)};
    }

    // n elements uniformly spaced on a horizontal circle that passes through the origin
    // - Circle center at (0, -radius, 0); positive path coordinate is counterclockwise seen from +z
    // - Reference element at the origin, index (n - 1) / 2
    inline array_geometry circular_array(std::size_t n, double radius)
    {
        detail::require(n >= 1, "circular_array: n must be >= 1");
        detail::require(std::isfinite(radius) && radius > 0.0, "circular_array: radius must be positive");
        const std::size_t ref = (n - 1) / 2;
        const double arc = 2.0 * pi * radius / double(n);
        std::vector<vec3> pos(n);
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            s[i] = (double(i) - double(ref)) * arc;
            const double theta = s[i] / radius;
            const double half = std::sin(0.5 * theta);
            pos[i] = {-radius * std::sin(theta), -2.0 * radius * half * half, 0.0};
        }
        return {std::move(pos), ref, std::move(s)};
    }

    // nx-by-ny horizontal grid, x index fastest; reference at the origin
    inline array_geometry planar_grid(std::size_t nx, std::size_t ny, double dx, double dy)
    {
        detail::require(nx >= 1 && ny >= 1, "planar_grid: counts must be >= 1");
        detail::require(std::isfinite(dx) && dx > 0.0 && std::isfinite(dy) && dy > 0.0,
                        "planar_grid: spacings must be positive");
        const std::size_t rx = (nx - 1) / 2, ry = (ny - 1) / 2;
        std::vector<vec3> pos;
        pos.reserve(nx * ny);
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i)
                pos.push_back({(double(i) - double(rx)) * dx, (double(j) - double(ry)) * dy, 0.0});
        const std::size_t ref = ry * nx + rx;
        if (ny == 1)
        {
            std::vector<double> s(nx);
            for (std::size_t i = 0; i < nx; ++i)
                s[i] = pos[i].x;
            return {std::move(pos), ref, std::move(s)};
        }
        return {std::move(pos), ref};
    }

    // Hermitian matrix of pairwise correlations; entry (i, k) uses displacement p_k - p_i
    struct correlation_matrix
    {
        Eigen::MatrixXcd entries;

        std::size_t dimension() const { return std::size_t(entries.rows()); }

        double min_eigenvalue() const
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries, Eigen::EigenvaluesOnly);
            return solver.eigenvalues().minCoeff();
        }

        double max_hermitian_error() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }
    };

    // Upper triangle evaluated, lower triangle mirrored, so the result is exactly Hermitian
    inline correlation_matrix make_correlation_matrix(const array_geometry &g, std::span<const vmf_cluster> clusters,
                                                      double wavelength)
    {
        check_power_normalization(clusters);
        const auto &p = g.positions();
        const auto n = Eigen::Index(g.size());
        correlation_matrix m;
        m.entries.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            m.entries(i, i) = 1.0;
            for (Eigen::Index k = i + 1; k < n; ++k)
            {
                const complex r = scf_multicluster(clusters, displacement(p[k] - p[i]), wavelength);
                m.entries(i, k) = r;
                m.entries(k, i) = std::conj(r);
            }
        }
        return m;
    }

    struct path_sample
    {
        double path_distance; // Signed coordinate along the path [m]
        complex value;
    };

    // Correlation between the reference element and every element, ordered as in the geometry
    inline std::vector<path_sample> scf_along_path(const array_geometry &g, std::span<const vmf_cluster> clusters,
                                                   double wavelength)
    {
        check_power_normalization(clusters);
        std::vector<path_sample> out;
        out.reserve(g.size());
        const vec3 &ref = g.reference_position();
        for (std::size_t i = 0; i < g.size(); ++i)
            out.push_back({g.path_coordinates()[i],
                           scf_multicluster(clusters, displacement(g.positions()[i] - ref), wavelength)});
        return out;
    }

    struct stationarity_report
    {
        bool is_even_in_magnitude = true;
        double max_asymmetry = 0.0; // max over s of ||R(s)| - |R(-s)||
    };

    // Compares |R(s)| with |R(-s)| for every nonzero path coordinate
    // - Throws mismatch_error if any sample lacks a partner at the mirrored coordinate
    inline stationarity_report stationarity_check(std::span<const path_sample> curve, double tol)
    {
        detail::require(tol >= 0.0, "stationarity_check: tolerance must be >= 0");
        double scale = 0.0;
        for (const auto &c : curve)
            scale = std::max(scale, std::abs(c.path_distance));
        const double match_tol = 1e-9 * std::max(scale, 1.0);

        stationarity_report rep;
        bool any_pair = false;
        for (const auto &a : curve)
        {
            if (std::abs(a.path_distance) <= match_tol)
                continue;
            auto partner = std::find_if(curve.begin(), curve.end(), [&](const path_sample &b)
                                        { return std::abs(a.path_distance + b.path_distance) <= match_tol; });
            if (partner == curve.end())
                throw mismatch_error("stationarity_check: no sample at mirrored path distance " +
                                     std::to_string(-a.path_distance));
            any_pair = true;
            rep.max_asymmetry = std::max(rep.max_asymmetry, std::abs(std::abs(a.value) - std::abs(partner->value)));
        }
        if (!any_pair)
            throw mismatch_error("stationarity_check: curve has no +/- matched samples");
        rep.is_even_in_magnitude = rep.max_asymmetry < tol;
        return rep;
    }
}

#endif
