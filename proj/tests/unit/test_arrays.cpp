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

#include <catch_amalgamated.hpp>

#include <vmfcorr/arrays.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace vmfcorr;
using Catch::Matchers::WithinAbs;

namespace
{
    constexpr double lambda = 1.0;

    std::vector<vmf_cluster> one(double mu_phi, double mu_psi, double kappa)
    {
        return {vmf_cluster(mu_phi, mu_psi, kappa)};
    }

    double path_value(const std::vector<path_sample> &curve, double s)
    {
        auto it = std::find_if(curve.begin(), curve.end(), [&](const path_sample &p)
                               { return std::abs(p.path_distance - s) < 1e-9; });
        REQUIRE(it != curve.end());
        return std::abs(it->value);
    }
}

TEST_CASE("linear_array - Positions and path coordinates")
{
    const auto g = linear_array(5, 0.5, direction::from_angles(pi / 2.0, 0.0));
    REQUIRE(g.size() == 5);
    CHECK(g.reference_index() == 2);
    CHECK(norm(g.reference_position()) == 0.0);
    for (std::size_t i = 0; i < 5; ++i)
    {
        const double s = 0.5 * (double(i) - 2.0);
        CHECK_THAT(g.path_coordinates()[i], WithinAbs(s, 1e-15));
        CHECK_THAT(g.positions()[i].y, WithinAbs(s, 1e-15));
        CHECK_THAT(g.positions()[i].x, WithinAbs(0.0, 1e-15));
    }
    CHECK(linear_array(4, 1.0, direction::from_angles(0.0, 0.0)).reference_index() == 1);
    CHECK_THROWS_AS(linear_array(0, 1.0, direction::from_angles(0.0, 0.0)), vmfcorr::domain_error);
    CHECK_THROWS_AS(linear_array(3, -1.0, direction::from_angles(0.0, 0.0)), vmfcorr::domain_error);
}

TEST_CASE("circular_array - Elements on the circle")
{
    const double r = 3.0 / pi;
    const auto g = circular_array(12, r);
    const vec3 center{0.0, -r, 0.0};
    CHECK(norm(g.reference_position()) < 1e-15);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK_THAT(norm(g.positions()[i] - center), WithinAbs(r, 1e-14));

    // Neighbours are one chord apart, positive path coordinate is counterclockwise
    const double chord = 2.0 * r * std::sin(pi / 12.0);
    for (std::size_t i = 1; i < g.size(); ++i)
        CHECK_THAT(norm(g.positions()[i] - g.positions()[i - 1]), WithinAbs(chord, 1e-14));
    const std::size_t ref = g.reference_index();
    const vec3 a = g.positions()[ref] - center, b = g.positions()[ref + 1] - center;
    CHECK(cross(a, b).z > 0.0);
    CHECK(g.path_coordinates()[ref + 1] > 0.0);
}

TEST_CASE("planar_grid - Layout and reduction to a line")
{
    const auto g = planar_grid(3, 2, 0.5, 0.25);
    REQUIRE(g.size() == 6);
    CHECK(g.reference_index() == 1);
    CHECK(g.positions()[4] == vec3{0.0, 0.25, 0.0});

    const auto row = planar_grid(3, 1, 0.5, 0.5);
    const auto line = linear_array(3, 0.5, direction::from_angles(0.0, 0.0));
    CHECK(row.reference_index() == line.reference_index());
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(norm(row.positions()[i] - line.positions()[i]) < 1e-15);
        CHECK_THAT(row.path_coordinates()[i], WithinAbs(line.path_coordinates()[i], 1e-15));
    }
}

TEST_CASE("array_geometry - Validation")
{
    CHECK_THROWS_AS(array_geometry({}, 0), vmfcorr::domain_error);
    CHECK_THROWS_AS(array_geometry({{0, 0, 0}, {1, 0, 0}}, 2), vmfcorr::domain_error);
    CHECK_THROWS_AS(array_geometry({{0, 0, 0}, {0, 0, 1e-12}}, 0), vmfcorr::domain_error);
    CHECK_THROWS_AS(array_geometry({{0, 0, 0}, {1, 0, 0}}, 0, {0.0}), vmfcorr::domain_error);

    // Default path coordinate is the polyline length from the reference
    const array_geometry g({{0, 0, 0}, {3, 4, 0}, {3, 4, 1}}, 1);
    CHECK(g.path_coordinates() == std::vector<double>{-5.0, 0.0, 1.0});
}

TEST_CASE("make_correlation_matrix - Small cases")
{
    const auto c = one(0.0, 0.0, 0.0);
    const array_geometry single({{0, 0, 0}}, 0);
    const auto m1 = make_correlation_matrix(single, c, lambda);
    REQUIRE(m1.dimension() == 1);
    CHECK(m1.entries(0, 0) == complex(1.0, 0.0));

    const auto pair = linear_array(2, lambda / 2.0, direction::from_angles(0.0, 0.0));
    const auto m2 = make_correlation_matrix(pair, c, lambda);
    CHECK(std::abs(m2.entries(0, 1)) < 1e-15);
    CHECK(std::abs(m2.entries(1, 0)) < 1e-15);
    CHECK_THAT(m2.min_eigenvalue(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("make_correlation_matrix - Hermitian and positive semidefinite")
{
    const auto g = linear_array(16, lambda / 2.0, direction::from_angles(0.0, 0.0));
    const auto m = make_correlation_matrix(g, one(0.3, 0.1, 10.0), lambda);
    CHECK(m.max_hermitian_error() == 0.0);
    CHECK(m.min_eigenvalue() >= -1e-10);
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i)
        CHECK(m.entries(i, i) == complex(1.0, 0.0));
    CHECK(m.entries(2, 5) == scf(vmf_cluster(0.3, 0.1, 10.0), displacement(g.positions()[5] - g.positions()[2]), lambda));
}

TEST_CASE("make_correlation_matrix - Random geometries and clusters")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> count(2, 64), nc(1, 3);
    for (int trial = 0; trial < 30; ++trial)
    {
        std::vector<vec3> pos(count(rng));
        for (auto &p : pos)
            p = {4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0};
        const array_geometry g(pos, 0);

        std::vector<vmf_cluster> clusters;
        const std::size_t k = nc(rng);
        for (std::size_t i = 0; i < k; ++i)
            clusters.emplace_back(2.0 * pi * u(rng) - pi, std::asin(2.0 * u(rng) - 1.0), 200.0 * u(rng),
                                  1.0 / double(k));
        const auto m = make_correlation_matrix(g, clusters, lambda);
        INFO("trial " << trial << ", n = " << g.size());
        REQUIRE(m.min_eigenvalue() >= -1e-10);
        REQUIRE(m.max_hermitian_error() == 0.0);
    }
}

TEST_CASE("make_correlation_matrix - Power normalization")
{
    const std::vector<vmf_cluster> bad{vmf_cluster(0.0, 0.0, 1.0, 0.5), vmf_cluster(1.0, 0.0, 1.0, 0.4)};
    CHECK_THROWS_AS(make_correlation_matrix(linear_array(3, 0.5, direction::from_angles(0.0, 0.0)), bad, lambda),
                    vmfcorr::normalization_error);
}

TEST_CASE("scf_along_path - Linear array is even in magnitude")
{
    const auto g = linear_array(61, lambda / 10.0, direction::from_angles(0.4, 0.2));
    for (double kappa : {0.0, 3.0, 30.0, 300.0})
    {
        const auto curve = scf_along_path(g, one(1.1, 0.3, kappa), lambda);
        CHECK(curve[g.reference_index()].value == complex(1.0, 0.0));
        const auto rep = stationarity_check(curve, 1e-12);
        INFO("kappa = " << kappa);
        CHECK(rep.is_even_in_magnitude);
        CHECK(rep.max_asymmetry < 1e-12);
    }
}

TEST_CASE("scf_along_path - Circular array is not even for a directional cluster")
{
    const auto g = circular_array(121, 3.0 / pi);
    const auto curve = scf_along_path(g, one(pi / 4.0, 0.0, 10.0), lambda);
    const auto rep = stationarity_check(curve, 1e-10);
    CHECK_FALSE(rep.is_even_in_magnitude);
    CHECK(rep.max_asymmetry > 0.01);
    // Cluster at 45 degrees: the counterclockwise side, moving towards -x, decorrelates more slowly
    const double s = g.path_coordinates()[g.reference_index() + 10];
    CHECK(path_value(curve, s) > path_value(curve, -s));

    const auto iso = stationarity_check(scf_along_path(g, one(pi / 4.0, 0.0, 0.0), lambda), 1e-10);
    CHECK(iso.is_even_in_magnitude);
}

TEST_CASE("stationarity_check - Mismatched coordinates")
{
    const std::vector<path_sample> ragged{{-1.0, 1.0}, {0.0, 1.0}, {0.7, 1.0}};
    CHECK_THROWS_AS(stationarity_check(ragged, 1e-10), vmfcorr::mismatch_error);
    const std::vector<path_sample> lone{{0.0, 1.0}};
    CHECK_THROWS_AS(stationarity_check(lone, 1e-10), vmfcorr::mismatch_error);
    const std::vector<path_sample> asym{{-1.0, 0.5}, {0.0, 1.0}, {1.0, 0.25}};
    const auto rep = stationarity_check(asym, 1e-10);
    CHECK_THAT(rep.max_asymmetry, WithinAbs(0.25, 1e-15));
}

TEST_CASE("Planar grid - Directional elongation")
{
    // Cluster at 45 degrees azimuth: the two grid diagonals behave differently
    const auto c = one(pi / 4.0, 0.0, 10.0);
    const auto g = planar_grid(21, 21, lambda / 10.0, lambda / 10.0);
    const auto m = make_correlation_matrix(g, c, lambda);
    const std::size_t ref = g.reference_index();
    // Along the mean direction correlation decays more slowly than across it
    const std::size_t along = ref + 5 * 21 + 5, across = ref + 5 * 21 - 5;
    CHECK(std::abs(m.entries(Eigen::Index(ref), Eigen::Index(along))) >
          std::abs(m.entries(Eigen::Index(ref), Eigen::Index(across))));

    // Isotropic: depends on distance only
    const auto iso = make_correlation_matrix(g, one(0.0, 0.0, 0.0), lambda);
    CHECK_THAT(std::abs(iso.entries(Eigen::Index(ref), Eigen::Index(ref + 5))),
               WithinAbs(std::abs(iso.entries(Eigen::Index(ref), Eigen::Index(ref + 5 * 21))), 1e-14));
}
