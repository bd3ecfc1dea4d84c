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

#ifndef VMFCORR_VMF_HPP
#define VMFCORR_VMF_HPP

#include "errors.hpp"
#include "special_functions.hpp"
#include "vec3.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace vmfcorr
{
    inline constexpr double pi = std::numbers::pi;

    // Unit direction vector (cos(phi) cos(psi), sin(phi) cos(psi), sin(psi))
    // - phi is the azimuth, psi the elevation in [-pi/2, pi/2], both in radians
    class direction
    {
    public:
        direction() = default;

        static direction from_angles(double phi, double psi)
        {
            detail::require(std::isfinite(phi) && std::isfinite(psi), "direction: angles must be finite");
            detail::require(std::abs(psi) <= pi / 2.0, "direction: elevation outside [-pi/2, pi/2]");
            const double cpsi = std::cos(psi);
            return direction(vec3{std::cos(phi) * cpsi, std::sin(phi) * cpsi, std::sin(psi)});
        }

        // Normalizes an arbitrary nonzero vector
        static direction from_vector(const vec3 &v)
        {
            const double n = norm(v);
            detail::require(n > 0.0 && std::isfinite(n), "direction: vector must be finite and nonzero");
            return direction(v * (1.0 / n));
        }

        const vec3 &unit() const { return unit_; }
        double phi() const { return std::atan2(unit_.y, unit_.x); }
        double psi() const { return std::asin(std::clamp(unit_.z, -1.0, 1.0)); }

    private:
        explicit direction(const vec3 &u) : unit_(u) {}
        vec3 unit_{1.0, 0.0, 0.0};
    };

    inline direction direction_from_angles(double phi, double psi) { return direction::from_angles(phi, psi); }

    // One cluster of von Mises-Fisher distributed scatterers
    class vmf_cluster
    {
    public:
        // mu_phi: mean azimuth [rad], mu_psi: mean elevation [rad], kappa: concentration (>= 0),
        // power: normalized cluster power in (0, 1]
        vmf_cluster(double mu_phi, double mu_psi, double kappa, double power = 1.0)
            : mu_phi_(mu_phi), mu_psi_(mu_psi), kappa_(kappa), power_(power)
        {
            detail::require(std::isfinite(mu_phi) && std::isfinite(mu_psi), "vmf_cluster: mean angles must be finite");
            detail::require(std::abs(mu_psi) <= pi / 2.0, "vmf_cluster: mu_psi outside [-pi/2, pi/2]");
            detail::require(std::isfinite(kappa) && kappa >= 0.0, "vmf_cluster: kappa must be >= 0");
            detail::require(std::isfinite(power) && power > 0.0 && power <= 1.0, "vmf_cluster: power must be in (0, 1]");
            mean_ = direction::from_angles(mu_phi, mu_psi);
        }

        double mu_phi() const { return mu_phi_; }
        double mu_psi() const { return mu_psi_; }
        double kappa() const { return kappa_; }
        double power() const { return power_; }
        const direction &mean_direction() const { return mean_; }

        vmf_cluster with_power(double power) const { return {mu_phi_, mu_psi_, kappa_, power}; }

    private:
        double mu_phi_, mu_psi_, kappa_, power_;
        direction mean_;
    };

    // Log of the vMF density in the (phi, psi) angle measure
    inline double vmf_log_pdf(const vmf_cluster &c, double phi, double psi)
    {
        detail::require(std::isfinite(phi), "vmf_pdf: azimuth must be finite");
        detail::require(std::abs(psi) <= pi / 2.0, "vmf_pdf: elevation outside [-pi/2, pi/2]");
        const double cos_psi = std::cos(psi);
        if (cos_psi <= 0.0)
            return -INFINITY;
        const double kappa = c.kappa();
        const double log_norm = log_kappa_over_sinh(kappa) - std::log(4.0 * pi);
        if (kappa == 0.0)
            return log_norm + std::log(cos_psi);
        const double dot_mu = std::cos(c.mu_psi()) * cos_psi * std::cos(phi - c.mu_phi()) +
                              std::sin(c.mu_psi()) * std::sin(psi);
        return log_norm + kappa * dot_mu + std::log(cos_psi);
    }

    // vMF density p(phi, psi) = kappa cos(psi) / (4 pi sinh kappa) * exp(kappa * mu^T k(phi, psi))
    inline double vmf_pdf(const vmf_cluster &c, double phi, double psi)
    {
        return std::exp(vmf_log_pdf(c, phi, psi));
    }

    // Expected mean resultant length A(kappa) = coth(kappa) - 1/kappa
    inline double mean_resultant_length(double kappa)
    {
        detail::require(kappa >= 0.0, "mean_resultant_length: kappa must be >= 0");
        if (kappa == 0.0)
            return 0.0;
        if (kappa < 1e-3)
            return kappa / 3.0 - kappa * kappa * kappa / 45.0;
        return 1.0 / std::tanh(kappa) - 1.0 / kappa;
    }

    // Concentration for which the density at half the angular width falls to exp(-2) of its peak
    inline double kappa_from_angular_width(double delta_theta)
    {
        detail::require(std::isfinite(delta_theta) && delta_theta > 0.0 && delta_theta < 2.0 * pi,
                        "kappa_from_angular_width: width must be in (0, 2 pi)");
        // 1 - cos(x) = 2 sin^2(x/2), avoids cancellation for narrow targets
        const double s = std::sin(delta_theta / 4.0);
        return 1.0 / (s * s);
    }

    // Two unit vectors completing u to a right-handed orthonormal basis
    inline void orthonormal_complement(const vec3 &u, vec3 &e1, vec3 &e2)
    {
        const vec3 helper = std::abs(u.z) < 0.9 ? vec3{0.0, 0.0, 1.0} : vec3{1.0, 0.0, 0.0};
        e1 = cross(helper, u);
        e1 = e1 * (1.0 / norm(e1));
        e2 = cross(u, e1);
    }

    namespace detail
    {
        inline std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        // Stream seed derived from (seed, a, b), independent of evaluation order
        inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
        {
            return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
        }

        // Cosine of the angle to the mean axis from a uniform u in [0, 1)
        // w = 1 + log(u + (1 - u) exp(-2 kappa)) / kappa, written with log1p/expm1
        inline double vmf_axial_component(double kappa, double u)
        {
            if (kappa == 0.0)
                return 2.0 * u - 1.0;
            const double w = 1.0 + std::log1p((1.0 - u) * std::expm1(-2.0 * kappa)) / kappa;
            return std::clamp(w, -1.0, 1.0);
        }

        template <typename Rng>
        vec3 draw_vmf(const vmf_cluster &c, const vec3 &e1, const vec3 &e2, Rng &rng)
        {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            const double w = vmf_axial_component(c.kappa(), unif(rng));
            const double alpha = 2.0 * pi * unif(rng);
            const double r = std::sqrt(std::max(0.0, 1.0 - w * w));
            const vec3 &mu = c.mean_direction().unit();
            return w * mu + (r * std::cos(alpha)) * e1 + (r * std::sin(alpha)) * e2;
        }
    }

    // Draws n directions from the vMF distribution of a cluster (inverse CDF along the mean axis)
    inline std::vector<direction> sample_vmf(const vmf_cluster &c, std::size_t n, std::uint64_t seed)
    {
        detail::require(n >= 1, "sample_vmf: n must be >= 1");
        std::mt19937_64 rng(detail::derive_seed(seed, 0x766d66));
        vec3 e1, e2;
        orthonormal_complement(c.mean_direction().unit(), e1, e2);
        std::vector<direction> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(direction::from_vector(detail::draw_vmf(c, e1, e2, rng)));
        return out;
    }
}

#endif
