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

#ifndef VMFCORR_CORRELATION_HPP
#define VMFCORR_CORRELATION_HPP

#include "errors.hpp"
#include "special_functions.hpp"
#include "vec3.hpp"
#include "vmf.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace vmfcorr
{
    using complex = std::complex<double>;

    // Above this concentration the closed form is replaced by its large-kappa asymptote
    inline constexpr double large_kappa_threshold = 700.0;

    // Tolerance on the sum of cluster powers in a mixture
    inline constexpr double power_sum_tolerance = 1e-9;

    // Spatial offset between two observation points [m]
    struct displacement
    {
        vec3 d;

        displacement() = default;
        displacement(double dx, double dy, double dz) : displacement(vec3{dx, dy, dz}) {}
        explicit displacement(const vec3 &v) : d(v)
        {
            detail::require(is_finite(v), "displacement: components must be finite");
        }

        displacement operator-() const { return displacement(-d); }
        double length() const { return norm(d); }
    };

    // Linear motion at constant velocity
    struct motion_state
    {
        double speed = 0.0; // [m/s]
        double phi_v = 0.0; // Azimuth of motion [rad]
        double psi_v = 0.0; // Elevation of motion [rad]

        motion_state() = default;
        motion_state(double speed_, double phi_v_, double psi_v_) : speed(speed_), phi_v(phi_v_), psi_v(psi_v_)
        {
            detail::require(std::isfinite(speed) && speed >= 0.0, "motion_state: speed must be >= 0");
            detail::require(std::isfinite(phi_v) && std::abs(psi_v) <= pi / 2.0, "motion_state: invalid motion direction");
        }

        vec3 velocity() const { return speed * direction::from_angles(phi_v, psi_v).unit(); }
    };

    // Intermediate complex coefficients of the correlation integral
    // - b_x, b_y, b_z: kappa * mu + j (2 pi / lambda) d, per Cartesian component
    // - big_b = -(b_x^2 + b_y^2), the squared argument of the J0 kernel
    // - z_squared = (2 pi / lambda)^2 |d|^2 - kappa^2 - j (4 pi kappa / lambda) mu^T d = B - b_z^2
    // - z = sqrt(z_squared) on the branch with Im(z) >= 0
    struct scf_argument
    {
        complex b_x, b_y, b_z, big_b, z_squared, z;
        double mean_dot_d = 0.0; // mu^T d [m]
    };

    struct doppler_params
    {
        double f_m = 0.0;  // Maximum Doppler shift [Hz]
        double f_mu = 0.0; // Doppler shift of the mean DOA [Hz]
    };

    namespace detail
    {
        inline void require_wavelength(double wavelength)
        {
            require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be positive");
        }

        // exp(log kappa - kappa + jz' - log(jz')) with z' = -z the decaying-free branch
        inline complex large_kappa_from_root(double kappa, const complex &z)
        {
            if (z == complex(0.0, 0.0))
                throw degenerate_argument_error("scf_large_kappa: argument z is zero");
            const complex j(0.0, 1.0);
            // With Im(z) >= 0, sinh keeps exp(-jz); the approximation is kappa e^{-kappa} e^{-jz} / (-jz)
            const complex minus_jz = -j * z;
            return std::exp(std::log(kappa) - kappa + minus_jz - std::log(minus_jz));
        }

        // Correlation value from the squared argument of the closed form
        inline complex correlation_from_radicand(double kappa, const complex &z_squared)
        {
            if (kappa > large_kappa_threshold)
                return large_kappa_from_root(kappa, sqrt_upper(z_squared));
            return scaled_csinc_sqrt(z_squared, log_kappa_over_sinh(kappa));
        }
    }

    inline scf_argument make_scf_argument(const vmf_cluster &c, const displacement &disp, double wavelength)
    {
        detail::require_wavelength(wavelength);
        const double k = 2.0 * pi / wavelength;
        const double kappa = c.kappa();
        const vec3 &mu = c.mean_direction().unit();
        const vec3 &d = disp.d;
        const complex j(0.0, 1.0);

        scf_argument a;
        a.b_x = kappa * mu.x + j * (k * d.x);
        a.b_y = kappa * mu.y + j * (k * d.y);
        a.b_z = kappa * mu.z + j * (k * d.z);
        a.big_b = -(a.b_x * a.b_x + a.b_y * a.b_y);
        a.mean_dot_d = dot(mu, d);
        a.z_squared = complex(k * k * norm_squared(d) - kappa * kappa, -2.0 * kappa * k * a.mean_dot_d);
        a.z = sqrt_upper(a.z_squared);
        return a;
    }

    // Isotropic spatial correlation sinc(2 pi |d| / lambda)
    inline double scf_isotropic(double distance, double wavelength)
    {
        detail::require_wavelength(wavelength);
        detail::require(std::isfinite(distance) && distance >= 0.0, "scf_isotropic: distance must be >= 0");
        return sinc(2.0 * pi * distance / wavelength);
    }

    // Large-kappa asymptote kappa e^{-kappa} e^{jz} / (jz), evaluated in log domain
    inline complex scf_large_kappa(const vmf_cluster &c, const displacement &d, double wavelength)
    {
        detail::require(c.kappa() > 0.0, "scf_large_kappa: kappa must be positive");
        const scf_argument a = make_scf_argument(c, d, wavelength);
        return detail::large_kappa_from_root(c.kappa(), a.z);
    }

    // Exact closed-form spatial correlation, without the large-kappa switch
    // - kappa/sinh(kappa) * sinc(z) evaluated in log domain; usable up to kappa ~ 1e5
    inline complex scf_exact(const vmf_cluster &c, const displacement &d, double wavelength)
    {
        detail::require_wavelength(wavelength);
        if (d.d == vec3{})
            return {1.0, 0.0};
        if (c.kappa() == 0.0)
            return {scf_isotropic(d.length(), wavelength), 0.0};
        const scf_argument a = make_scf_argument(c, d, wavelength);
        return scaled_csinc_sqrt(a.z_squared, log_kappa_over_sinh(c.kappa()));
    }

    // Spatial correlation of a single vMF cluster at displacement d
    inline complex scf(const vmf_cluster &c, const displacement &d, double wavelength)
    {
        detail::require_wavelength(wavelength);
        if (d.d == vec3{})
            return {1.0, 0.0};
        if (c.kappa() == 0.0)
            return {scf_isotropic(d.length(), wavelength), 0.0};
        const scf_argument a = make_scf_argument(c, d, wavelength);
        return detail::correlation_from_radicand(c.kappa(), a.z_squared);
    }

    inline void check_power_normalization(std::span<const vmf_cluster> clusters)
    {
        if (clusters.empty())
            throw normalization_error("cluster list is empty");
        double total = 0.0;
        for (const auto &c : clusters)
            total += c.power();
        if (std::abs(total - 1.0) > power_sum_tolerance)
            throw normalization_error("cluster powers sum to " + std::to_string(total) + ", expected 1");
    }

    // Power-weighted mixture of single-cluster spatial correlations
    inline complex scf_multicluster(std::span<const vmf_cluster> clusters, const displacement &d, double wavelength)
    {
        check_power_normalization(clusters);
        complex acc(0.0, 0.0);
        for (const auto &c : clusters)
            acc += c.power() * scf(c, d, wavelength);
        return acc;
    }

    // f_m = |v| / lambda and f_mu = mu^T v / lambda, both doubled for a monostatic radar
    inline doppler_params make_doppler_params(const vmf_cluster &c, const motion_state &m, double wavelength,
                                              bool monostatic)
    {
        detail::require_wavelength(wavelength);
        const double scale = monostatic ? 2.0 : 1.0;
        doppler_params p;
        p.f_m = scale * m.speed / wavelength;
        p.f_mu = scale * dot(c.mean_direction().unit(), m.velocity()) / wavelength;
        return p;
    }

    // Temporal autocorrelation under linear motion, from the Doppler parameters
    inline complex acf(const vmf_cluster &c, const motion_state &m, double dt, double wavelength, bool monostatic)
    {
        detail::require(std::isfinite(dt), "acf: time lag must be finite");
        const doppler_params p = make_doppler_params(c, m, wavelength, monostatic);
        if (dt == 0.0 || m.speed == 0.0)
            return {1.0, 0.0};
        const double kappa = c.kappa();
        const double a = 2.0 * pi * p.f_m * dt;
        if (kappa == 0.0)
            return {sinc(a), 0.0};
        const complex z_squared(a * a - kappa * kappa, -4.0 * pi * kappa * p.f_mu * dt);
        return detail::correlation_from_radicand(kappa, z_squared);
    }

    inline complex acf_multicluster(std::span<const vmf_cluster> clusters, const motion_state &m, double dt,
                                    double wavelength, bool monostatic)
    {
        check_power_normalization(clusters);
        complex acc(0.0, 0.0);
        for (const auto &c : clusters)
            acc += c.power() * acf(c, m, dt, wavelength, monostatic);
        return acc;
    }

    struct crossing_search
    {
        double threshold = 0.5;
        std::optional<double> horizon; // [s]; default 10 (1 + kappa_max) / f_m
        int points_per_decade = 64;
        double rel_tol = 1e-6;
    };

    // First t > 0 where magnitude(t) falls to the threshold
    // - Geometric coarse grid up to the horizon, then bisection on the bracketing interval
    template <typename Magnitude>
    double first_downward_crossing(Magnitude &&magnitude, double horizon, const crossing_search &opt)
    {
        detail::require(opt.threshold > 0.0 && opt.threshold < 1.0, "threshold must be in (0, 1)");
        detail::require(std::isfinite(horizon) && horizon > 0.0, "horizon must be positive");
        detail::require(opt.points_per_decade > 0 && opt.rel_tol > 0.0, "invalid crossing search options");

        const double t_first = std::min(1e-6, 1e-6 * horizon);
        const double step = std::pow(10.0, 1.0 / opt.points_per_decade);

        double lo = 0.0, hi = -1.0;
        for (double t = t_first;; t *= step)
        {
            t = std::min(t, horizon);
            if (magnitude(t) <= opt.threshold)
            {
                hi = t;
                break;
            }
            lo = t;
            if (t >= horizon)
                break;
        }
        if (hi < 0.0)
            throw not_found_error("correlation magnitude stays above threshold within the horizon");

        while (hi - lo > opt.rel_tol * hi)
        {
            const double mid = 0.5 * (lo + hi);
            (magnitude(mid) <= opt.threshold ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // Smallest lag at which |ACF| first drops to the threshold
    inline double decorrelation_time(std::span<const vmf_cluster> clusters, const motion_state &m, double wavelength,
                                     bool monostatic, const crossing_search &opt = {})
    {
        check_power_normalization(clusters);
        detail::require(m.speed > 0.0, "decorrelation_time: speed must be positive");
        double kappa_max = 0.0;
        for (const auto &c : clusters)
            kappa_max = std::max(kappa_max, c.kappa());
        const double f_m = make_doppler_params(clusters.front(), m, wavelength, monostatic).f_m;
        const double horizon = opt.horizon.value_or(10.0 * (1.0 + kappa_max) / f_m);
        auto magnitude = [&](double dt)
        { return std::abs(acf_multicluster(clusters, m, dt, wavelength, monostatic)); };
        return first_downward_crossing(magnitude, horizon, opt);
    }

    inline double decorrelation_time(const vmf_cluster &c, const motion_state &m, double wavelength, bool monostatic,
                                     const crossing_search &opt = {})
    {
        const vmf_cluster unit = c.with_power(1.0);
        return decorrelation_time(std::span<const vmf_cluster>(&unit, 1), m, wavelength, monostatic, opt);
    }
}

#endif
