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

#ifndef VMFCORR_ORACLES_HPP
#define VMFCORR_ORACLES_HPP

// Reference computations that do not use the closed form:
// direct quadrature of the expectation over the vMF density, and
// Monte-Carlo averaging over random plane-wave ensembles.

#include "correlation.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "vmf.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace vmfcorr
{
    // Largest concentration the quadrature oracle accepts
    inline constexpr double quadrature_kappa_limit = 1e4;

    // Above this concentration the quadrature runs in a frame centered on the mean direction
    inline constexpr double quadrature_recenter_kappa = 100.0;

    // Density floor (relative to the peak) below which the recentered domain is truncated
    inline constexpr double quadrature_truncation_ratio = 1e-18;

    namespace detail
    {
        // Sum of the panel-wise error estimates contributed by inexact inner integrals
        inline quadrature_spec inner_spec(const quadrature_spec &outer, double outer_length)
        {
            quadrature_spec s = outer;
            s.abs_tol = outer.abs_tol / (4.0 * outer_length);
            s.rel_tol = outer.rel_tol / 4.0;
            return s;
        }

        // Nested integration in (azimuth, elevation), elevation outer
        inline quadrature_result<complex> scf_quadrature_angles(const vmf_cluster &c, const vec3 &kd,
                                                                const quadrature_spec &spec)
        {
            const double log_norm = log_kappa_over_sinh(c.kappa()) - std::log(4.0 * pi);
            const double kappa = c.kappa();
            const double cm = std::cos(c.mu_psi()), sm = std::sin(c.mu_psi());
            const quadrature_spec ispec = inner_spec(spec, pi);
            double inner_error = 0.0;

            auto outer = [&](double psi)
            {
                const double cpsi = std::cos(psi), spsi = std::sin(psi);
                if (cpsi <= 0.0)
                    return complex(0.0, 0.0);
                auto inner = [&](double phi)
                {
                    const double log_p = log_norm + kappa * (cm * cpsi * std::cos(phi - c.mu_phi()) + sm * spsi) +
                                         std::log(cpsi);
                    const double phase = kd.x * std::cos(phi) * cpsi + kd.y * std::sin(phi) * cpsi + kd.z * spsi;
                    return std::exp(complex(log_p, phase));
                };
                // One period centered on the mean azimuth
                auto r = integrate_adaptive<complex>(inner, c.mu_phi() - pi, c.mu_phi() + pi, ispec);
                inner_error = std::max(inner_error, r.error);
                return r.value;
            };
            auto r = integrate_adaptive<complex>(outer, -pi / 2.0, pi / 2.0, spec);
            r.error += inner_error * pi;
            return r;
        }

        // Nested integration in (polar angle from mean, azimuth around mean), polar angle outer
        inline quadrature_result<complex> scf_quadrature_recentered(const vmf_cluster &c, const vec3 &kd,
                                                                    const quadrature_spec &spec)
        {
            const double kappa = c.kappa();
            const vec3 &mu = c.mean_direction().unit();
            vec3 e1, e2;
            orthonormal_complement(mu, e1, e2);
            const double kd_mu = dot(kd, mu), kd_1 = dot(kd, e1), kd_2 = dot(kd, e2);

            // kappa/(4 pi sinh kappa) e^{kappa cos(theta)} = kappa/(2 pi (1 - e^{-2 kappa})) e^{-kappa (1 - cos(theta))}
            const double log_norm = std::log(kappa / (2.0 * pi)) - std::log1p(-std::exp(-2.0 * kappa));
            // Truncated mass beyond theta_max is below the ratio
            const double one_minus_cos_max = std::min(2.0, -std::log(quadrature_truncation_ratio) / kappa);
            const double theta_max = std::acos(1.0 - one_minus_cos_max);
            const quadrature_spec ispec = inner_spec(spec, theta_max);
            double inner_error = 0.0;

            auto outer = [&](double theta)
            {
                const double st = std::sin(theta), half = std::sin(0.5 * theta);
                if (st <= 0.0)
                    return complex(0.0, 0.0);
                const double log_p = log_norm - 2.0 * kappa * half * half + std::log(st);
                const double phase_axis = kd_mu * std::cos(theta);
                auto inner = [&](double alpha)
                {
                    const double phase = phase_axis + st * (kd_1 * std::cos(alpha) + kd_2 * std::sin(alpha));
                    return std::exp(complex(log_p, phase));
                };
                auto r = integrate_adaptive<complex>(inner, 0.0, 2.0 * pi, ispec);
                inner_error = std::max(inner_error, r.error);
                return r.value;
            };
            auto r = integrate_adaptive<complex>(outer, 0.0, theta_max, spec);
            r.error += inner_error * theta_max + quadrature_truncation_ratio;
            return r;
        }
    }

    // Spatial correlation by direct 2-D quadrature of E[exp(j 2 pi / lambda k^T d)] over the vMF density
    inline quadrature_result<complex> scf_quadrature(const vmf_cluster &c, const displacement &d, double wavelength,
                                                     const quadrature_spec &spec = {})
    {
        detail::require_wavelength(wavelength);
        spec.validate();
        detail::require(c.kappa() <= quadrature_kappa_limit, "scf_quadrature: kappa beyond the supported range");
        const vec3 kd = (2.0 * pi / wavelength) * d.d;
        if (c.kappa() > quadrature_recenter_kappa)
            return detail::scf_quadrature_recentered(c, kd, spec);
        return detail::scf_quadrature_angles(c, kd, spec);
    }

    // One realization of the plane-wave sum H(dr) = sum_n A_n e^{j phase_n} e^{j 2 pi / lambda k_n^T dr}
    struct multipath_ensemble
    {
        std::vector<double> amplitudes;
        std::vector<direction> doas;
        std::vector<double> phases; // Initial phases in [0, 2 pi)
        std::uint64_t seed = 0;

        std::size_t n_paths() const { return amplitudes.size(); }
    };

    // Minimum number of paths for the ensemble to approximate the Rayleigh limit
    inline constexpr std::size_t min_ensemble_paths = 10;

    // Equal-amplitude ensemble with vMF-distributed DOAs and uniform phases
    inline multipath_ensemble build_ensemble(const vmf_cluster &c, std::size_t n_paths, std::uint64_t seed)
    {
        detail::require(n_paths >= min_ensemble_paths, "build_ensemble: at least 10 paths are required");
        multipath_ensemble e;
        e.seed = seed;
        e.amplitudes.assign(n_paths, 1.0 / std::sqrt(double(n_paths)));
        e.doas = sample_vmf(c, n_paths, seed);
        std::mt19937_64 rng(detail::derive_seed(seed, 0x7068617365));
        std::uniform_real_distribution<double> unif(0.0, 2.0 * pi);
        e.phases.resize(n_paths);
        for (auto &p : e.phases)
            p = unif(rng);
        return e;
    }

    inline complex transfer_function(const multipath_ensemble &e, const displacement &dr, double wavelength)
    {
        detail::require_wavelength(wavelength);
        detail::require(e.doas.size() == e.n_paths() && e.phases.size() == e.n_paths(),
                        "transfer_function: inconsistent ensemble");
        const double k = 2.0 * pi / wavelength;
        complex h(0.0, 0.0);
        for (std::size_t n = 0; n < e.n_paths(); ++n)
            h += e.amplitudes[n] * std::exp(complex(0.0, e.phases[n] + k * dot(e.doas[n].unit(), dr.d)));
        return h;
    }

    struct montecarlo_estimate
    {
        complex estimate;
        double std_error = 0.0; // Standard error of the complex mean, sqrt(E|X - mean|^2 / n)
    };

    // Sample mean of H*(0) H(d) over independent ensembles
    inline montecarlo_estimate scf_montecarlo(const vmf_cluster &c, const displacement &d, double wavelength,
                                              std::size_t n_paths, std::size_t n_realizations, std::uint64_t seed)
    {
        detail::require(n_realizations >= 100, "scf_montecarlo: at least 100 realizations are required");
        const displacement origin{};
        complex sum(0.0, 0.0);
        double sum_sq = 0.0;
        std::vector<complex> samples(n_realizations);
        for (std::size_t r = 0; r < n_realizations; ++r)
        {
            const auto e = build_ensemble(c, n_paths, detail::derive_seed(seed, r, 1));
            samples[r] = std::conj(transfer_function(e, origin, wavelength)) * transfer_function(e, d, wavelength);
            sum += samples[r];
        }
        const double n = double(n_realizations);
        const complex mean = sum / n;
        for (const auto &s : samples)
            sum_sq += std::norm(s - mean);
        return {mean, std::sqrt(sum_sq / (n - 1.0) / n)};
    }
}

#endif
