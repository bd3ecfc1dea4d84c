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

#ifndef VMFCORR_CLI_RUN_HPP
#define VMFCORR_CLI_RUN_HPP

#include "../arrays.hpp"
#include "../correlation.hpp"
#include "../oracles.hpp"
#include "../radar.hpp"
#include "config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace vmfcorr::cli
{
    inline constexpr int exit_success = 0;
    inline constexpr int exit_config_error = 2;
    inline constexpr int exit_validation_failure = 3;
    inline constexpr int exit_io_error = 4;

    class io_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Rows in grid order; angle columns are in degrees, lengths in wavelengths
    struct result_table
    {
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;
        nlohmann::ordered_json summary = nlohmann::ordered_json::object();
        bool validation_failed = false;
    };

    inline double deg2rad(double deg) { return deg * pi / 180.0; }

    // Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first failure
    inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn)
    {
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
        if (threads <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&]
                              {
                for (std::size_t i = next++; i < n; i = next++)
                {
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        next = n;
                    }
                } });
        for (auto &th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    inline std::vector<vmf_cluster> make_clusters(const std::vector<cluster_spec> &specs)
    {
        std::vector<vmf_cluster> out;
        for (const auto &c : specs)
            out.emplace_back(deg2rad(c.mu_phi_deg), deg2rad(c.mu_psi_deg), c.kappa, c.power);
        return out;
    }

    inline array_geometry make_geometry(const geometry_spec &g, double wavelength)
    {
        if (g.type == "linear")
            return linear_array(g.n, g.spacing_over_lambda * wavelength,
                                direction::from_angles(deg2rad(g.axis_azimuth_deg), deg2rad(g.axis_elevation_deg)));
        if (g.type == "circular")
            return circular_array(g.n, g.radius_over_lambda * wavelength);
        if (g.type == "planar")
            return planar_grid(g.nx, g.ny, g.dx_over_lambda * wavelength, g.dy_over_lambda * wavelength);
        std::vector<vec3> pos;
        for (const auto &p : g.positions_over_lambda)
            pos.push_back(wavelength * p);
        return {std::move(pos), g.reference_index};
    }

    // Unit displacement direction at angle beta from the mean DOA, rotated towards the azimuth tangent
    inline vec3 displacement_direction(double mu_phi, double mu_psi, double beta)
    {
        const vec3 mu = direction::from_angles(mu_phi, mu_psi).unit();
        const vec3 tangent{-std::sin(mu_phi), std::cos(mu_phi), 0.0};
        return std::cos(beta) * mu + std::sin(beta) * tangent;
    }

    namespace detail
    {
        inline void push_complex(std::vector<double> &row, const complex &v)
        {
            row.push_back(v.real());
            row.push_back(v.imag());
            row.push_back(std::abs(v));
        }

        inline result_table run_scf_curve(const sweep_config &cfg, const scf_curve_params &p)
        {
            result_table t;
            t.columns = {"kappa", "beta_deg", "d_over_lambda", "re", "im", "abs"};
            const std::size_t nb = p.betas_deg.size(), nd = p.d_over_lambda.size();
            t.rows.resize(p.kappas.size() * nb * nd);
            parallel_for(t.rows.size(), cfg.threads, [&](std::size_t idx)
                         {
                const double kappa = p.kappas[idx / (nb * nd)];
                const double beta = p.betas_deg[(idx / nd) % nb];
                const double dl = p.d_over_lambda[idx % nd];
                const vmf_cluster c(deg2rad(p.mu_phi_deg), deg2rad(p.mu_psi_deg), kappa);
                const vec3 u = displacement_direction(c.mu_phi(), c.mu_psi(), deg2rad(beta));
                std::vector<double> row{kappa, beta, dl};
                push_complex(row, scf(c, displacement((dl * cfg.wavelength) * u), cfg.wavelength));
                t.rows[idx] = std::move(row); });
            return t;
        }

        inline result_table run_scf_field(const sweep_config &cfg, const scf_field_params &p)
        {
            const auto clusters = make_clusters(cfg.clusters);
            result_table t;
            t.columns = {"x_over_lambda", "y_over_lambda", "re", "im", "abs"};
            const std::size_t ny = p.y_over_lambda.size();
            t.rows.resize(p.x_over_lambda.size() * ny);
            parallel_for(t.rows.size(), cfg.threads, [&](std::size_t idx)
                         {
                const double x = p.x_over_lambda[idx / ny], y = p.y_over_lambda[idx % ny];
                const displacement d(cfg.wavelength * vec3{x, y, p.z_over_lambda});
                std::vector<double> row{x, y};
                push_complex(row, scf_multicluster(clusters, d, cfg.wavelength));
                t.rows[idx] = std::move(row); });
            return t;
        }

        inline result_table run_acf_curve(const sweep_config &cfg, const acf_curve_params &p)
        {
            const auto clusters = make_clusters(cfg.clusters);
            const motion_state m(p.speed_mps, deg2rad(p.motion_azimuth_deg), deg2rad(p.motion_elevation_deg));
            result_table t;
            t.columns = {"dt_s", "re", "im", "abs"};
            t.rows.resize(p.dt_s.size());
            parallel_for(t.rows.size(), cfg.threads, [&](std::size_t i)
                         {
                std::vector<double> row{p.dt_s[i]};
                push_complex(row, acf_multicluster(clusters, m, p.dt_s[i], cfg.wavelength, p.monostatic));
                t.rows[i] = std::move(row); });
            const auto dp = make_doppler_params(clusters.front(), m, cfg.wavelength, p.monostatic);
            t.summary["f_m_hz"] = dp.f_m;
            if (m.speed > 0.0)
            {
                crossing_search opt;
                opt.threshold = cfg.threshold;
                try
                {
                    t.summary["decorrelation_time_s"] = decorrelation_time(clusters, m, cfg.wavelength, p.monostatic, opt);
                }
                catch (const not_found_error &)
                {
                    t.summary["decorrelation_time_s"] = nullptr;
                }
            }
            return t;
        }

        inline result_table run_array_matrix(const sweep_config &cfg, const array_matrix_params &p)
        {
            const auto clusters = make_clusters(cfg.clusters);
            const auto g = make_geometry(p.geometry, cfg.wavelength);
            const auto m = make_correlation_matrix(g, clusters, cfg.wavelength);
            result_table t;
            t.columns = {"row", "col", "re", "im"};
            const std::size_t n = m.dimension();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                {
                    const complex v = m.entries(Eigen::Index(i), Eigen::Index(k));
                    t.rows.push_back({double(i), double(k), v.real(), v.imag()});
                }
            t.summary["elements"] = n;
            t.summary["min_eigenvalue"] = m.min_eigenvalue();
            t.summary["hermitian_error"] = m.max_hermitian_error();
            return t;
        }

        inline result_table run_array_path(const sweep_config &cfg, const array_path_params &p)
        {
            const auto clusters = make_clusters(cfg.clusters);
            const auto g = make_geometry(p.geometry, cfg.wavelength);
            const auto curve = scf_along_path(g, clusters, cfg.wavelength);
            result_table t;
            t.columns = {"path_over_lambda", "re", "im", "abs"};
            for (const auto &s : curve)
            {
                std::vector<double> row{s.path_distance / cfg.wavelength};
                push_complex(row, s.value);
                t.rows.push_back(std::move(row));
            }
            try
            {
                const auto rep = stationarity_check(curve, p.stationarity_tol);
                t.summary["max_asymmetry"] = rep.max_asymmetry;
                t.summary["is_even_in_magnitude"] = rep.is_even_in_magnitude;
            }
            catch (const mismatch_error &e)
            {
                t.summary["stationarity"] = e.what();
            }
            return t;
        }

        inline result_table run_radar_table(const sweep_config &cfg, const radar_table_params &p)
        {
            radar_scenario base;
            base.carrier_frequency = p.carrier_frequency_hz;
            base.target_elevation = deg2rad(p.target_elevation_deg);
            base.monostatic = p.monostatic;
            base.receding = p.receding;
            result_table t;
            t.columns = {"width_deg", "speed_kmh", "kappa", "decorrelation_ms"};
            const std::size_t ns = p.speeds_kmh.size();
            t.rows.resize(p.widths_deg.size() * ns);
            parallel_for(t.rows.size(), cfg.threads, [&](std::size_t idx)
                         {
                const double w = p.widths_deg[idx / ns], v = p.speeds_kmh[idx % ns];
                const double w_rad = deg2rad(w), v_mps = v / 3.6;
                const double width[] = {w_rad}, speed[] = {v_mps};
                const auto e = decorrelation_table(width, speed, base, cfg.threshold).front();
                t.rows[idx] = {w, v, e.kappa, 1e3 * e.time}; });
            t.summary["threshold"] = cfg.threshold;
            t.summary["wavelength_m"] = speed_of_light / p.carrier_frequency_hz;
            return t;
        }

        inline result_table run_validate(const sweep_config &cfg, const validate_params &p)
        {
            result_table t;
            t.columns = {"kappa", "beta_deg", "d_over_lambda", "closed_re", "closed_im", "quad_re", "quad_im", "abs_err"};
            const std::size_t nb = p.betas_deg.size(), nd = p.d_over_lambda.size();
            t.rows.resize(p.kappas.size() * nb * nd);
            parallel_for(t.rows.size(), cfg.threads, [&](std::size_t idx)
                         {
                const double kappa = p.kappas[idx / (nb * nd)];
                const double beta = p.betas_deg[(idx / nd) % nb];
                const double dl = p.d_over_lambda[idx % nd];
                const vmf_cluster c(deg2rad(p.mu_phi_deg), deg2rad(p.mu_psi_deg), kappa);
                const displacement d((dl * cfg.wavelength) * displacement_direction(c.mu_phi(), c.mu_psi(), deg2rad(beta)));
                const complex closed = scf(c, d, cfg.wavelength);
                const complex quad = scf_quadrature(c, d, cfg.wavelength, cfg.quadrature).value;
                t.rows[idx] = {kappa, beta, dl, closed.real(), closed.imag(), quad.real(), quad.imag(),
                               std::abs(closed - quad)}; });
            double max_err = 0.0;
            for (const auto &row : t.rows)
                max_err = std::max(max_err, row.back());
            t.summary["max_abs_err"] = max_err;
            t.summary["tolerance"] = p.tolerance;
            t.validation_failed = !(max_err < p.tolerance);

            if (p.montecarlo_points > 0)
            {
                std::vector<double> sigma(p.montecarlo_points);
                parallel_for(p.montecarlo_points, cfg.threads, [&](std::size_t i)
                             {
                    std::mt19937_64 rng(vmfcorr::detail::derive_seed(cfg.seed, i, 2));
                    std::uniform_real_distribution<double> u(0.0, 1.0);
                    const vmf_cluster c(2.0 * pi * u(rng) - pi, std::asin(2.0 * u(rng) - 1.0), 20.0 * u(rng));
                    const vec3 dir = direction::from_angles(2.0 * pi * u(rng), std::asin(2.0 * u(rng) - 1.0)).unit();
                    const displacement d((2.0 * u(rng) * cfg.wavelength) * dir);
                    const auto mc = scf_montecarlo(c, d, cfg.wavelength, p.montecarlo_paths, p.montecarlo_realizations,
                                                   vmfcorr::detail::derive_seed(cfg.seed, i, 3));
                    sigma[i] = std::abs(mc.estimate - scf(c, d, cfg.wavelength)) / mc.std_error; });
                const double max_sigma = *std::max_element(sigma.begin(), sigma.end());
                t.summary["montecarlo_max_sigma"] = max_sigma;
                t.validation_failed = t.validation_failed || !(max_sigma < 4.0);
            }
            t.summary["passed"] = !t.validation_failed;
            return t;
        }
    }

    inline result_table compute(const sweep_config &cfg)
    {
        return std::visit(
            [&](const auto &p) -> result_table
            {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, scf_curve_params>)
                    return detail::run_scf_curve(cfg, p);
                else if constexpr (std::is_same_v<P, scf_field_params>)
                    return detail::run_scf_field(cfg, p);
                else if constexpr (std::is_same_v<P, acf_curve_params>)
                    return detail::run_acf_curve(cfg, p);
                else if constexpr (std::is_same_v<P, array_matrix_params>)
                    return detail::run_array_matrix(cfg, p);
                else if constexpr (std::is_same_v<P, array_path_params>)
                    return detail::run_array_path(cfg, p);
                else if constexpr (std::is_same_v<P, radar_table_params>)
                    return detail::run_radar_table(cfg, p);
                else
                    return detail::run_validate(cfg, p);
            },
            cfg.params);
    }

    // Shortest decimal string that reads back to the same double
    inline std::string format_number(double v)
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    inline std::string format_csv(const result_table &t)
    {
        std::string s;
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            s += (i ? "," : "") + t.columns[i];
        s += '\n';
        for (const auto &row : t.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                if (i)
                    s += ',';
                s += format_number(row[i]);
            }
            s += '\n';
        }
        return s;
    }

    inline std::string format_json(const sweep_config &cfg, const result_table &t)
    {
        nlohmann::ordered_json j;
        j["mode"] = to_string(cfg.mode);
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        j["summary"] = t.summary;
        return j.dump(1) + "\n";
    }

    // Computes the sweep and writes it to cfg.out (stdout when unset); returns the process exit code
    inline int run(const sweep_config &cfg, std::ostream &log = std::cerr)
    {
        const result_table t = compute(cfg);
        const std::string text = cfg.format == output_format::csv ? format_csv(t) : format_json(cfg, t);
        if (cfg.out)
        {
            std::ofstream f(*cfg.out, std::ios::binary | std::ios::trunc);
            if (!f)
                throw io_error("cannot open output file " + *cfg.out);
            f << text;
            if (!f.flush())
                throw io_error("failed writing output file " + *cfg.out);
        }
        else
            std::cout << text << std::flush;

        for (const auto &[key, value] : t.summary.items())
            log << to_string(cfg.mode) << ": " << key << " = " << value.dump() << "\n";
        return t.validation_failed ? exit_validation_failure : exit_success;
    }
}

#endif
