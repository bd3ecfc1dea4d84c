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

#ifndef VMFCORR_CLI_CONFIG_HPP
#define VMFCORR_CLI_CONFIG_HPP

#include "../quadrature.hpp"
#include "../vec3.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace vmfcorr::cli
{
    enum class sweep_mode
    {
        scf_curve,
        scf_field,
        acf_curve,
        array_matrix,
        array_path,
        radar_table,
        validate
    };

    inline const std::vector<std::pair<sweep_mode, std::string>> &mode_names()
    {
        static const std::vector<std::pair<sweep_mode, std::string>> names{
            {sweep_mode::scf_curve, "scf-curve"},     {sweep_mode::scf_field, "scf-field"},
            {sweep_mode::acf_curve, "acf-curve"},     {sweep_mode::array_matrix, "array-matrix"},
            {sweep_mode::array_path, "array-path"},   {sweep_mode::radar_table, "radar-table"},
            {sweep_mode::validate, "validate"}};
        return names;
    }

    inline std::string to_string(sweep_mode m)
    {
        for (const auto &[mode, name] : mode_names())
            if (mode == m)
                return name;
        return "unknown";
    }

    inline std::optional<sweep_mode> mode_from_string(const std::string &s)
    {
        for (const auto &[mode, name] : mode_names())
            if (name == s)
                return mode;
        return std::nullopt;
    }

    enum class output_format
    {
        csv,
        json
    };

    // Malformed document; message carries line and column
    class parse_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Well-formed document with invalid content; lists every violation
    class validation_error : public std::runtime_error
    {
    public:
        explicit validation_error(std::vector<std::string> violations)
            : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

        const std::vector<std::string> &violations() const { return violations_; }

    private:
        static std::string join(const std::vector<std::string> &v)
        {
            std::string s = "invalid configuration:";
            for (const auto &x : v)
                s += "\n  " + x;
            return s;
        }
        std::vector<std::string> violations_;
    };

    // Angles in degrees, lengths in wavelengths at this boundary
    struct cluster_spec
    {
        double mu_phi_deg = 0.0;
        double mu_psi_deg = 0.0;
        double kappa = 0.0;
        double power = 1.0;
    };

    struct geometry_spec
    {
        std::string type = "linear"; // linear | circular | planar | custom
        std::size_t n = 16;
        double spacing_over_lambda = 0.5;
        double axis_azimuth_deg = 0.0;
        double axis_elevation_deg = 0.0;
        double radius_over_lambda = 3.0 / 3.14159265358979323846; // 6 lambda circumference
        std::size_t nx = 8, ny = 8;
        double dx_over_lambda = 0.5, dy_over_lambda = 0.5;
        std::vector<vec3> positions_over_lambda;
        std::size_t reference_index = 0;
    };

    struct scf_curve_params
    {
        std::vector<double> kappas{0.0, 1.0, 10.0, 100.0};
        std::vector<double> betas_deg{0.0};
        double mu_phi_deg = 0.0, mu_psi_deg = 0.0;
        std::vector<double> d_over_lambda;
    };

    struct scf_field_params
    {
        std::vector<double> x_over_lambda, y_over_lambda;
        double z_over_lambda = 0.0;
    };

    struct acf_curve_params
    {
        double speed_mps = 0.0;
        double motion_azimuth_deg = 0.0, motion_elevation_deg = 0.0;
        bool monostatic = false;
        std::vector<double> dt_s;
    };

    struct array_matrix_params
    {
        geometry_spec geometry;
    };

    struct array_path_params
    {
        geometry_spec geometry;
        double stationarity_tol = 1e-10;
    };

    struct radar_table_params
    {
        double carrier_frequency_hz = 10e9;
        double target_elevation_deg = 20.0;
        std::vector<double> widths_deg{2.0, 1.0, 0.5};
        std::vector<double> speeds_kmh{40.0, 120.0, 150.0};
        bool monostatic = true;
        bool receding = true;
    };

    struct validate_params
    {
        std::vector<double> kappas{0.0, 1.0, 10.0, 100.0};
        std::vector<double> betas_deg{0.0, 30.0, 60.0, 90.0};
        double mu_phi_deg = 0.0, mu_psi_deg = 0.0;
        std::vector<double> d_over_lambda;
        double tolerance = 1e-8;
        std::size_t montecarlo_points = 0;
        std::size_t montecarlo_realizations = 10000;
        std::size_t montecarlo_paths = 64;
    };

    using mode_params = std::variant<scf_curve_params, scf_field_params, acf_curve_params, array_matrix_params,
                                     array_path_params, radar_table_params, validate_params>;

    struct sweep_config
    {
        sweep_mode mode = sweep_mode::scf_curve;
        double wavelength = 1.0; // [m]
        std::vector<cluster_spec> clusters;
        output_format format = output_format::csv;
        std::optional<std::string> out;
        std::uint64_t seed = 1;
        unsigned threads = 0; // 0: hardware concurrency
        double threshold = 0.5;
        quadrature_spec quadrature;
        mode_params params;
    };

    namespace detail
    {
        using json = nlohmann::json;

        // Collects violations while reading typed fields out of a JSON tree
        class reader
        {
        public:
            std::vector<std::string> errors;

            void fail(const std::string &path, const std::string &msg) { errors.push_back(path + ": " + msg); }

            void reject_unknown(const json &obj, const std::string &path, const std::set<std::string> &allowed)
            {
                for (const auto &[key, value] : obj.items())
                    if (!allowed.count(key))
                        fail(join(path, key), "unknown key");
            }

            static std::string join(const std::string &path, const std::string &key)
            {
                return path.empty() ? key : path + "." + key;
            }

            bool is_object(const json &j, const std::string &path)
            {
                if (j.is_object())
                    return true;
                fail(path, "expected an object");
                return false;
            }

            template <typename T>
            void number(const json &obj, const std::string &path, const std::string &key, T &target)
            {
                if (!obj.contains(key))
                    return;
                const json &v = obj.at(key);
                const std::string p = join(path, key);
                if (!v.is_number())
                {
                    fail(p, "expected a number");
                    return;
                }
                if constexpr (std::is_floating_point_v<T>)
                {
                    const double x = v.get<double>();
                    if (!std::isfinite(x))
                        fail(p, "must be finite");
                    target = x;
                }
                else
                {
                    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
                    {
                        fail(p, "expected a nonnegative integer");
                        return;
                    }
                    target = v.get<T>();
                }
            }

            void boolean(const json &obj, const std::string &path, const std::string &key, bool &target)
            {
                if (!obj.contains(key))
                    return;
                if (!obj.at(key).is_boolean())
                {
                    fail(join(path, key), "expected true or false");
                    return;
                }
                target = obj.at(key).get<bool>();
            }

            void string(const json &obj, const std::string &path, const std::string &key, std::string &target)
            {
                if (!obj.contains(key))
                    return;
                if (!obj.at(key).is_string())
                {
                    fail(join(path, key), "expected a string");
                    return;
                }
                target = obj.at(key).get<std::string>();
            }

            void number_list(const json &obj, const std::string &path, const std::string &key,
                             std::vector<double> &target)
            {
                if (!obj.contains(key))
                    return;
                const json &v = obj.at(key);
                const std::string p = join(path, key);
                if (!v.is_array() || v.empty())
                {
                    fail(p, "expected a nonempty array of numbers");
                    return;
                }
                std::vector<double> out;
                for (std::size_t i = 0; i < v.size(); ++i)
                {
                    if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
                    {
                        fail(p + "[" + std::to_string(i) + "]", "expected a finite number");
                        return;
                    }
                    out.push_back(v[i].get<double>());
                }
                target = std::move(out);
            }

            // Either an explicit array or {"start", "stop", "count"} with count points inclusive
            void grid(const json &obj, const std::string &path, const std::string &key, std::vector<double> &target)
            {
                if (!obj.contains(key))
                    return;
                const json &v = obj.at(key);
                const std::string p = join(path, key);
                if (v.is_array())
                {
                    number_list(obj, path, key, target);
                    return;
                }
                if (!is_object(v, p))
                    return;
                reject_unknown(v, p, {"start", "stop", "count"});
                if (!v.contains("start") || !v.contains("stop") || !v.contains("count"))
                {
                    fail(p, "grid needs start, stop and count");
                    return;
                }
                double start = 0.0, stop = 0.0;
                std::size_t count = 0;
                const std::size_t n_err = errors.size();
                number(v, p, "start", start);
                number(v, p, "stop", stop);
                number(v, p, "count", count);
                if (errors.size() != n_err)
                    return;
                if (count < 1)
                {
                    fail(join(p, "count"), "must be >= 1");
                    return;
                }
                target = linspace(start, stop, count);
            }

            static std::vector<double> linspace(double start, double stop, std::size_t count)
            {
                std::vector<double> out(count);
                for (std::size_t i = 0; i < count; ++i)
                    out[i] = count == 1 ? start : start + (stop - start) * double(i) / double(count - 1);
                return out;
            }
        };

        inline void read_geometry(reader &r, const json &j, const std::string &path, geometry_spec &g)
        {
            if (!r.is_object(j, path))
                return;
            r.reject_unknown(j, path, {"type", "n", "spacing_over_lambda", "axis_azimuth_deg", "axis_elevation_deg",
                                       "radius_over_lambda", "nx", "ny", "dx_over_lambda", "dy_over_lambda",
                                       "positions_over_lambda", "reference_index"});
            r.string(j, path, "type", g.type);
            r.number(j, path, "n", g.n);
            r.number(j, path, "spacing_over_lambda", g.spacing_over_lambda);
            r.number(j, path, "axis_azimuth_deg", g.axis_azimuth_deg);
            r.number(j, path, "axis_elevation_deg", g.axis_elevation_deg);
            r.number(j, path, "radius_over_lambda", g.radius_over_lambda);
            r.number(j, path, "nx", g.nx);
            r.number(j, path, "ny", g.ny);
            r.number(j, path, "dx_over_lambda", g.dx_over_lambda);
            r.number(j, path, "dy_over_lambda", g.dy_over_lambda);
            r.number(j, path, "reference_index", g.reference_index);

            const std::string type_path = reader::join(path, "type");
            if (g.type == "linear")
            {
                if (g.n < 1)
                    r.fail(reader::join(path, "n"), "must be >= 1");
                if (!(g.spacing_over_lambda > 0.0))
                    r.fail(reader::join(path, "spacing_over_lambda"), "must be positive");
                if (std::abs(g.axis_elevation_deg) > 90.0)
                    r.fail(reader::join(path, "axis_elevation_deg"), "must be in [-90, 90]");
            }
            else if (g.type == "circular")
            {
                if (g.n < 1)
                    r.fail(reader::join(path, "n"), "must be >= 1");
                if (!(g.radius_over_lambda > 0.0))
                    r.fail(reader::join(path, "radius_over_lambda"), "must be positive");
            }
            else if (g.type == "planar")
            {
                if (g.nx < 1 || g.ny < 1)
                    r.fail(path, "nx and ny must be >= 1");
                if (!(g.dx_over_lambda > 0.0) || !(g.dy_over_lambda > 0.0))
                    r.fail(path, "dx_over_lambda and dy_over_lambda must be positive");
            }
            else if (g.type == "custom")
            {
                const std::string p = reader::join(path, "positions_over_lambda");
                if (!j.contains("positions_over_lambda") || !j.at("positions_over_lambda").is_array() ||
                    j.at("positions_over_lambda").empty())
                    r.fail(p, "expected a nonempty array of [x, y, z] triples");
                else
                {
                    const json &a = j.at("positions_over_lambda");
                    for (std::size_t i = 0; i < a.size(); ++i)
                    {
                        const json &e = a[i];
                        if (!e.is_array() || e.size() != 3 || !e[0].is_number() || !e[1].is_number() ||
                            !e[2].is_number())
                        {
                            r.fail(p + "[" + std::to_string(i) + "]", "expected [x, y, z]");
                            continue;
                        }
                        g.positions_over_lambda.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
                    }
                    if (g.reference_index >= a.size())
                        r.fail(reader::join(path, "reference_index"), "out of range");
                }
            }
            else
                r.fail(type_path, "must be one of linear, circular, planar, custom");
        }

        inline void check_kappas(reader &r, const std::vector<double> &kappas, const std::string &path)
        {
            for (std::size_t i = 0; i < kappas.size(); ++i)
                if (kappas[i] < 0.0)
                    r.fail(path + "[" + std::to_string(i) + "]", "kappa must be >= 0");
        }

        inline void check_elevation(reader &r, double deg, const std::string &path)
        {
            if (std::abs(deg) > 90.0)
                r.fail(path, "must be in [-90, 90]");
        }

        inline mode_params read_mode_block(reader &r, sweep_mode mode, const json &b, const std::string &p)
        {
            using rd = reader;
            switch (mode)
            {
            case sweep_mode::scf_curve:
            {
                scf_curve_params q;
                q.d_over_lambda = rd::linspace(0.0, 3.0, 121);
                r.reject_unknown(b, p, {"kappas", "betas_deg", "mu_phi_deg", "mu_psi_deg", "d_over_lambda"});
                r.number_list(b, p, "kappas", q.kappas);
                r.number_list(b, p, "betas_deg", q.betas_deg);
                r.number(b, p, "mu_phi_deg", q.mu_phi_deg);
                r.number(b, p, "mu_psi_deg", q.mu_psi_deg);
                r.grid(b, p, "d_over_lambda", q.d_over_lambda);
                check_kappas(r, q.kappas, rd::join(p, "kappas"));
                check_elevation(r, q.mu_psi_deg, rd::join(p, "mu_psi_deg"));
                return q;
            }
            case sweep_mode::scf_field:
            {
                scf_field_params q;
                q.x_over_lambda = rd::linspace(-3.0, 3.0, 61);
                q.y_over_lambda = q.x_over_lambda;
                r.reject_unknown(b, p, {"x_over_lambda", "y_over_lambda", "z_over_lambda"});
                r.grid(b, p, "x_over_lambda", q.x_over_lambda);
                r.grid(b, p, "y_over_lambda", q.y_over_lambda);
                r.number(b, p, "z_over_lambda", q.z_over_lambda);
                return q;
            }
            case sweep_mode::acf_curve:
            {
                acf_curve_params q;
                r.reject_unknown(b, p, {"speed_mps", "motion_azimuth_deg", "motion_elevation_deg", "monostatic", "dt_s"});
                if (!b.contains("speed_mps"))
                    r.fail(rd::join(p, "speed_mps"), "required");
                if (!b.contains("dt_s"))
                    r.fail(rd::join(p, "dt_s"), "required");
                r.number(b, p, "speed_mps", q.speed_mps);
                r.number(b, p, "motion_azimuth_deg", q.motion_azimuth_deg);
                r.number(b, p, "motion_elevation_deg", q.motion_elevation_deg);
                r.boolean(b, p, "monostatic", q.monostatic);
                r.grid(b, p, "dt_s", q.dt_s);
                if (q.speed_mps < 0.0)
                    r.fail(rd::join(p, "speed_mps"), "must be >= 0");
                check_elevation(r, q.motion_elevation_deg, rd::join(p, "motion_elevation_deg"));
                return q;
            }
            case sweep_mode::array_matrix:
            {
                array_matrix_params q;
                r.reject_unknown(b, p, {"geometry"});
                if (b.contains("geometry"))
                    read_geometry(r, b.at("geometry"), rd::join(p, "geometry"), q.geometry);
                return q;
            }
            case sweep_mode::array_path:
            {
                array_path_params q;
                q.geometry.type = "circular";
                q.geometry.n = 121;
                r.reject_unknown(b, p, {"geometry", "stationarity_tol"});
                if (b.contains("geometry"))
                    read_geometry(r, b.at("geometry"), rd::join(p, "geometry"), q.geometry);
                r.number(b, p, "stationarity_tol", q.stationarity_tol);
                if (q.stationarity_tol < 0.0)
                    r.fail(rd::join(p, "stationarity_tol"), "must be >= 0");
                return q;
            }
            case sweep_mode::radar_table:
            {
                radar_table_params q;
                r.reject_unknown(b, p, {"carrier_frequency_hz", "target_elevation_deg", "widths_deg", "speeds_kmh",
                                        "monostatic", "receding"});
                r.number(b, p, "carrier_frequency_hz", q.carrier_frequency_hz);
                r.number(b, p, "target_elevation_deg", q.target_elevation_deg);
                r.number_list(b, p, "widths_deg", q.widths_deg);
                r.number_list(b, p, "speeds_kmh", q.speeds_kmh);
                r.boolean(b, p, "monostatic", q.monostatic);
                r.boolean(b, p, "receding", q.receding);
                if (!(q.carrier_frequency_hz > 0.0))
                    r.fail(rd::join(p, "carrier_frequency_hz"), "must be positive");
                check_elevation(r, q.target_elevation_deg, rd::join(p, "target_elevation_deg"));
                for (std::size_t i = 0; i < q.widths_deg.size(); ++i)
                    if (!(q.widths_deg[i] > 0.0 && q.widths_deg[i] < 180.0))
                        r.fail(rd::join(p, "widths_deg") + "[" + std::to_string(i) + "]", "must be in (0, 180)");
                for (std::size_t i = 0; i < q.speeds_kmh.size(); ++i)
                    if (!(q.speeds_kmh[i] > 0.0))
                        r.fail(rd::join(p, "speeds_kmh") + "[" + std::to_string(i) + "]", "must be positive");
                return q;
            }
            case sweep_mode::validate:
            {
                validate_params q;
                q.d_over_lambda = rd::linspace(0.0, 3.0, 13);
                r.reject_unknown(b, p, {"kappas", "betas_deg", "mu_phi_deg", "mu_psi_deg", "d_over_lambda",
                                        "tolerance", "montecarlo_points", "montecarlo_realizations",
                                        "montecarlo_paths"});
                r.number_list(b, p, "kappas", q.kappas);
                r.number_list(b, p, "betas_deg", q.betas_deg);
                r.number(b, p, "mu_phi_deg", q.mu_phi_deg);
                r.number(b, p, "mu_psi_deg", q.mu_psi_deg);
                r.grid(b, p, "d_over_lambda", q.d_over_lambda);
                r.number(b, p, "tolerance", q.tolerance);
                r.number(b, p, "montecarlo_points", q.montecarlo_points);
                r.number(b, p, "montecarlo_realizations", q.montecarlo_realizations);
                r.number(b, p, "montecarlo_paths", q.montecarlo_paths);
                check_kappas(r, q.kappas, rd::join(p, "kappas"));
                for (std::size_t i = 0; i < q.kappas.size(); ++i)
                    if (q.kappas[i] > 1e4)
                        r.fail(rd::join(p, "kappas") + "[" + std::to_string(i) + "]", "kappa must be <= 1e4 for quadrature");
                check_elevation(r, q.mu_psi_deg, rd::join(p, "mu_psi_deg"));
                if (!(q.tolerance > 0.0))
                    r.fail(rd::join(p, "tolerance"), "must be positive");
                if (q.montecarlo_points > 0 && q.montecarlo_realizations < 100)
                    r.fail(rd::join(p, "montecarlo_realizations"), "must be >= 100");
                if (q.montecarlo_points > 0 && q.montecarlo_paths < 10)
                    r.fail(rd::join(p, "montecarlo_paths"), "must be >= 10");
                return q;
            }
            }
            return scf_curve_params{};
        }

        inline std::string locate(const std::string &text, std::size_t byte)
        {
            std::size_t line = 1, column = 1;
            for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
            {
                if (text[i] == '\n')
                    ++line, column = 1;
                else
                    ++column;
            }
            return "line " + std::to_string(line) + ", column " + std::to_string(column);
        }
    }

    // Parses and validates a JSON sweep configuration
    // - The document holds common keys plus exactly one mode block keyed by the mode name
    // - cli_mode, when given, must agree with the document
    inline sweep_config parse_config(const std::string &text, std::optional<sweep_mode> cli_mode = std::nullopt)
    {
        using detail::json;
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw parse_error("parse error at " + detail::locate(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                              e.what());
        }

        detail::reader r;
        sweep_config cfg;
        if (!doc.is_object())
            throw validation_error({"<root>: expected a JSON object"});

        std::set<std::string> allowed{"mode", "wavelength_m", "frequency_hz", "clusters", "format", "out",
                                      "seed", "threads", "threshold", "quadrature"};
        for (const auto &[m, name] : mode_names())
            allowed.insert(name);
        r.reject_unknown(doc, "", allowed);

        // Mode: CLI argument, "mode" key and the mode block must agree
        std::vector<sweep_mode> blocks;
        for (const auto &[m, name] : mode_names())
            if (doc.contains(name))
                blocks.push_back(m);
        if (blocks.size() > 1)
            r.fail("<root>", "more than one mode block given; exactly one mode is allowed");

        std::optional<sweep_mode> mode = cli_mode;
        auto agree = [&](sweep_mode m, const std::string &where)
        {
            if (mode && *mode != m)
                r.fail(where, "mode " + to_string(m) + " conflicts with " + to_string(*mode));
            else
                mode = m;
        };
        if (doc.contains("mode"))
        {
            std::string s;
            r.string(doc, "", "mode", s);
            if (auto m = mode_from_string(s))
                agree(*m, "mode");
            else if (!s.empty())
                r.fail("mode", "unknown mode '" + s + "'");
        }
        if (blocks.size() == 1)
            agree(blocks.front(), to_string(blocks.front()));
        if (!mode)
            r.fail("mode", "no mode given");
        cfg.mode = mode.value_or(sweep_mode::scf_curve);

        // Common keys
        if (doc.contains("wavelength_m") && doc.contains("frequency_hz"))
            r.fail("wavelength_m", "give either wavelength_m or frequency_hz, not both");
        r.number(doc, "", "wavelength_m", cfg.wavelength);
        if (doc.contains("frequency_hz"))
        {
            double f = 0.0;
            r.number(doc, "", "frequency_hz", f);
            if (f > 0.0)
                cfg.wavelength = 299792458.0 / f;
            else
                r.fail("frequency_hz", "must be positive");
        }
        if (!(cfg.wavelength > 0.0))
            r.fail("wavelength_m", "must be positive");

        std::string format = "csv";
        r.string(doc, "", "format", format);
        if (format == "csv")
            cfg.format = output_format::csv;
        else if (format == "json")
            cfg.format = output_format::json;
        else
            r.fail("format", "must be csv or json");

        if (doc.contains("out"))
        {
            std::string out;
            r.string(doc, "", "out", out);
            cfg.out = out;
        }
        r.number(doc, "", "seed", cfg.seed);
        r.number(doc, "", "threads", cfg.threads);
        r.number(doc, "", "threshold", cfg.threshold);
        if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0))
            r.fail("threshold", "must be in (0, 1)");

        if (doc.contains("quadrature") && r.is_object(doc.at("quadrature"), "quadrature"))
        {
            const json &q = doc.at("quadrature");
            r.reject_unknown(q, "quadrature", {"abs_tol", "rel_tol", "max_subdivisions"});
            r.number(q, "quadrature", "abs_tol", cfg.quadrature.abs_tol);
            r.number(q, "quadrature", "rel_tol", cfg.quadrature.rel_tol);
            std::size_t max_sub = std::size_t(cfg.quadrature.max_subdivisions);
            r.number(q, "quadrature", "max_subdivisions", max_sub);
            cfg.quadrature.max_subdivisions = int(std::min<std::size_t>(max_sub, 1000000));
            if (!(cfg.quadrature.abs_tol > 0.0) || !(cfg.quadrature.rel_tol > 0.0))
                r.fail("quadrature", "tolerances must be positive");
            if (cfg.quadrature.max_subdivisions < 1)
                r.fail("quadrature.max_subdivisions", "must be >= 1");
        }

        if (doc.contains("clusters"))
        {
            const json &cl = doc.at("clusters");
            if (!cl.is_array() || cl.empty())
                r.fail("clusters", "expected a nonempty array of cluster objects");
            else
            {
                bool explicit_power = false;
                for (std::size_t i = 0; i < cl.size(); ++i)
                {
                    const std::string p = "clusters[" + std::to_string(i) + "]";
                    if (!r.is_object(cl[i], p))
                        continue;
                    r.reject_unknown(cl[i], p, {"mu_phi_deg", "mu_psi_deg", "kappa", "power"});
                    cluster_spec c;
                    c.power = 1.0 / double(cl.size());
                    explicit_power = explicit_power || cl[i].contains("power");
                    r.number(cl[i], p, "mu_phi_deg", c.mu_phi_deg);
                    r.number(cl[i], p, "mu_psi_deg", c.mu_psi_deg);
                    r.number(cl[i], p, "kappa", c.kappa);
                    r.number(cl[i], p, "power", c.power);
                    if (c.kappa < 0.0)
                        r.fail(p + ".kappa", "kappa must be >= 0");
                    detail::check_elevation(r, c.mu_psi_deg, p + ".mu_psi_deg");
                    if (!(c.power > 0.0 && c.power <= 1.0))
                        r.fail(p + ".power", "must be in (0, 1]");
                    cfg.clusters.push_back(c);
                }
                double total = 0.0;
                for (const auto &c : cfg.clusters)
                    total += c.power;
                if (explicit_power && cfg.clusters.size() == cl.size() && std::abs(total - 1.0) > 1e-9)
                    r.fail("clusters", "powers must sum to 1 (got " + std::to_string(total) + ")");
            }
        }

        const bool needs_clusters = cfg.mode == sweep_mode::scf_field || cfg.mode == sweep_mode::acf_curve ||
                                    cfg.mode == sweep_mode::array_matrix || cfg.mode == sweep_mode::array_path;
        if (needs_clusters && !doc.contains("clusters"))
            r.fail("clusters", "required for mode " + to_string(cfg.mode));

        const std::string block_name = to_string(cfg.mode);
        const json empty = json::object();
        const json &block = doc.contains(block_name) ? doc.at(block_name) : empty;
        if (r.is_object(block, block_name))
            cfg.params = detail::read_mode_block(r, cfg.mode, block, block_name);
        else
            cfg.params = detail::read_mode_block(r, cfg.mode, empty, block_name);

        if (!r.errors.empty())
            throw validation_error(r.errors);
        return cfg;
    }
}

#endif
