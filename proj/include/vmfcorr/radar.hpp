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

#ifndef VMFCORR_RADAR_HPP
#define VMFCORR_RADAR_HPP

#include "correlation.hpp"
#include "errors.hpp"
#include "vmf.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace vmfcorr
{
    inline constexpr double speed_of_light = 299792458.0; // [m/s]

    // A moving target seen by a radar, modeled as one vMF cluster of scatterers
    // - The mean DOA points from the radar towards the target
    // - The target moves horizontally in the vertical plane containing the line of sight,
    //   away from the radar when receding is set
    struct radar_scenario
    {
        double carrier_frequency = 10e9;    // [Hz]
        double target_elevation = 0.0;      // [rad]
        double target_angular_width = 0.0;  // [rad]
        double target_speed = 0.0;          // [m/s]
        bool receding = true;
        bool monostatic = true;

        void validate() const
        {
            detail::require(std::isfinite(carrier_frequency) && carrier_frequency > 0.0,
                            "radar_scenario: carrier frequency must be positive");
            detail::require(std::abs(target_elevation) <= pi / 2.0, "radar_scenario: elevation outside [-pi/2, pi/2]");
            detail::require(target_angular_width > 0.0 && target_angular_width < pi,
                            "radar_scenario: angular width must be in (0, pi)");
            detail::require(std::isfinite(target_speed) && target_speed >= 0.0,
                            "radar_scenario: speed must be >= 0");
        }
    };

    struct radar_model
    {
        vmf_cluster cluster;
        motion_state motion; // Equivalent receiver motion (opposite to the target velocity)
        double wavelength;
    };

    // Static radar and moving cluster are equivalent to a static cluster and a radar moving with -v
    inline radar_model scenario_to_cluster_and_motion(const radar_scenario &s)
    {
        s.validate();
        const double kappa = kappa_from_angular_width(s.target_angular_width);
        const vmf_cluster cluster(0.0, s.target_elevation, kappa);
        const double motion_azimuth = s.receding ? pi : 0.0;
        return {cluster, motion_state(s.target_speed, motion_azimuth, 0.0), speed_of_light / s.carrier_frequency};
    }

    struct acf_point
    {
        double dt;        // [s]
        double magnitude; // |ACF(dt)|
    };

    inline std::vector<acf_point> radar_acf_curve(const radar_scenario &s, std::span<const double> dt_grid)
    {
        detail::require(std::is_sorted(dt_grid.begin(), dt_grid.end()), "radar_acf_curve: grid must be sorted");
        detail::require(dt_grid.empty() || dt_grid.front() >= 0.0, "radar_acf_curve: grid must be nonnegative");
        const radar_model m = scenario_to_cluster_and_motion(s);
        std::vector<acf_point> out;
        out.reserve(dt_grid.size());
        for (double dt : dt_grid)
            out.push_back({dt, std::abs(acf(m.cluster, m.motion, dt, m.wavelength, s.monostatic))});
        return out;
    }

    inline double radar_decorrelation_time(const radar_scenario &s, const crossing_search &opt = {})
    {
        const radar_model m = scenario_to_cluster_and_motion(s);
        return decorrelation_time(m.cluster, m.motion, m.wavelength, s.monostatic, opt);
    }

    struct decorrelation_entry
    {
        double angular_width; // [rad]
        double speed;         // [m/s]
        double kappa;
        double time; // [s]
    };

    // Decorrelation time for every (width, speed) pair, widths outer
    inline std::vector<decorrelation_entry> decorrelation_table(std::span<const double> widths,
                                                                std::span<const double> speeds,
                                                                const radar_scenario &base, double threshold = 0.5)
    {
        detail::require(!widths.empty() && !speeds.empty(), "decorrelation_table: width and speed lists must be nonempty");
        crossing_search opt;
        opt.threshold = threshold;
        std::vector<decorrelation_entry> table;
        table.reserve(widths.size() * speeds.size());
        for (double w : widths)
            for (double v : speeds)
            {
                radar_scenario s = base;
                s.target_angular_width = w;
                s.target_speed = v;
                table.push_back({w, v, kappa_from_angular_width(w), radar_decorrelation_time(s, opt)});
            }
        return table;
    }
}

#endif
