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

#ifndef VMFCORR_QUADRATURE_HPP
#define VMFCORR_QUADRATURE_HPP

#include "errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <vector>

namespace vmfcorr
{
    struct quadrature_spec
    {
        double abs_tol = 1e-12;
        double rel_tol = 1e-11;
        int max_subdivisions = 2000;

        void validate() const
        {
            detail::require(abs_tol > 0.0 && rel_tol > 0.0, "quadrature_spec: tolerances must be positive");
            detail::require(max_subdivisions >= 1, "quadrature_spec: max_subdivisions must be >= 1");
        }
    };

    template <typename V>
    struct quadrature_result
    {
        V value{};
        double error = 0.0;
        int intervals = 0;
    };

    namespace detail
    {
        // 15-point Kronrod nodes (nonnegative half) and weights; odd indices are the 7-point Gauss nodes
        inline constexpr std::array<double, 8> gk15_nodes{
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        inline constexpr std::array<double, 8> gk15_kronrod_weights{
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        inline constexpr std::array<double, 4> gk15_gauss_weights{
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        template <typename V>
        struct gk_panel
        {
            double a, b;
            V value;
            double error;
            bool operator<(const gk_panel &o) const { return error < o.error; }
        };

        template <typename V, typename F>
        gk_panel<V> gk15(F &f, double a, double b)
        {
            const double center = 0.5 * (a + b), half = 0.5 * (b - a);
            const V f_center = f(center);
            V kronrod = f_center * gk15_kronrod_weights[7];
            V gauss = f_center * gk15_gauss_weights[3];
            for (int i = 0; i < 7; ++i)
            {
                const double dx = half * gk15_nodes[i];
                const V sum = f(center - dx) + f(center + dx);
                kronrod += sum * gk15_kronrod_weights[i];
                if (i % 2 == 1)
                    gauss += sum * gk15_gauss_weights[i / 2];
            }
            return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
        }
    }

    // Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b]
    // - V is double or std::complex<double>
    // - The panel with the largest error estimate is bisected until
    //   total error <= max(abs_tol, rel_tol * |integral|)
    // - Throws tolerance_not_met when max_subdivisions is exhausted
    template <typename V, typename F>
    quadrature_result<V> integrate_adaptive(F &&f, double a, double b, const quadrature_spec &spec)
    {
        spec.validate();
        std::priority_queue<detail::gk_panel<V>> panels;
        auto first = detail::gk15<V>(f, a, b);
        V total = first.value;
        double total_error = first.error;
        panels.push(first);

        int intervals = 1;
        while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
        {
            if (intervals >= spec.max_subdivisions)
                throw tolerance_not_met("integrate_adaptive: tolerance not met, achieved error " +
                                            std::to_string(total_error),
                                        total_error);
            const auto worst = panels.top();
            panels.pop();
            const double mid = 0.5 * (worst.a + worst.b);
            auto left = detail::gk15<V>(f, worst.a, mid);
            auto right = detail::gk15<V>(f, mid, worst.b);
            total += left.value + right.value - worst.value;
            total_error += left.error + right.error - worst.error;
            panels.push(left);
            panels.push(right);
            ++intervals;
        }

        // Resum to drop the running-update round-off
        quadrature_result<V> r;
        r.intervals = intervals;
        while (!panels.empty())
        {
            r.value += panels.top().value;
            r.error += panels.top().error;
            panels.pop();
        }
        return r;
    }
}

#endif
