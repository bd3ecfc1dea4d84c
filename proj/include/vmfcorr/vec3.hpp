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

#ifndef VMFCORR_VEC3_HPP
#define VMFCORR_VEC3_HPP

#include <array>
#include <cmath>

namespace vmfcorr
{
    // Plain 3-vector in Cartesian coordinates (x, y, z)
    struct vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        constexpr vec3 operator+(const vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr vec3 operator-(const vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr vec3 operator-() const { return {-x, -y, -z}; }
        constexpr vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr vec3 &operator+=(const vec3 &o)
        {
            x += o.x, y += o.y, z += o.z;
            return *this;
        }
        constexpr bool operator==(const vec3 &) const = default;
    };

    constexpr vec3 operator*(double s, const vec3 &v) { return v * s; }

    constexpr double dot(const vec3 &a, const vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

    constexpr vec3 cross(const vec3 &a, const vec3 &b)
    {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }

    inline double norm(const vec3 &v) { return std::hypot(v.x, v.y, v.z); }

    constexpr double norm_squared(const vec3 &v) { return dot(v, v); }

    inline bool is_finite(const vec3 &v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

    // Row-major 3x3 rotation matrix
    struct rotation3
    {
        std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

        constexpr vec3 operator*(const vec3 &v) const
        {
            return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                    m[3] * v.x + m[4] * v.y + m[5] * v.z,
                    m[6] * v.x + m[7] * v.y + m[8] * v.z};
        }

        // Rodrigues formula, axis must be unit length
        static rotation3 about_axis(const vec3 &axis, double angle)
        {
            const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
            const double x = axis.x, y = axis.y, z = axis.z;
            return {{t * x * x + c, t * x * y - s * z, t * x * z + s * y,
                     t * x * y + s * z, t * y * y + c, t * y * z - s * x,
                     t * x * z - s * y, t * y * z + s * x, t * z * z + c}};
        }
    };
}

#endif
