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

#ifndef VMFCORR_SPECIAL_FUNCTIONS_HPP
#define VMFCORR_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

namespace vmfcorr
{
    // |w| at or below which sinc(sqrt(w)) is summed as a power series in w
    inline constexpr double csinc_series_threshold = 0.25;

    // Square root of w on the branch with nonnegative imaginary part
    // - For real positive w the result is the nonnegative real root
    template <typename T>
    std::complex<T> sqrt_upper(const std::complex<T> &w)
    {
        std::complex<T> z = std::sqrt(w);
        if (z.imag() < T(0))
            z = -z;
        return z;
    }

    // Power series of sinc(sqrt(w)) = sum_k (-w)^k / (2k+1)!
    // - 12 terms bound the truncation error by 0.25^12 / 25! < 1e-32 for |w| <= 0.25
    template <typename T>
    std::complex<T> csinc_sqrt_series(const std::complex<T> &w)
    {
        constexpr int n_terms = 12;
        // Horner evaluation from the highest term down
        std::complex<T> acc(T(1));
        for (int k = n_terms - 1; k >= 1; --k)
            acc = T(1) - w * acc / T((2 * k) * (2 * k + 1));
        return acc;
    }

    // sinc(sqrt(w)) = sin(z) / z with z^2 = w, as an entire function of w
    // - Independent of the choice of square-root branch
    // - Series near w = 0, so w = 0 returns exactly 1
    template <typename T>
    std::complex<T> csinc_sqrt(const std::complex<T> &w)
    {
        static_assert(std::is_floating_point_v<T>);
        if (std::abs(w) <= T(csinc_series_threshold))
            return csinc_sqrt_series(w);
        const std::complex<T> z = sqrt_upper(w);
        return std::sin(z) / z;
    }

    // exp(log_scale) * sinc(sqrt(w)) without intermediate overflow
    // - With z = sqrt_upper(w): sin(z)/z = exp(-jz - log z) * (exp(2jz) - 1) / (2j)
    //   and |exp(2jz)| <= 1, so all growth is carried by the exponent
    template <typename T>
    std::complex<T> scaled_csinc_sqrt(const std::complex<T> &w, T log_scale)
    {
        const std::complex<T> j(T(0), T(1));
        if (std::abs(w) <= T(csinc_series_threshold))
            return std::exp(log_scale) * csinc_sqrt_series(w);
        const std::complex<T> z = sqrt_upper(w);
        const std::complex<T> head = std::exp(log_scale - j * z - std::log(z));
        return head * (std::exp(T(2) * j * z) - T(1)) / (T(2) * j);
    }

    // log(sinh(x)) for x > 0
    template <typename T>
    T log_sinh(T x)
    {
        if (x > T(1))
            return x + std::log1p(-std::exp(T(-2) * x)) - std::numbers::ln2_v<T>;
        return std::log(std::sinh(x));
    }

    // log(kappa / sinh(kappa)), continuously extended to 0 at kappa = 0
    template <typename T>
    T log_kappa_over_sinh(T kappa)
    {
        if (kappa == T(0))
            return T(0);
        return std::log(kappa) - log_sinh(kappa);
    }

    // Real sinc(x) = sin(x)/x with sinc(0) = 1
    template <typename T>
    T sinc(T x)
    {
        if (std::abs(x) < T(1e-4))
        {
            const T x2 = x * x;
            return T(1) - x2 / T(6) * (T(1) - x2 / T(20));
        }
        return std::sin(x) / x;
    }
}

#endif
