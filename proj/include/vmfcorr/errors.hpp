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

#ifndef VMFCORR_ERRORS_HPP
#define VMFCORR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vmfcorr
{
    // Argument outside the mathematical domain of an operation (negative kappa, bad angle, ...)
    class domain_error : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Cluster powers of a mixture do not sum to one
    class normalization_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // The large-kappa approximation was asked to evaluate at z = 0
    class degenerate_argument_error : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Adaptive quadrature ran out of subdivisions before reaching the requested tolerance
    class tolerance_not_met : public std::runtime_error
    {
    public:
        tolerance_not_met(const std::string &what, double achieved_error)
            : std::runtime_error(what), achieved_error_(achieved_error) {}

        double achieved_error() const noexcept { return achieved_error_; }

    private:
        double achieved_error_;
    };

    // A threshold crossing was not found within the search horizon
    class not_found_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A curve lacks the +/- matched samples needed for a symmetry check
    class mismatch_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    namespace detail
    {
        inline void require(bool condition, const std::string &message)
        {
            if (!condition)
                throw domain_error(message);
        }
    }
}

#endif
