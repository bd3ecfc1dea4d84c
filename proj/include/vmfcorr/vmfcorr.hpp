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

#ifndef VMFCORR_VMFCORR_HPP
#define VMFCORR_VMFCORR_HPP

#include "arrays.hpp"
#include "correlation.hpp"
#include "errors.hpp"
#include "oracles.hpp"
#include "quadrature.hpp"
#include "radar.hpp"
#include "special_functions.hpp"
#include "vec3.hpp"
#include "vmf.hpp"

#endif
