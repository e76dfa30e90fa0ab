// SPDX-License-Identifier: Apache-2.0
//
// polywigner: analytic phase-space transforms for polygonal apertures
// Copyright (C) 2026 The polywigner authors
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

#pragma once

#include "polywigner/common.hpp"
#include "polywigner/geometry.hpp"

#include <span>
#include <variant>

namespace pw {

/// Normalised sinc, sin(pi x) / (pi x).
double sinc(double x);

/// Closed-form transforms of uniformly illuminated (unit amplitude) figures:
///   F(nu) = integral over the figure of exp(sign * 2*pi*j * nu.x).
/// Polygons use the directed edge sum; polyhedra sum their faces.

Complex sft_segment(const Wavevector& nu, const Segment1D& seg,
                    KernelSign sign = KernelSign::Negative);

/// Returns area * exp(sign*2*pi*j nu.centroid) when the in-plane part of nu
/// is below tol::wavevector.
Complex sft_polygon(const Wavevector& nu, const Polygon& polygon,
                    KernelSign sign = KernelSign::Negative);

/// Coherent sum over the parts of a set.
Complex sft_polygon_set(const Wavevector& nu, const PolygonSet& set,
                        KernelSign sign = KernelSign::Negative);

/// Returns the volume (times the centroid phase) when |nu| <= tol::wavevector.
Complex sft_polyhedron(const Wavevector& nu, const Polyhedron& solid,
                       KernelSign sign = KernelSign::Negative);

using Radiator = std::variant<Segment1D, Polygon, Polyhedron>;

enum class CombineMode {
  Sum,          ///< plain coherent sum, linear in the parts
  Directional,  ///< obliquity-weighted collection forms
};

/// Transform of a coherently radiating collection of same-dimension parts.
///
/// Directional mode weights segments by (1 - nu.p/|nu|) with p the segment
/// direction and polygons by (nu.n/|nu|). It is undefined for polyhedra and
/// for |nu| <= tol::wavevector (ZeroFrequency).
Complex sft_collection(const Wavevector& nu, std::span<const Radiator> parts, CombineMode mode,
                       KernelSign sign = KernelSign::Negative);

}  // namespace pw
