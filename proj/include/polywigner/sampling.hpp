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

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace pw {

/// Monte-Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct VectorEstimate {
  Vec3 value{Vec3::Zero()};
  Vec3 std_error{Vec3::Zero()};
};

/// Independent generator for stream `index` under `seed`; the same pair
/// always yields the same sequence regardless of thread scheduling.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

/// Weighted point set whose weights sum to the sampled area.
struct AreaSample {
  std::vector<Point3> points;
  std::vector<double> weights;
};

/// Stratified uniform sampler over a planar region.
///
/// Samples are allocated to triangles in proportion to area (largest
/// remainder) and spread within each triangle by Latin hypercube in the
/// unit square before the area-preserving warp onto the triangle. When
/// there are fewer samples than triangles it falls back to plain
/// area-weighted sampling.
class AreaSampler {
 public:
  explicit AreaSampler(const PolygonSet& region);

  double area() const { return area_; }
  bool empty() const { return tris_.empty(); }

  AreaSample draw(std::size_t n, std::mt19937_64& rng) const;

  /// Estimates the integral of f over the region with `n` samples split into
  /// `batches` independent replicates; the spread of the replicates gives the
  /// standard error.
  Estimate integrate(const std::function<double(const Point3&)>& f, std::size_t n, std::mt19937_64& rng,
                     std::size_t batches = 8) const;

 private:
  std::vector<std::array<Point3, 3>> tris_;
  std::vector<double> areas_;
  double area_ = 0.0;
};

/// Replicate-batch estimate from per-batch integral estimates.
Estimate combine_batches(const std::vector<double>& batch_values);

/// Worker count used by parallel_for; 0 selects hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs fn(i) for i in [0, n) on the configured workers. Exceptions thrown by
/// fn are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pw
