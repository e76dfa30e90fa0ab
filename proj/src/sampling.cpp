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

#include "polywigner/sampling.hpp"

#include "planar.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace pw {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

AreaSampler::AreaSampler(const PolygonSet& region) {
  const PlaneFrame& f = region.frame();
  for (const auto& part : region.parts()) {
    auto r = part.local(f);
    if (planar::signed_area(r) < 0.0) std::reverse(r.begin(), r.end());
    for (const auto& t : planar::triangulate(r)) {
      const double a = 0.5 * std::abs(planar::cross(t[1] - t[0], t[2] - t[0]));
      if (a <= 0.0) continue;
      tris_.push_back({f.to_world(t[0]), f.to_world(t[1]), f.to_world(t[2])});
      areas_.push_back(a);
      area_ += a;
    }
  }
}

namespace {

Point3 warp(const std::array<Point3, 3>& t, double u1, double u2) {
  const double s = std::sqrt(u1);
  return (1.0 - s) * t[0] + s * (1.0 - u2) * t[1] + s * u2 * t[2];
}

}  // namespace

AreaSample AreaSampler::draw(std::size_t n, std::mt19937_64& rng) const {
  AreaSample out;
  if (n == 0 || tris_.empty()) return out;
  out.points.reserve(n);
  out.weights.reserve(n);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  if (n < tris_.size()) {
    std::discrete_distribution<std::size_t> pick(areas_.begin(), areas_.end());
    for (std::size_t i = 0; i < n; ++i) {
      const double u1 = uni(rng), u2 = uni(rng);
      out.points.push_back(warp(tris_[pick(rng)], u1, u2));
      out.weights.push_back(area_ / static_cast<double>(n));
    }
    return out;
  }

  // Largest-remainder allocation with at least one sample per triangle.
  std::vector<std::size_t> count(tris_.size(), 1);
  std::size_t left = n - tris_.size();
  std::vector<double> rem(tris_.size());
  std::size_t given = 0;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    const double exact = static_cast<double>(left) * areas_[t] / area_;
    const auto whole = static_cast<std::size_t>(exact);
    count[t] += whole;
    given += whole;
    rem[t] = exact - static_cast<double>(whole);
  }
  std::vector<std::size_t> order(tris_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rem[a] > rem[b]; });
  for (std::size_t i = 0; given < left; ++i, ++given) ++count[order[i % order.size()]];

  std::vector<std::size_t> perm;
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    const std::size_t m = count[t];
    perm.resize(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const double w = areas_[t] / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double u1 = (static_cast<double>(i) + uni(rng)) / static_cast<double>(m);
      const double u2 = (static_cast<double>(perm[i]) + uni(rng)) / static_cast<double>(m);
      out.points.push_back(warp(tris_[t], u1, u2));
      out.weights.push_back(w);
    }
  }
  return out;
}

Estimate combine_batches(const std::vector<double>& v) {
  Estimate e;
  if (v.empty()) return e;
  const double k = static_cast<double>(v.size());
  e.value = std::accumulate(v.begin(), v.end(), 0.0) / k;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - e.value) * (x - e.value);
    e.std_error = std::sqrt(ss / (k - 1.0) / k);
  }
  return e;
}

Estimate AreaSampler::integrate(const std::function<double(const Point3&)>& f, std::size_t n,
                                std::mt19937_64& rng, std::size_t batches) const {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
  batches = std::clamp<std::size_t>(batches, 1, n);
  std::vector<double> vals;
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t m = n / batches + (b < n % batches ? 1 : 0);
    const auto s = draw(m, rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.points.size(); ++i) acc += s.weights[i] * f(s.points[i]);
    vals.push_back(acc);
  }
  return combine_batches(vals);
}

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
  const unsigned n = g_threads;
  return n ? n : std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  auto run = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace pw
