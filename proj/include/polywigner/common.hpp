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

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pw {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Point3 = Eigen::Vector3d;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

namespace tol {
inline constexpr double plane = 1e-9;    ///< planarity, m
inline constexpr double area = 1e-12;    ///< degeneracy, m^2
inline constexpr double snap = 1e-12;    ///< clipping coordinate snap, m
inline constexpr double wavevector = 1e-9;  ///< singular-limit switch, R (= 1/m)
}  // namespace tol

/// Spatial frequency vector in Raman (inverse meters).
///
/// Kept distinct from positions so a lag or a point cannot be passed where a
/// frequency is expected.
class Wavevector {
 public:
  Wavevector() : value_(Vec3::Zero()) {}
  explicit Wavevector(const Vec3& v) : value_(v) {}
  Wavevector(double x, double y, double z) : value_(x, y, z) {}

  const Vec3& vec() const { return value_; }
  double x() const { return value_.x(); }
  double y() const { return value_.y(); }
  double z() const { return value_.z(); }
  double norm() const { return value_.norm(); }

  Wavevector operator-() const { return Wavevector(-value_); }

 private:
  Vec3 value_;
};

/// Sign of the forward kernel exp(sign * 2*pi*j * nu.x).
///
/// Negative is the forward transform used throughout; Positive reproduces
/// the literal edge-sum kernel exp(+2*pi*j*nu.V) and therefore returns the
/// complex conjugate of the Negative result for real apertures.
enum class KernelSign : int { Negative = -1, Positive = 1 };

inline double sign_value(KernelSign s) { return static_cast<int>(s); }

/// Base class for all library errors. Carries an exit-code category so the
/// command line front end can map failures without string matching.
class Error : public std::runtime_error {
 public:
  enum class Category { Geometry, Numerical, Budget, Config, Io };

  Error(Category c, const std::string& what) : std::runtime_error(what), category_(c) {}
  Category category() const { return category_; }

 private:
  Category category_;
};

class GeometryError : public Error {
 public:
  enum class Kind { NonPlanar, SelfIntersecting, Degenerate, PlaneMismatch, NotOutward };

  GeometryError(Kind k, const std::string& what)
      : Error(Category::Geometry, what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ZeroFrequency : public Error {
 public:
  explicit ZeroFrequency(const std::string& what) : Error(Category::Numerical, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(Category::Budget, what) {}
};

}  // namespace pw
