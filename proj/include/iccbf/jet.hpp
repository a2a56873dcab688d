// Copyright 2026 The iccbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// \file
/// Nested forward-mode jets.
///
/// A `Jet<T>` carries a value and one directional derivative, both of type
/// `T`. Nesting (`Jet<Jet<double>>`, ...) yields higher derivatives: each
/// level of nesting adds one order of differentiation. A depth-0 jet is a
/// plain `double`.

#include <cmath>
#include <concepts>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>

#ifndef ICCBF_MAX_JET_DEPTH
#define ICCBF_MAX_JET_DEPTH 4
#endif

namespace iccbf {

inline constexpr int kMaxJetDepth = ICCBF_MAX_JET_DEPTH;

/// Raised by jet primitives evaluated outside their domain (e.g. sqrt of a
/// non-positive jet).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename T>
struct Jet;

template <typename T>
struct JetTraits {
  static constexpr int depth = 0;
};

template <typename T>
struct JetTraits<Jet<T>> {
  static constexpr int depth = 1 + JetTraits<T>::depth;
};

template <typename T>
inline constexpr int jet_depth_v = JetTraits<std::remove_cvref_t<T>>::depth;

template <int D>
struct NestedJet {
  using type = Jet<typename NestedJet<D - 1>::type>;
};

template <>
struct NestedJet<0> {
  using type = double;
};

/// `JetN<0>` is `double`, `JetN<2>` is `Jet<Jet<double>>`.
template <int D>
using JetN = typename NestedJet<D>::type;

template <typename T>
concept Scalar = std::same_as<T, double> || (jet_depth_v<T> > 0);

constexpr double primal(double x) noexcept { return x; }

template <typename T>
constexpr double primal(const Jet<T>& x) noexcept {
  return primal(x.v);
}

template <typename T>
struct Jet {
  using scalar_type = T;

  T v{};
  T d{};

  constexpr Jet() = default;
  constexpr Jet(const T& value, const T& tangent) : v(value), d(tangent) {}

  // Constant (zero tangent) from the next scalar level down.
  constexpr Jet(const T& value)  // NOLINT(google-explicit-constructor)
    requires(!std::same_as<T, double>)
      : v(value), d(0.0) {}

  constexpr Jet(double value)  // NOLINT(google-explicit-constructor)
      : v(value), d(0.0) {}

  constexpr Jet(int value)  // NOLINT(google-explicit-constructor)
      : v(static_cast<double>(value)), d(0.0) {}

  constexpr Jet& operator+=(const Jet& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  constexpr Jet& operator*=(const Jet& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  constexpr Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }

  friend constexpr Jet operator-(const Jet& a) { return {-a.v, -a.d}; }
  friend constexpr Jet operator+(const Jet& a) { return a; }

  friend constexpr Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d + b.d}; }
  friend constexpr Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d - b.d}; }
  friend constexpr Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
  }
  friend constexpr Jet operator/(const Jet& a, const Jet& b) {
    const T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
  }

  friend constexpr Jet operator+(const Jet& a, double s) { return {a.v + s, a.d}; }
  friend constexpr Jet operator+(double s, const Jet& a) { return {s + a.v, a.d}; }
  friend constexpr Jet operator-(const Jet& a, double s) { return {a.v - s, a.d}; }
  friend constexpr Jet operator-(double s, const Jet& a) { return {s - a.v, -a.d}; }
  friend constexpr Jet operator*(const Jet& a, double s) { return {a.v * s, a.d * s}; }
  friend constexpr Jet operator*(double s, const Jet& a) { return {s * a.v, s * a.d}; }
  friend constexpr Jet operator/(const Jet& a, double s) { return {a.v / s, a.d / s}; }
  friend constexpr Jet operator/(double s, const Jet& a) {
    const T q = s / a.v;
    return {q, -q * a.d / a.v};
  }

  // Ordering looks only at the innermost value.
  friend constexpr bool operator<(const Jet& a, const Jet& b) { return primal(a) < primal(b); }
  friend constexpr bool operator>(const Jet& a, const Jet& b) { return primal(a) > primal(b); }
  friend constexpr bool operator<=(const Jet& a, const Jet& b) { return primal(a) <= primal(b); }
  friend constexpr bool operator>=(const Jet& a, const Jet& b) { return primal(a) >= primal(b); }

  friend std::ostream& operator<<(std::ostream& os, const Jet& a) {
    return os << "(" << a.v << "; " << a.d << ")";
  }
};

// ---------------------------------------------------------------------------
// Elementary functions. The double overloads make generic code written
// against `iccbf::` names work at depth 0.
// ---------------------------------------------------------------------------

inline double sqrt(double x) { return std::sqrt(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double abs(double x) { return x >= 0.0 ? x : -x; }
inline double pow(double x, double p) { return std::pow(x, p); }

template <typename T>
Jet<T> sin(const Jet<T>& a) {
  return {sin(a.v), cos(a.v) * a.d};
}

template <typename T>
Jet<T> cos(const Jet<T>& a) {
  return {cos(a.v), -sin(a.v) * a.d};
}

template <typename T>
Jet<T> exp(const Jet<T>& a) {
  const T e = exp(a.v);
  return {e, e * a.d};
}

template <typename T>
Jet<T> log(const Jet<T>& a) {
  if (!(primal(a) > 0.0)) {
    throw DomainError("log of non-positive jet value " + std::to_string(primal(a)));
  }
  return {log(a.v), a.d / a.v};
}

/// Defined for strictly positive values only; the derivative is unbounded at 0.
template <typename T>
Jet<T> sqrt(const Jet<T>& a) {
  if (!(primal(a) > 0.0)) {
    throw DomainError("sqrt of non-positive jet value " + std::to_string(primal(a)));
  }
  const T r = sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}

template <typename T>
Jet<T> pow(const Jet<T>& a, double p) {
  if (!(primal(a) > 0.0)) {
    throw DomainError("pow of non-positive jet value " + std::to_string(primal(a)));
  }
  return {pow(a.v, p), p * pow(a.v, p - 1.0) * a.d};
}

// Nonsmooth primitives select the first branch at exact ties.

template <typename T>
Jet<T> abs(const Jet<T>& a) {
  return primal(a) >= 0.0 ? a : -a;
}

template <Scalar T>
T min(const T& a, const T& b) {
  return primal(b) < primal(a) ? b : a;
}

template <Scalar T>
T max(const T& a, const T& b) {
  return primal(b) > primal(a) ? b : a;
}

// ---------------------------------------------------------------------------
// Seeding and extraction
// ---------------------------------------------------------------------------

/// Seeds `a` as the variable of differentiation at `depth` levels of nesting,
/// so that `nth_derivative<k>` of a function of the result yields its k-th
/// derivative for every k <= depth.
template <int Depth>
JetN<Depth> seed_variable(double a) {
  if constexpr (Depth == 0) {
    return a;
  } else {
    return JetN<Depth>(seed_variable<Depth - 1>(a), JetN<Depth - 1>(1.0));
  }
}

/// k-th derivative along the seeded direction of a jet built by
/// `seed_variable`.
template <int K, typename T>
double nth_derivative(const T& x) {
  static_assert(K <= jet_depth_v<T>, "derivative order exceeds jet depth");
  if constexpr (K == 0) {
    return primal(x);
  } else {
    return nth_derivative<K - 1>(x.d);
  }
}

}  // namespace iccbf
