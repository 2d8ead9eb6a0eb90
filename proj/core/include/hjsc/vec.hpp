#pragma once

#include <cmath>

namespace hjsc {

// Points, velocities and gradients in one or two dimensions. 1D quantities
// keep y == 0 so norms and dot products need no special casing.
struct Vec {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec& operator+=(Vec o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec& operator-=(Vec o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr Vec operator+(Vec a, Vec b) { return a += b; }
  friend constexpr Vec operator-(Vec a, Vec b) { return a -= b; }
  friend constexpr Vec operator-(Vec a) { return {-a.x, -a.y}; }
  friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
  friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
  friend constexpr Vec operator/(Vec a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec, Vec) = default;
};

constexpr double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec a) { return std::hypot(a.x, a.y); }

}  // namespace hjsc
