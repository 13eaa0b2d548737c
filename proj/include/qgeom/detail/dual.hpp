#pragma once

#include <cmath>

namespace qgeom::detail {

// Forward-mode dual number: v + d*eps with eps^2 = 0.
struct Dual {
  double v = 0.0;
  double d = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}
};

constexpr Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator-(Dual a) { return {-a.v, -a.d}; }
constexpr Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
constexpr Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

inline Dual sin(Dual a) { return {std::sin(a.v), a.d * std::cos(a.v)}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -a.d * std::sin(a.v)}; }

inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }

// Complex number over a real scalar that may be a Dual. std::complex<T> is
// unspecified for non-floating T, so the closed-form maps use this instead.
template <class T>
struct Cx {
  T re{};
  T im{};
};

template <class T>
constexpr Cx<T> operator+(const Cx<T>& a, const Cx<T>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class T>
constexpr Cx<T> operator-(const Cx<T>& a, const Cx<T>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class T>
constexpr Cx<T> operator-(const Cx<T>& a) {
  return {-a.re, -a.im};
}
template <class T>
constexpr Cx<T> operator*(const Cx<T>& a, const Cx<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
constexpr Cx<T> operator*(const T& s, const Cx<T>& a) {
  return {s * a.re, s * a.im};
}

/// e^{i phi}
template <class T>
Cx<T> cis(const T& phi) {
  using std::cos;
  using std::sin;
  return {cos(phi), sin(phi)};
}

template <class T>
constexpr Cx<T> real_cx(const T& x) {
  return {x, T(0.0)};
}

/// Multiply by -i.
template <class T>
constexpr Cx<T> minus_i(const Cx<T>& a) {
  return {a.im, -a.re};
}

}  // namespace qgeom::detail
