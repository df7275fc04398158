#pragma once

// Quadrature primitives: Gauss-Legendre nodes, adaptive Gauss-Kronrod for
// complex (or arrays of complex) integrands, and tensor polar rules.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

#include "qvortex/errors.hpp"

namespace qvortex {

/// Radial/angular resolution and acceptance tolerance of a 2-D polar integral.
/// r_max <= 0 means "use the operation's documented default cutoff".
struct QuadratureSpec {
  int n_radial = 1024;
  int n_angular = 64;
  double r_max = 0.0;
  double tol = 1e-6;

  void validate() const;
};

/// Abscissae and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Tensor rule on a disk: composite Gauss-Legendre in r (weights include the
/// r Jacobian), uniform trapezoid in phi (exact for trigonometric polynomials
/// of degree < n_angular).
struct PolarRule {
  std::vector<double> radius;
  std::vector<double> radial_weight;  // w_i * r_i
  std::vector<double> cos_phi;
  std::vector<double> sin_phi;
  double angular_weight = 0.0;

  std::size_t size() const noexcept { return radius.size() * cos_phi.size(); }
};
PolarRule make_polar_rule(int n_radial, int n_angular, double r_max, int panel_nodes = 16);

template <class R>
struct QuadResult {
  R value{};
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <std::size_t N>
double magnitude(const std::array<std::complex<double>, N>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

inline double abs_sum(double v) { return std::abs(v); }
inline double abs_sum(const std::complex<double>& v) { return std::abs(v); }
template <std::size_t N>
double abs_sum(const std::array<std::complex<double>, N>& v) {
  double m = 0.0;
  for (const auto& c : v) m += std::abs(c);
  return m;
}

template <class R>
R scaled(const R& v, double s) {
  if constexpr (requires { v * s; }) {
    return v * s;
  } else {
    R out = v;
    for (auto& c : out) c *= s;
    return out;
  }
}

template <class R>
void accumulate(R& acc, const R& v) {
  if constexpr (requires { acc += v; }) {
    acc += v;
  } else {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
}

template <class R>
R difference(const R& a, const R& b) {
  R out = a;
  if constexpr (requires { out -= b; }) {
    out -= b;
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  }
  return out;
}

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class R>
struct Segment {
  double a, b;
  R value;
  double error;
  double l1;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class R, class F>
Segment<R> gauss_kronrod_15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const R fc = f(c);
  R kronrod = scaled(fc, kronrod_weights[7]);
  R gauss = scaled(fc, gauss7_weights[3]);
  double l1 = abs_sum(fc) * kronrod_weights[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kronrod_nodes[j];
    const R f1 = f(c - dx);
    const R f2 = f(c + dx);
    R pair = f1;
    accumulate(pair, f2);
    accumulate(kronrod, scaled(pair, kronrod_weights[j]));
    l1 += (abs_sum(f1) + abs_sum(f2)) * kronrod_weights[j];
    if (j % 2 == 1) accumulate(gauss, scaled(pair, gauss7_weights[j / 2]));
  }
  kronrod = scaled(kronrod, h);
  gauss = scaled(gauss, h);
  return {a, b, kronrod, magnitude(difference(kronrod, gauss)), l1 * std::abs(h)};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b].
///
/// Accepts once the summed error estimate is below
/// rel_tol * max(|I|, 1e-3 * integral of |f|); the L1 floor keeps integrals
/// that cancel to ~0 from demanding unattainable relative accuracy.
/// Throws NonConvergence (carrying the achieved estimate) after
/// max_segments subdivisions.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double rel_tol, int max_segments = 4000) {
  using R = std::decay_t<decltype(f(a))>;
  QuadResult<R> out{};
  if (!(b > a)) return out;

  std::priority_queue<detail::Segment<R>> heap;
  auto first = detail::gauss_kronrod_15<R>(f, a, b);
  R total = first.value;
  double error = first.error;
  double l1 = first.l1;
  heap.push(first);
  int evaluations = 15;

  auto accepted = [&]() {
    const double scale = std::max(detail::magnitude(total), 1e-3 * l1);
    return error <= rel_tol * scale || scale == 0.0;
  };

  while (!accepted()) {
    if (static_cast<int>(heap.size()) >= max_segments) {
      throw NonConvergence("integrate_adaptive: subdivision limit reached", error);
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gauss_kronrod_15<R>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<R>(f, mid, worst.b);
    evaluations += 30;

    total = detail::difference(total, worst.value);
    detail::accumulate(total, left.value);
    detail::accumulate(total, right.value);
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  out.value = total;
  out.error = error;
  out.evaluations = evaluations;
  return out;
}

}  // namespace qvortex
