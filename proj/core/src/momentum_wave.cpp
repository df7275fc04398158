#include "qvortex/momentum_wave.hpp"

#include <array>
#include <cmath>

#include "qvortex/errors.hpp"

namespace qvortex {
namespace {

constexpr Complex I{0.0, 1.0};
const double four_pi_sq = 4.0 * pi * pi;
// k^2 at which k^2 + 1 = 4 pi.
const double ring4_k_squared = 4.0 * pi - 1.0;

void require_after_pulse(double t, const char* who) {
  if (!(t >= 4.0) || !std::isfinite(t)) {
    throw PreconditionError(std::string(who) + ": requires t >= T = 4");
  }
}

// Value and derivative of a real function of u = k^2 + 1.
struct Jet {
  double v;
  double d;
};

Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d}; }
Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d}; }
Jet operator*(Jet a, Jet b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Jet operator*(double s, Jet a) { return {s * a.v, s * a.d}; }
Jet operator/(Jet a, Jet b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
Jet variable(double u) { return {u, 1.0}; }
Jet power(Jet a, double e) {
  const double p = std::pow(a.v, e);
  return {p, e * p / a.v * a.d};
}

// sin(u)/(u - c) where delta = u - c and c is a multiple of 2 pi, so that
// sin(u) == sin(delta). sin_u and cos_u are sin/cos of the reduced argument.
Jet sin_over_shift(double delta, double sin_u, double cos_u) {
  if (std::abs(delta) < 1e-4) {
    const double d2 = delta * delta;
    return {1.0 - d2 / 6.0 + d2 * d2 / 120.0, -delta / 3.0 + delta * d2 / 30.0};
  }
  return {sin_u / delta, (cos_u * delta - sin_u) / (delta * delta)};
}

// Radial factors of the closed form, B = kx f1 + i (kx^2 f2 + f3).
struct RadialFactors {
  Jet f1, f2, f3;
};

RadialFactors radial_factors(double k_squared, double F0) {
  const double delta2 = k_squared - k0_squared;        // u - 2 pi
  const double delta4 = k_squared - ring4_k_squared;   // u - 4 pi
  const double reduced = std::abs(delta2) <= std::abs(delta4) ? delta2 : delta4;
  const double sin_u = std::sin(reduced);
  const double cos_u = std::cos(reduced);

  const Jet u = variable(k_squared + 1.0);
  const Jet g2 = sin_over_shift(delta2, sin_u, cos_u);             // sin u / (u - 2pi)
  const Jet g4 = sin_over_shift(delta4, sin_u, cos_u);             // sin u / (u - 4pi)
  const Jet h = (1.0 / (2.0 * pi)) * (g4 - g2);                     // sin u / ((u-2pi)(u-4pi))
  const Jet u_plus_2pi = u + Jet{2.0 * pi, 0.0};
  const Jet u_plus_4pi = u + Jet{4.0 * pi, 0.0};

  RadialFactors f;
  f.f1 = g2 / (u_plus_2pi * power(u, 1.5));
  const Jet seven_u2 = 7.0 * (u * u) - Jet{four_pi_sq, 0.0};
  f.f2 = (2.0 * F0) * (seven_u2 * h) / (power(u, 3.5) * u_plus_2pi * u_plus_4pi);
  f.f3 = (-2.0 * F0) * g4 / (u_plus_4pi * power(u, 2.5));
  return f;
}

Complex plane_phase(double k_squared, double t) {
  // exp(i k^2 - i E_k t) with E_k = k^2/2.
  return std::polar(1.0, k_squared * (1.0 - 0.5 * t));
}

void require_positive_k(double k, const char* who) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw PreconditionError(std::string(who) + ": requires finite k >= 0");
}

}  // namespace

Complex psi_momentum_exact(const MomentumPoint& p, double t, double F0) {
  require_after_pulse(t, "psi_momentum_exact");
  const double k2 = p.k_squared();
  const auto f = radial_factors(k2, F0);
  const Complex bracket = p.kx * f.f1.v + I * (p.kx * p.kx * f.f2.v + f.f3.v);
  return plane_phase(k2, t) * bracket;
}

Gradient psi_momentum_exact_gradient(const MomentumPoint& p, double t, double F0) {
  require_after_pulse(t, "psi_momentum_exact_gradient");
  const double k2 = p.k_squared();
  const auto f = radial_factors(k2, F0);
  const double kx = p.kx, ky = p.ky;
  const Complex bracket = kx * f.f1.v + I * (kx * kx * f.f2.v + f.f3.v);
  const Complex d_du = kx * f.f1.d + I * (kx * kx * f.f2.d + f.f3.d);
  const Complex d_dkx = f.f1.v + 2.0 * I * kx * f.f2.v + 2.0 * kx * d_du;
  const Complex d_dky = 2.0 * ky * d_du;
  const Complex phase = plane_phase(k2, t);
  const double chirp = 2.0 - t;  // d/dk_i of k^2(1 - t/2) is (2 - t) k_i
  return {phase * (d_dkx + I * chirp * kx * bracket), phase * (d_dky + I * chirp * ky * bracket)};
}

Complex psi_momentum_near_center(const MomentumPoint& p, double t, double F0) {
  require_after_pulse(t, "psi_momentum_near_center");
  const double k2 = p.k_squared();
  const double q = k2 - k0_squared;
  const Complex exponent{-q / pi, k2 * (1.0 - 0.5 * t)};
  const Complex poly{p.kx, F0 * q / (3.0 * pi * pi)};
  return std::exp(exponent) * poly;
}

Gradient psi_momentum_near_center_gradient(const MomentumPoint& p, double t, double F0) {
  require_after_pulse(t, "psi_momentum_near_center_gradient");
  const double k2 = p.k_squared();
  const double q = k2 - k0_squared;
  const double eps = F0 / (3.0 * pi * pi);
  const Complex envelope = std::exp(Complex{-q / pi, k2 * (1.0 - 0.5 * t)});
  const Complex poly{p.kx, eps * q};
  const Complex rate{-1.0 / pi, 1.0 - 0.5 * t};  // d(exponent)/d(k^2)
  const Complex dx = 2.0 * p.kx * rate * poly + Complex{1.0, 2.0 * eps * p.kx};
  const Complex dy = 2.0 * p.ky * rate * poly + Complex{0.0, 2.0 * eps * p.ky};
  return {envelope * dx, envelope * dy};
}

double psi_momentum_near_center_log_modulus(const MomentumPoint& p, double F0) {
  const double q = p.k_squared() - k0_squared;
  return -q / pi + std::log(std::abs(Complex{p.kx, F0 * q / (3.0 * pi * pi)}));
}

namespace {

struct TimeIntegrals {
  Complex I;  // int F(s) e^{iws} ds
  Complex J;  // int F(s) s e^{iws} ds
};

TimeIntegrals inner_integrals(double upper, double w, const PulseParams& pulse, double tol) {
  auto integrand = [&](double s) {
    const Complex e = laser_field(s, pulse) * std::polar(1.0, w * s);
    return std::array<Complex, 2>{e, s * e};
  };
  const auto r = integrate_adaptive(integrand, 0.0, upper, tol);
  return {r.value[0], r.value[1]};
}

// -3ik/(k^2+1)^{5/2} and its k-derivative.
std::pair<Complex, Complex> b1_prefactor(double k) {
  const double u = k * k + 1.0;
  const double p = std::pow(u, -2.5);
  const Complex pre = -3.0 * I * k * p;
  const Complex dpre = -3.0 * I * (p - 5.0 * k * k * p / u);
  return {pre, dpre};
}

void check_amplitude_args(double k, double t, const PulseParams& pulse, const QuadratureSpec& q, const char* who) {
  require_positive_k(k, who);
  if (!(t >= 0.0) || !std::isfinite(t)) throw PreconditionError(std::string(who) + ": requires t >= 0");
  pulse.validate();
  if (!(q.tol > 0.0)) throw PreconditionError(std::string(who) + ": quadrature tol must be > 0");
}

}  // namespace

Complex amplitude_b1(double k, double t, const PulseParams& pulse, const QuadratureSpec& q) {
  check_amplitude_args(k, t, pulse, q, "amplitude_b1");
  const double upper = std::min(t, pulse.T);
  if (k == 0.0 || upper <= 0.0 || pulse.F0 == 0.0) return {};
  const auto [pre, dpre] = b1_prefactor(k);
  return pre * inner_integrals(upper, transition_frequency(k), pulse, q.tol).I;
}

std::pair<Complex, Complex> amplitude_b2(double k, double t, const PulseParams& pulse, const QuadratureSpec& q) {
  check_amplitude_args(k, t, pulse, q, "amplitude_b2");
  if (k == 0.0) throw PreconditionError("amplitude_b2: k = 0 is outside the domain (1/k terms)");
  const double upper = std::min(t, pulse.T);
  if (upper <= 0.0 || pulse.F0 == 0.0) return {Complex{}, Complex{}};

  const double w = transition_frequency(k);
  const auto [pre, dpre] = b1_prefactor(k);
  const double inner_tol = 1e-2 * q.tol;

  // (d/dk - ik t' +- 1/k) b1(k, t') with d/dk acting on the prefactor and on
  // the phase exp(i w t''), whose k-derivative is i k t''.
  auto outer = [&](double tp) {
    const double field = laser_field(tp, pulse);
    if (field == 0.0) return std::array<Complex, 2>{};
    const auto in = inner_integrals(tp, w, pulse, inner_tol);
    const Complex common = I * k * pre * (in.J - tp * in.I);
    const Complex m0 = field * ((dpre + pre / k) * in.I + common);
    const Complex m2 = field * ((dpre - pre / k) * in.I + common);
    return std::array<Complex, 2>{m0, m2};
  };
  const auto r = integrate_adaptive(outer, 0.0, upper, q.tol);
  return {-I * r.value[0], 0.5 * I * r.value[1]};
}

AmplitudeSet amplitudes(double k, double t, const PulseParams& pulse, const QuadratureSpec& q) {
  const auto [m0, m2] = amplitude_b2(k, t, pulse, q);
  return {amplitude_b1(k, t, pulse, q), m0, m2};
}

Complex psi_momentum_generic(const MomentumPoint& p, double t, const PulseParams& pulse, const QuadratureSpec& q) {
  const double k = p.k();
  if (!(k > 0.0)) throw PreconditionError("psi_momentum_generic: requires k > 0");
  const auto b = amplitudes(k, t, pulse, q);
  const double cos_phi = p.kx / k;
  const double cos_2phi = (p.kx * p.kx - p.ky * p.ky) / (k * k);
  const Complex free = std::polar(1.0, -p.energy() * t);
  const double s2pi = std::sqrt(2.0 / pi);
  return free * (-I * s2pi * b.b1_m1 * cos_phi + b.b2_m0 / std::sqrt(2.0 * pi) - s2pi * b.b2_m2 * cos_2phi);
}

}  // namespace qvortex
