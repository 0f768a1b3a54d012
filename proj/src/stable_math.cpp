// Copyright 2026 the doco-sim authors. All rights reserved.
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

#include "doco/stable_math.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "doco/errors.hpp"

namespace doco {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833411;
// exp(x) overflows above ~709.78; keep headroom for the final multiply.
constexpr double kMaxExponent = 700.0;

// Continued fraction for erfcx at large argument (modified Lentz):
//   sqrt(pi) * erfcx(x) = 1 / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
double erfcx_continued_fraction(double x) {
  const double tiny = 1e-300;
  double f = x, c = x, d = 0.0;
  for (int n = 1; n <= 64; ++n) {
    const double an = 0.5 * n;
    d = x + an * d;
    if (d == 0.0) d = tiny;
    c = x + an / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return 1.0 / (kSqrtPi * f);
}

struct Integrals {
  double J;  // int_0^a       exp(-L*eta - V*eta^2) deta
  double I;  // int_0^a eta * exp(-L*eta - V*eta^2) deta
};

// Decaying case. The erfcx form keeps every factor in [0, 1]-ish range:
//   J = sqrt(pi)/(2 sqrt(V)) * (erfcx(q1) - exp(-E) * erfcx(q2))
//   I = (1 - exp(-E))/(2V) - L/(2V) * J
// with q1 = L/(2 sqrt(V)), q2 = q1 + a sqrt(V), E = L*a + V*a^2.
Integrals evaluate_decaying(double L, double V, double a) {
  assert(L >= 0.0);
  const double sqrtV = std::sqrt(V);
  const double q1 = L / (2.0 * sqrtV);
  const double q2 = q1 + a * sqrtV;
  const double E = L * a + V * a * a;
  const double expm = std::exp(-E);
  const double J = kSqrtPi / (2.0 * sqrtV) * (erfcx_nonneg(q1) - expm * erfcx_nonneg(q2));
  const double I = (1.0 - expm) / (2.0 * V) - L / (2.0 * V) * J;
  return {J, I};
}

}  // namespace

double erfcx_nonneg(double x) {
  assert(x >= 0.0);
  // Below the crossover the direct product is exact enough (exp(x^2) stays
  // comfortably inside the double range up to x ~ 26.6).
  if (x < 20.0) return std::exp(x * x) * std::erfc(x);
  return erfcx_continued_fraction(x);
}

double ln_plus(double x) { return x <= 2.718281828459045235360287 ? 1.0 : std::log(x); }

namespace {

// For L < 0 the integrand grows, so the dominant exponent m is factored out
// and re-applied once at the end. Two sub-cases:
//  - peak mu/(2V) inside [0, a]: split erf form around the peak;
//  - peak beyond a: substitute u = a - eta, which maps the problem back to
//    the decaying case with slope beta = mu - 2*V*a >= 0.
Integrals evaluate(double L, double V, double a) {
  if (!(V > 0.0) || !(a > 0.0) || !std::isfinite(L) || !std::isfinite(V) || !std::isfinite(a)) {
    throw NumericError("gaussian integral: invalid state (L, V, a)");
  }
  if (L >= 0.0) return evaluate_decaying(L, V, a);

  const double mu = -L;
  const double c = mu / (2.0 * V);
  const double sqrtV = std::sqrt(V);
  double m;       // dominant exponent
  double Jb, Ib;  // values with exp(m) factored out
  if (c <= a) {
    m = mu * mu / (4.0 * V);
    Jb = kSqrtPi / (2.0 * sqrtV) * (std::erf(sqrtV * (a - c)) + std::erf(sqrtV * c));
    // exp(mu*a - V*a^2 - m) = exp(-V (a-c)^2).
    const double tail = std::exp(-V * (a - c) * (a - c));
    Ib = (std::exp(-m) - tail) / (2.0 * V) + mu / (2.0 * V) * Jb;
  } else {
    m = mu * a - V * a * a;
    const double beta = mu - 2.0 * V * a;
    const Integrals r = evaluate_decaying(beta, V, a);
    Jb = r.J;
    Ib = a * r.J - r.I;  // eta = a - u, both factors non-negative
  }
  if (m > kMaxExponent) {
    throw NumericError("gaussian integral: exponent overflow (|L| too large for this horizon)");
  }
  const double scale = std::exp(m);
  return {scale * Jb, scale * Ib};
}

}  // namespace

double gaussian_weighted_integral(double L, double V, double a) { return evaluate(L, V, a).J; }

double gaussian_weighted_eta_integral(double L, double V, double a) { return evaluate(L, V, a).I; }

}  // namespace doco
