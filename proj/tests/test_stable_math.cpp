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

#include <cmath>

#include <doctest.h>

#include "doco/reference.hpp"
#include "doco/rng.hpp"

using namespace doco;

namespace {
double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}
}  // namespace

TEST_CASE("erfcx matches high-precision references") {
  // Reference values computed with 40-digit arithmetic.
  const struct {
    double x, want;
  } table[] = {
      {0.0, 1.0},
      {0.25, 0.7703465477309967439167391723367911261876},
      {1.0, 0.4275835761558070044107503444905151808202},
      {2.5, 0.2108063640611435806471120484067023193383},
      {5.0, 0.1107046377330686263702120864917530505889},
      {10.0, 0.05614099274382258585751738722046831156516},
      {20.0, 0.02817434874105131931864915453447075835252},
      {26.0, 0.0216835848505629066161729916872932026958},
      {50.0, 0.01128153626532377250018381085221429875566},
      {120.0, 0.004701416630599357925892238857499386025461},
  };
  for (const auto& row : table) {
    CHECK(rel_err(erfcx_nonneg(row.x), row.want) < 1e-13);
  }
}

TEST_CASE("truncated Gaussian integrals match high-precision references") {
  // int_0^a exp(-L eta - V eta^2) and the eta-weighted variant; references
  // from 40-digit quadrature.
  const struct {
    double L, V, a, I, J;
  } table[] = {
      {0, 1, 0.05, 0.001248438801269938119991464508258855927023,
       0.04995836456474118417334394922316592846359},
      {3, 2, 0.04, 0.0007376282696935300595107778639495823813495,
       0.03765421980294096266432704787356590493764},
      {-3, 2, 0.04, 0.0008655667841329486867059909736869655223966,
       0.04245229847400679075390077739001882057842},
      {200, 150, 0.01, 0.00001476983388133767191024671314923054504777,
       0.004311243232348246616284351973312767873571},
      {-200, 150, 0.01, 0.000207789115117142576090458327236350259039,
       0.03170692059994277790010840309291736407744},
      {-4000, 900, 0.002, 0.001300443613298732761485760445690002274347,
       0.742896657560247478519523034427820514941},
      {5000, 2600, 0.001, 0.00000003836455773107365899118770823470097249672,
       0.0001986160106416749171586438217689032083172},
  };
  for (const auto& row : table) {
    CHECK(rel_err(gaussian_weighted_eta_integral(row.L, row.V, row.a), row.I) < 1e-11);
    CHECK(rel_err(gaussian_weighted_integral(row.L, row.V, row.a), row.J) < 1e-11);
  }
}

TEST_CASE("closed form agrees with adaptive quadrature across regimes") {
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    // States reachable from bounded-gradient histories: |L| <= sqrt(T(V-1)).
    const double a = rng.uniform(1e-4, 0.1);
    const double T = 1e4;
    const double V = 1.0 + rng.uniform(0.0, 1.0) * T * rng.uniform(0.0, 4.0);
    const double lmax = std::sqrt(T * (V - 1.0));
    double L = rng.uniform(-1.0, 1.0) * lmax;
    // Keep the dominant exponent within double range (the learner aborts
    // beyond it by contract).
    if (L < 0.0) {
      const double c = -L / (2.0 * V);
      const double m = c <= a ? L * L / (4.0 * V) : -L * a - V * a * a;
      if (m > 600.0) L = -std::min(std::sqrt(600.0 * 4.0 * V), (600.0 + V * a * a) / a);
    }
    const double closed = gaussian_weighted_eta_integral(L, V, a);
    const double quad = reference::integrate_eta_exponential(L, V, a, 1e-11);
    CHECK(rel_err(closed, quad) < 1e-6);
    const double closed_j = gaussian_weighted_integral(L, V, a);
    const double quad_j = reference::integrate_exponential(L, V, a, 1e-11);
    CHECK(rel_err(closed_j, quad_j) < 1e-6);
  }
}

TEST_CASE("ln_plus") {
  CHECK(ln_plus(0.0) == 1.0);
  CHECK(ln_plus(1.0) == 1.0);
  CHECK(ln_plus(std::exp(1.0)) == doctest::Approx(1.0));
  CHECK(ln_plus(100.0) == doctest::Approx(std::log(100.0)));
}
