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

#ifndef DOCO_STABLE_MATH_HPP
#define DOCO_STABLE_MATH_HPP

namespace doco {

// Scaled complementary error function exp(x^2) * erfc(x) for x >= 0.
// The closed-form predictor needs it for arguments far beyond the range
// where exp(x^2) is representable.
double erfcx_nonneg(double x);

// ln_+(x) = ln(max(e, x)).
double ln_plus(double x);

// Exponential-family integrals over the truncated range [0, a], both with
// V >= 1, a > 0:
//
//   gaussian_weighted_integral(L, V, a)          = int_0^a exp(-L*eta - V*eta^2) deta
//   gaussian_weighted_eta_integral(L, V, a)      = int_0^a eta * exp(-L*eta - V*eta^2) deta
//
// Evaluated through erf/erfcx in whichever algebraic form avoids overflow
// and catastrophic cancellation for the sign of L. Throws NumericError if
// the result exceeds the double range.
double gaussian_weighted_integral(double L, double V, double a);
double gaussian_weighted_eta_integral(double L, double V, double a);

}  // namespace doco

#endif  // DOCO_STABLE_MATH_HPP
