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

#ifndef DOCO_ENCODING_HPP
#define DOCO_ENCODING_HPP

#include <string>
#include <vector>

#include "doco/bitstring.hpp"
#include "doco/rng.hpp"

namespace doco {

enum class EncoderKind { kDeterministicGrid, kSparsifiedQuantization };

// A fully-specified gradient encoder. Construct through make_deterministic /
// make_stochastic so the derived fields (q, p, m, error and norm bounds)
// stay consistent with (dim, grad_bound, bits_per_gradient).
struct EncoderSpec {
  EncoderKind kind = EncoderKind::kDeterministicGrid;
  int dim = 1;                // d
  double grad_bound = 1.0;    // G, bound on the true gradient norm
  int bits_per_gradient = 0;  // k

  // Deterministic grid: q = min(floor(k/d), 62) bits per coordinate (the
  // saturation point is past double resolution); payload is exactly d*q
  // bits of big-endian cell indices in coordinate order.
  int bits_per_coordinate = 0;  // q

  // Sparsified quantization: per repetition ceil(log2 d) index bits, one
  // sign bit, p magnitude bits, one Bernoulli bit.
  int precision = 0;    // p
  int repetitions = 0;  // m = floor(k / (ceil(log2 d) + p + 2))
  int index_bits = 0;   // ceil(log2 d)

  double decoded_norm_bound = 0.0;  // Ghat: G + error for grid, 2dG stochastic
  double error_bound = 0.0;         // eps: sqrt(d) 2^{-q} G for grid, 0 stochastic

  int payload_bits() const;

  // Throws ConfigError (BudgetTooSmall) if floor(k/d) = 0.
  static EncoderSpec make_deterministic(int dim, double grad_bound, int bits_per_gradient);
  // Defaults to p = ceil(log2 d); throws ConfigError if m would be 0.
  static EncoderSpec make_stochastic(int dim, double grad_bound, int bits_per_gradient,
                                     int precision = -1);
};

// Deterministic per-coordinate grid quantizer. Each coordinate of a vector
// with ||x|| <= G is mapped to the midpoint of one of 2^q uniform cells of
// [-G, G]; per-coordinate error <= 2^{-q} G. Throws ConfigError
// (NormExceeded) if ||x|| > G.
BitString encode_deterministic(const std::vector<double>& x, const EncoderSpec& spec);
std::vector<double> decode_deterministic(const BitString& bits, const EncoderSpec& spec);

// Stochastic sparsified quantization: m independent repetitions, each
// sampling one coordinate uniformly, quantizing |x_i| to p binary digits
// with an unbiasing Bernoulli bit, and importance-weighting by d. The
// decoder averages the repetitions. E[decode(encode(x))] = x and
// ||decode(...)|| <= 2dG.
BitString encode_stochastic(const std::vector<double>& x, const EncoderSpec& spec, Rng& rng);
std::vector<double> decode_stochastic(const BitString& bits, const EncoderSpec& spec);

// Enumeration seam: one (sampled index, Bernoulli outcome) pair per
// repetition. The seeded encoder draws these from its generator; exhaustive
// tests enumerate them with their exact probabilities instead.
struct StochasticDraw {
  int index = 0;
  bool correction = false;
};
BitString encode_stochastic_with_draws(const std::vector<double>& x, const EncoderSpec& spec,
                                       const std::vector<StochasticDraw>& draws);
// Pr(correction bit = 1) for coordinate i of x.
double stochastic_correction_probability(const std::vector<double>& x, int i,
                                         const EncoderSpec& spec);

// Second-moment guarantee E||xhat - x||^2 <= alpha ||x||^2 + beta for the
// stochastic encoder at p = ceil(log2 d): alpha = 2d/m, beta = G^2/m.
struct VarianceBound {
  double alpha;
  double beta;
};
VarianceBound variance_bound(const EncoderSpec& spec);

// Colliding pair for a deterministic encoder: two vectors with identical
// payloads at (near) maximal distance. For the grid encoder the pair sits at
// the ends of one cell in the first coordinate. Throws ConfigError
// (NoCollisionFound) when the cell width falls below double resolution
// (q >= 52), where any constructed "pair" would be numerically identical.
struct CollidingPair {
  std::vector<double> g;
  std::vector<double> h;
  double distance;
};
CollidingPair find_grid_collision(const EncoderSpec& spec);

}  // namespace doco

#endif  // DOCO_ENCODING_HPP
