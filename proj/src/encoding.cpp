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

#include "doco/encoding.hpp"

#include <algorithm>
#include <cmath>

#include "doco/errors.hpp"

namespace doco {

namespace {

int ceil_log2(int d) {
  int bits = 0;
  while ((1 << bits) < d) ++bits;
  return bits;
}

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void check_input(const std::vector<double>& x, const EncoderSpec& spec) {
  if (static_cast<int>(x.size()) != spec.dim) throw ConfigError("encoder: dimension mismatch");
  // Tiny tolerance so that vectors normalized to exactly G survive rounding.
  if (spec.kind == EncoderKind::kDeterministicGrid) {
    // The grid quantizes coordinates independently, so its natural domain is
    // the box [-G, G]^d; that also keeps re-encoding of decoded midpoints
    // (norm up to G + eps) legal.
    for (double xi : x) {
      if (std::fabs(xi) > spec.grad_bound * (1.0 + 1e-12)) {
        throw ConfigError("encoder: coordinate exceeds the gradient bound G");
      }
    }
    return;
  }
  if (norm(x) > spec.grad_bound * (1.0 + 1e-12)) {
    throw ConfigError("encoder: vector norm exceeds the gradient bound G");
  }
}

}  // namespace

int EncoderSpec::payload_bits() const {
  if (kind == EncoderKind::kDeterministicGrid) return dim * bits_per_coordinate;
  return repetitions * (index_bits + precision + 2);
}

EncoderSpec EncoderSpec::make_deterministic(int dim, double grad_bound, int bits_per_gradient) {
  if (dim < 1) throw ConfigError("encoder: dim must be >= 1");
  if (grad_bound <= 0.0) throw ConfigError("encoder: grad_bound must be positive");
  EncoderSpec s;
  s.kind = EncoderKind::kDeterministicGrid;
  s.dim = dim;
  s.grad_bound = grad_bound;
  s.bits_per_gradient = bits_per_gradient;
  s.bits_per_coordinate = bits_per_gradient / dim;
  if (s.bits_per_coordinate < 1) {
    throw ConfigError("encoder: budget too small, deterministic grid needs k >= d");
  }
  // Indices are packed into uint64 words per coordinate.
  s.bits_per_coordinate = std::min(s.bits_per_coordinate, 62);
  s.error_bound = std::sqrt(static_cast<double>(dim)) * std::ldexp(grad_bound, -s.bits_per_coordinate);
  s.decoded_norm_bound = grad_bound + s.error_bound;
  return s;
}

EncoderSpec EncoderSpec::make_stochastic(int dim, double grad_bound, int bits_per_gradient,
                                         int precision) {
  if (dim < 1) throw ConfigError("encoder: dim must be >= 1");
  if (grad_bound <= 0.0) throw ConfigError("encoder: grad_bound must be positive");
  EncoderSpec s;
  s.kind = EncoderKind::kSparsifiedQuantization;
  s.dim = dim;
  s.grad_bound = grad_bound;
  s.bits_per_gradient = bits_per_gradient;
  s.index_bits = ceil_log2(dim);
  s.precision = precision < 0 ? std::max(1, ceil_log2(dim)) : precision;
  if (s.precision < 1 || s.precision > 52) throw ConfigError("encoder: precision out of range");
  const int per_rep = s.index_bits + s.precision + 2;
  s.repetitions = bits_per_gradient / per_rep;
  if (s.repetitions < 1) {
    throw ConfigError("encoder: budget too small, need k >= ceil(log2 d) + p + 2");
  }
  s.error_bound = 0.0;  // handled through unbiasedness, not a worst-case radius
  s.decoded_norm_bound = 2.0 * dim * grad_bound;
  return s;
}

BitString encode_deterministic(const std::vector<double>& x, const EncoderSpec& spec) {
  check_input(x, spec);
  const int q = spec.bits_per_coordinate;
  const double G = spec.grad_bound;
  const uint64_t cells = 1ULL << q;
  BitString out;
  for (double xi : x) {
    // Cell index of xi in [-G, G]; the right edge belongs to the last cell.
    double scaled = (xi / G + 1.0) * 0.5 * static_cast<double>(cells);
    auto cell = static_cast<int64_t>(std::floor(scaled));
    cell = std::clamp<int64_t>(cell, 0, static_cast<int64_t>(cells) - 1);
    out.append_bits(static_cast<uint64_t>(cell), q);
  }
  return out;
}

std::vector<double> decode_deterministic(const BitString& bits, const EncoderSpec& spec) {
  const int q = spec.bits_per_coordinate;
  const double G = spec.grad_bound;
  const double width = std::ldexp(2.0 * G, -q);
  std::vector<double> x(static_cast<size_t>(spec.dim));
  for (int i = 0; i < spec.dim; ++i) {
    const auto cell = bits.read_bits(static_cast<size_t>(i) * q, q);
    x[static_cast<size_t>(i)] = -G + (static_cast<double>(cell) + 0.5) * width;
  }
  return x;
}

namespace {

int64_t quantization_level(double mag, const EncoderSpec& spec) {
  const double step = std::ldexp(spec.grad_bound, -spec.precision);
  auto level = static_cast<int64_t>(std::floor(mag / step));
  // |xi| = G lands on level 2^p, which does not fit in p bits; clamping
  // pushes the remainder into the Bernoulli bit (probability 1).
  return std::clamp<int64_t>(level, 0, (1LL << spec.precision) - 1);
}

}  // namespace

double stochastic_correction_probability(const std::vector<double>& x, int i,
                                         const EncoderSpec& spec) {
  const double step = std::ldexp(spec.grad_bound, -spec.precision);
  const double mag = std::fabs(x[static_cast<size_t>(i)]);
  const auto level = quantization_level(mag, spec);
  return std::clamp((mag - static_cast<double>(level) * step) / step, 0.0, 1.0);
}

BitString encode_stochastic_with_draws(const std::vector<double>& x, const EncoderSpec& spec,
                                       const std::vector<StochasticDraw>& draws) {
  check_input(x, spec);
  if (static_cast<int>(draws.size()) != spec.repetitions) {
    throw ConfigError("encoder: one draw per repetition required");
  }
  BitString out;
  for (const StochasticDraw& draw : draws) {
    const double xi = x[static_cast<size_t>(draw.index)];
    out.append_bits(static_cast<uint64_t>(draw.index), spec.index_bits);
    out.append_bit(xi < 0.0);
    out.append_bits(static_cast<uint64_t>(quantization_level(std::fabs(xi), spec)), spec.precision);
    out.append_bit(draw.correction);
  }
  return out;
}

BitString encode_stochastic(const std::vector<double>& x, const EncoderSpec& spec, Rng& rng) {
  check_input(x, spec);
  std::vector<StochasticDraw> draws(static_cast<size_t>(spec.repetitions));
  for (auto& draw : draws) {
    draw.index = static_cast<int>(rng.index(static_cast<uint64_t>(spec.dim)));
    draw.correction = rng.bernoulli(stochastic_correction_probability(x, draw.index, spec));
  }
  return encode_stochastic_with_draws(x, spec, draws);
}

std::vector<double> decode_stochastic(const BitString& bits, const EncoderSpec& spec) {
  const double G = spec.grad_bound;
  const int p = spec.precision;
  const double step = std::ldexp(G, -p);
  const int per_rep = spec.index_bits + p + 2;
  std::vector<double> x(static_cast<size_t>(spec.dim), 0.0);
  for (int rep = 0; rep < spec.repetitions; ++rep) {
    size_t pos = static_cast<size_t>(rep) * per_rep;
    const auto i = static_cast<size_t>(bits.read_bits(pos, spec.index_bits));
    pos += static_cast<size_t>(spec.index_bits);
    const bool negative = bits.bit(pos++);
    const auto level = static_cast<double>(bits.read_bits(pos, p));
    pos += static_cast<size_t>(p);
    const bool correction = bits.bit(pos);
    double value = (level + (correction ? 1.0 : 0.0)) * step;
    if (negative) value = -value;
    x[i] += static_cast<double>(spec.dim) * value;
  }
  for (double& v : x) v /= static_cast<double>(spec.repetitions);
  return x;
}

VarianceBound variance_bound(const EncoderSpec& spec) {
  if (spec.kind != EncoderKind::kSparsifiedQuantization) {
    throw ConfigError("variance_bound: requires a stochastic encoder spec");
  }
  if (spec.precision != std::max(1, ceil_log2(spec.dim))) {
    throw ConfigError("variance_bound: stated only for p = ceil(log2 d)");
  }
  const double m = spec.repetitions;
  return {2.0 * spec.dim / m, spec.grad_bound * spec.grad_bound / m};
}

CollidingPair find_grid_collision(const EncoderSpec& spec) {
  if (spec.kind != EncoderKind::kDeterministicGrid) {
    throw ConfigError("find_grid_collision: requires a deterministic grid spec");
  }
  const int q = spec.bits_per_coordinate;
  const double G = spec.grad_bound;
  if (q >= 52) {
    throw ConfigError("encoder collision: no collision found, resolution below double precision");
  }
  const double width = std::ldexp(2.0 * G, -q);
  // Both endpoints of the cell [0, width) in the first coordinate; the upper
  // one backed off by one representable step so the payloads match exactly.
  CollidingPair pair;
  pair.g.assign(static_cast<size_t>(spec.dim), 0.0);
  pair.h.assign(static_cast<size_t>(spec.dim), 0.0);
  pair.h[0] = std::nextafter(width, 0.0);
  while (encode_deterministic(pair.h, spec) != encode_deterministic(pair.g, spec)) {
    pair.h[0] = std::nextafter(pair.h[0], 0.0);
  }
  pair.distance = pair.h[0];
  if (pair.distance <= 0.0) {
    throw ConfigError("encoder collision: no collision found, resolution below double precision");
  }
  return pair;
}

}  // namespace doco
