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

#include <cmath>
#include <map>

#include <doctest.h>

#include "doco/errors.hpp"
#include "doco/rng.hpp"

using namespace doco;

namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> random_in_ball(Rng& rng, int dim, double radius) {
  std::vector<double> x = rng.gaussian_vector(dim);
  const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  const double n = norm(x);
  for (double& v : x) v *= r / n;
  return x;
}

// Exact expectation of decode(encode(x)) by enumerating every (index,
// correction) outcome of every repetition with its probability; exercises
// the real bit path.
std::vector<double> exhaustive_expectation(const std::vector<double>& x, const EncoderSpec& spec) {
  std::vector<double> mean(x.size(), 0.0);
  std::vector<StochasticDraw> draws(static_cast<size_t>(spec.repetitions));
  const int outcomes_per_rep = spec.dim * 2;
  long long total = 1;
  for (int r = 0; r < spec.repetitions; ++r) total *= outcomes_per_rep;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    double prob = 1.0;
    for (int r = 0; r < spec.repetitions; ++r) {
      const int outcome = static_cast<int>(c % outcomes_per_rep);
      c /= outcomes_per_rep;
      draws[static_cast<size_t>(r)].index = outcome / 2;
      draws[static_cast<size_t>(r)].correction = outcome % 2 == 1;
      const double p1 = stochastic_correction_probability(x, draws[static_cast<size_t>(r)].index, spec);
      prob *= (1.0 / spec.dim) * (draws[static_cast<size_t>(r)].correction ? p1 : 1.0 - p1);
    }
    if (prob == 0.0) continue;
    const auto decoded = decode_stochastic(encode_stochastic_with_draws(x, spec, draws), spec);
    for (size_t i = 0; i < mean.size(); ++i) mean[i] += prob * decoded[i];
  }
  return mean;
}

// Exact E||decode(encode(x)) - x||^2 by the same enumeration.
double exhaustive_mse(const std::vector<double>& x, const EncoderSpec& spec) {
  double mse = 0.0;
  std::vector<StochasticDraw> draws(static_cast<size_t>(spec.repetitions));
  const int outcomes_per_rep = spec.dim * 2;
  long long total = 1;
  for (int r = 0; r < spec.repetitions; ++r) total *= outcomes_per_rep;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    double prob = 1.0;
    for (int r = 0; r < spec.repetitions; ++r) {
      const int outcome = static_cast<int>(c % outcomes_per_rep);
      c /= outcomes_per_rep;
      draws[static_cast<size_t>(r)].index = outcome / 2;
      draws[static_cast<size_t>(r)].correction = outcome % 2 == 1;
      const double p1 = stochastic_correction_probability(x, draws[static_cast<size_t>(r)].index, spec);
      prob *= (1.0 / spec.dim) * (draws[static_cast<size_t>(r)].correction ? p1 : 1.0 - p1);
    }
    if (prob == 0.0) continue;
    const auto decoded = decode_stochastic(encode_stochastic_with_draws(x, spec, draws), spec);
    double err = 0.0;
    for (size_t i = 0; i < x.size(); ++i) err += (decoded[i] - x[i]) * (decoded[i] - x[i]);
    mse += prob * err;
  }
  return mse;
}

}  // namespace

TEST_CASE("four-cell grid on [-1, 1]: midpoints and the payload for x = 0.3") {
  const EncoderSpec spec = EncoderSpec::make_deterministic(1, 1.0, 2);
  REQUIRE(spec.bits_per_coordinate == 2);
  const double midpoints[] = {-0.75, -0.25, 0.25, 0.75};
  for (int cell = 0; cell < 4; ++cell) {
    const std::vector<double> x{midpoints[cell]};
    const BitString payload = encode_deterministic(x, spec);
    CHECK(decode_deterministic(payload, spec)[0] == doctest::Approx(midpoints[cell]));
  }
  const BitString payload = encode_deterministic({0.3}, spec);
  REQUIRE(payload.size() == 2);
  CHECK(payload.bit(0) == true);  // cell index 2 = binary 10
  CHECK(payload.bit(1) == false);
  const double decoded = decode_deterministic(payload, spec)[0];
  CHECK(decoded == doctest::Approx(0.25));
  CHECK(std::fabs(decoded - 0.3) <= 0.25);
}

TEST_CASE("cell midpoints are fixed points of the grid quantizer") {
  Rng rng(5);
  const EncoderSpec spec = EncoderSpec::make_deterministic(3, 2.0, 12);  // q = 4
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_in_ball(rng, 3, 2.0);
    const auto once = decode_deterministic(encode_deterministic(x, spec), spec);
    const auto twice = decode_deterministic(encode_deterministic(once, spec), spec);
    CHECK(once == twice);
  }
}

TEST_CASE("grid error bound: d=2, q=3 at the origin and at random points") {
  const EncoderSpec spec = EncoderSpec::make_deterministic(2, 1.0, 6);
  REQUIRE(spec.bits_per_coordinate == 3);
  const auto xhat = decode_deterministic(encode_deterministic({0.0, 0.0}, spec), spec);
  double err = std::sqrt(xhat[0] * xhat[0] + xhat[1] * xhat[1]);
  CHECK(err <= std::sqrt(2.0) * std::ldexp(1.0, -3));

  Rng rng(17);
  for (int d : {2, 8, 32}) {
    const int q = 4;
    const EncoderSpec s = EncoderSpec::make_deterministic(d, 1.0, q * d);
    const double bound = std::sqrt(static_cast<double>(d)) * std::ldexp(1.0, -q);
    CHECK(s.error_bound == doctest::Approx(bound));
    for (int trial = 0; trial < 500; ++trial) {
      const auto x = random_in_ball(rng, d, 1.0);
      const auto y = decode_deterministic(encode_deterministic(x, s), s);
      double e = 0.0;
      for (int i = 0; i < d; ++i) e += (x[static_cast<size_t>(i)] - y[static_cast<size_t>(i)]) *
                                       (x[static_cast<size_t>(i)] - y[static_cast<size_t>(i)]);
      CHECK(std::sqrt(e) <= bound);
    }
  }
}

TEST_CASE("grid encoder rejects oversized vectors and starved budgets") {
  const EncoderSpec spec = EncoderSpec::make_deterministic(2, 1.0, 8);
  CHECK_THROWS_AS(encode_deterministic({1.2, 0.3}, spec), ConfigError);
  CHECK_THROWS_AS(EncoderSpec::make_deterministic(8, 1.0, 7), ConfigError);  // floor(k/d) = 0
}

TEST_CASE("payload lengths follow the documented formulas exactly") {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.index(6));
    const int k = d + static_cast<int>(rng.index(40));
    const EncoderSpec det = EncoderSpec::make_deterministic(d, 1.0, k);
    const auto x = random_in_ball(rng, d, 1.0);
    CHECK(static_cast<int>(encode_deterministic(x, det).size()) == det.payload_bits());
    CHECK(det.payload_bits() == d * det.bits_per_coordinate);

    const int ks = 8 + static_cast<int>(rng.index(40));
    if (ks >= static_cast<int>(std::ceil(std::log2(std::max(2, d)))) + 3) {
      const EncoderSpec st = EncoderSpec::make_stochastic(d, 1.0, ks);
      Rng enc(rng.next_u64());
      CHECK(static_cast<int>(encode_stochastic(x, st, enc).size()) == st.payload_bits());
      CHECK(st.payload_bits() == st.repetitions * (st.index_bits + st.precision + 2));
    }
  }
}

TEST_CASE("p-level quantization of a single coordinate: x = 0.3, p = 2") {
  EncoderSpec spec = EncoderSpec::make_stochastic(1, 1.0, 8, /*precision=*/2);
  spec.repetitions = 1;
  const std::vector<double> x{0.3};
  CHECK(stochastic_correction_probability(x, 0, spec) == doctest::Approx(0.2));
  // Deterministic part 0.25; E[x~] = 0.25 + 0.25 * 0.2 = 0.3.
  const auto mean = exhaustive_expectation(x, spec);
  CHECK(mean[0] == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("zero vector encodes to zero with probability one") {
  const EncoderSpec spec = EncoderSpec::make_stochastic(4, 1.0, 16);
  const std::vector<double> x(4, 0.0);
  CHECK(stochastic_correction_probability(x, 0, spec) == 0.0);
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto decoded = decode_stochastic(encode_stochastic(x, spec, rng), spec);
    for (double v : decoded) CHECK(v == 0.0);
  }
}

TEST_CASE("unit vector at the ball boundary decodes unbiasedly, d=4 p=2 m=1") {
  EncoderSpec spec = EncoderSpec::make_stochastic(4, 1.0, 16, /*precision=*/2);
  spec.repetitions = 1;
  std::vector<double> x{1.0, 0.0, 0.0, 0.0};
  const auto mean = exhaustive_expectation(x, spec);  // 4 x 2 outcomes
  for (size_t i = 0; i < 4; ++i) CHECK(mean[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("exhaustive unbiasedness across d <= 8, m <= 2, p <= 3") {
  Rng rng(29);
  for (int d : {1, 2, 3, 5, 8}) {
    for (int p = 1; p <= 3; ++p) {
      for (int m = 1; m <= 2; ++m) {
        EncoderSpec spec = EncoderSpec::make_stochastic(d, 1.0, 64, p);
        spec.repetitions = m;
        for (int trial = 0; trial < 3; ++trial) {
          const auto x = random_in_ball(rng, d, 1.0);
          const auto mean = exhaustive_expectation(x, spec);
          for (int i = 0; i < d; ++i) {
            CHECK(mean[static_cast<size_t>(i)] ==
                  doctest::Approx(x[static_cast<size_t>(i)]).epsilon(1e-11));
          }
        }
      }
    }
  }
}

TEST_CASE("single-repetition second moment: E||x - xhat||^2 <= 2d||x||^2 + d^2 2^{-2p} G^2") {
  Rng rng(31);
  for (int d : {1, 2, 4}) {
    for (int p = 1; p <= 3; ++p) {
      EncoderSpec spec = EncoderSpec::make_stochastic(d, 1.0, 64, p);
      spec.repetitions = 1;
      for (int trial = 0; trial < 4; ++trial) {
        const auto x = random_in_ball(rng, d, 1.0);
        const double mse = exhaustive_mse(x, spec);
        const double x2 = norm(x) * norm(x);
        CHECK(mse <= 2.0 * d * x2 + d * d * std::ldexp(1.0, -2 * p) + 1e-12);
      }
    }
  }
}

TEST_CASE("averaging identity: m-repetition variance is 1/m of the single-repetition variance") {
  Rng rng(37);
  for (int d : {2, 4}) {
    EncoderSpec one = EncoderSpec::make_stochastic(d, 1.0, 64, 2);
    one.repetitions = 1;
    EncoderSpec two = one;
    two.repetitions = 2;
    for (int trial = 0; trial < 4; ++trial) {
      const auto x = random_in_ball(rng, d, 1.0);
      CHECK(exhaustive_mse(x, two) == doctest::Approx(exhaustive_mse(x, one) / 2.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("variance bound constants from the repetition count") {
  EncoderSpec spec = EncoderSpec::make_stochastic(4, 1.0, 64);
  REQUIRE(spec.precision == 2);  // ceil(log2 4)
  spec.repetitions = 2;
  const VarianceBound vb2 = variance_bound(spec);
  CHECK(vb2.alpha == doctest::Approx(4.0));
  CHECK(vb2.beta == doctest::Approx(0.5));
  spec.repetitions = 1;
  const VarianceBound vb1 = variance_bound(spec);
  CHECK(vb1.alpha == doctest::Approx(8.0));
  CHECK(vb1.beta == doctest::Approx(1.0));
}

TEST_CASE("decoded norm stays within 2dG") {
  Rng rng(41);
  const EncoderSpec spec = EncoderSpec::make_stochastic(8, 1.0, 48);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = random_in_ball(rng, 8, 1.0);
    Rng enc(rng.next_u64());
    const auto decoded = decode_stochastic(encode_stochastic(x, spec, enc), spec);
    CHECK(norm(decoded) <= spec.decoded_norm_bound * (1.0 + 1e-12));
  }
}

TEST_CASE("resolution floor: birthday search finds same-payload pairs near 2G 2^{-k/d}") {
  // Any deterministic k-bit encoder has resolution at least 2G 2^{-k/d}.
  const int d = 2, k = 4;
  const EncoderSpec spec = EncoderSpec::make_deterministic(d, 1.0, k);
  const double floor_dist = 2.0 * std::exp2(-static_cast<double>(k) / d);
  Rng rng(43);
  std::map<std::string, std::vector<std::vector<double>>> by_payload;
  double best = 0.0;
  for (int trial = 0; trial < 4000; ++trial) {
    const auto x = random_in_ball(rng, d, 1.0);
    auto& bucket = by_payload[encode_deterministic(x, spec).to_hex()];
    for (const auto& other : bucket) {
      double e = 0.0;
      for (int i = 0; i < d; ++i) e += (x[static_cast<size_t>(i)] - other[static_cast<size_t>(i)]) *
                                       (x[static_cast<size_t>(i)] - other[static_cast<size_t>(i)]);
      best = std::max(best, std::sqrt(e));
    }
    bucket.push_back(x);
  }
  CHECK(best >= 0.8 * floor_dist);

  // The analytic pair is exact: same payload, distance ~ the cell width.
  const CollidingPair pair = find_grid_collision(spec);
  CHECK(encode_deterministic(pair.g, spec) == encode_deterministic(pair.h, spec));
  CHECK(pair.distance >= 0.99 * floor_dist);
}

TEST_CASE("collision search reports failure when cells drop below double resolution") {
  const EncoderSpec spec = EncoderSpec::make_deterministic(1, 1.0, 60);
  REQUIRE(spec.bits_per_coordinate >= 52);
  CHECK_THROWS_AS(find_grid_collision(spec), ConfigError);
}

TEST_CASE("Monte-Carlo: empirical MSE within the Theorem-style bound plus 3 sigma") {
  const int d = 4;
  EncoderSpec spec = EncoderSpec::make_stochastic(d, 1.0, 2 * (3 * 2 + 2));  // m = 2
  REQUIRE(spec.repetitions == 2);
  const VarianceBound vb = variance_bound(spec);
  Rng rng(47);
  const auto x = random_in_ball(rng, d, 1.0);
  const double bound = vb.alpha * norm(x) * norm(x) + vb.beta;
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    Rng enc(derive_seed(123, static_cast<uint64_t>(i)));
    const auto decoded = decode_stochastic(encode_stochastic(x, spec, enc), spec);
    double e = 0.0;
    for (int j = 0; j < d; ++j) e += (decoded[static_cast<size_t>(j)] - x[static_cast<size_t>(j)]) *
                                     (decoded[static_cast<size_t>(j)] - x[static_cast<size_t>(j)]);
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  const double sigma = std::sqrt(var / n);
  CHECK(mean <= bound + 3.0 * sigma);
}

TEST_CASE("Monte-Carlo unbiasedness at d = 64 within 3 sigma") {
  const int d = 64;
  const EncoderSpec spec = EncoderSpec::make_stochastic(d, 1.0, 64);
  Rng rng(53);
  const auto x = random_in_ball(rng, d, 1.0);
  const int n = 200000;
  // Project onto a fixed direction; the scalar mean must match <x, dir>.
  std::vector<double> dir = rng.gaussian_vector(d);
  const double dn = norm(dir);
  for (double& v : dir) v /= dn;
  double want = 0.0;
  for (int i = 0; i < d; ++i) want += x[static_cast<size_t>(i)] * dir[static_cast<size_t>(i)];
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    Rng enc(derive_seed(321, static_cast<uint64_t>(i)));
    const auto decoded = decode_stochastic(encode_stochastic(x, spec, enc), spec);
    double proj = 0.0;
    for (int j = 0; j < d; ++j) proj += decoded[static_cast<size_t>(j)] * dir[static_cast<size_t>(j)];
    sum += proj;
    sum_sq += proj * proj;
  }
  const double mean = sum / n;
  const double sigma = std::sqrt(std::max(0.0, sum_sq / n - mean * mean) / n);
  CHECK(std::fabs(mean - want) <= 3.0 * sigma);
}
