// Copyright 2026 The qnnbench Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// Finite-shot measurement plumbing: seeded substreams, the binomial shot
/// estimator, and the clip used to stabilize measured probabilities.

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace qnn {

/// Clip bound applied to measured probability estimates.
inline constexpr double kClipEpsilon = 1e-6;

inline double clip_probability(double p) {
    if (p < kClipEpsilon) return kClipEpsilon;
    if (p > 1.0 - kClipEpsilon) return 1.0 - kClipEpsilon;
    return p;
}

/// splitmix64 finalizer; derives independent substream seeds from
/// (key, salt) pairs so parallel and serial schedules draw identically.
inline std::uint64_t mix_seed(std::uint64_t key, std::uint64_t salt) {
    std::uint64_t z = key + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// One owned random stream plus a counter of simulated measurement shots.
/// Every binomial draw of S shots adds S to `shots_drawn`, which is what
/// the benchmark's budget accounting asserts against.
struct SampleStream {
    std::mt19937_64 engine;
    std::uint64_t shots_drawn = 0;

    explicit SampleStream(std::uint64_t seed) : engine(seed) {}
};

/// Unclipped finite-shot estimate k/S with k ~ Binomial(S, p).
inline double sample_probability(double p, std::int64_t shots, SampleStream& stream) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
    std::binomial_distribution<std::int64_t> binomial(shots, p);
    const std::int64_t k = binomial(stream.engine);
    stream.shots_drawn += static_cast<std::uint64_t>(shots);
    return static_cast<double>(k) / static_cast<double>(shots);
}

/// Shot budget per circuit evaluation: either a finite count or EXACT
/// (noise-free expectation values).
class Shots {
  public:
    static Shots exact() { return Shots(0); }

    static Shots finite(std::int64_t count) {
        if (count < 1) throw std::invalid_argument("shots must be >= 1");
        return Shots(count);
    }

    bool is_exact() const { return count_ == 0; }

    std::int64_t count() const {
        if (is_exact()) throw std::logic_error("count() called on exact shot budget");
        return count_;
    }

    friend bool operator==(const Shots&, const Shots&) = default;

  private:
    explicit Shots(std::int64_t count) : count_(count) {}

    std::int64_t count_;
};

}  // namespace qnn
