/*
 * Copyright 2026 The webspam authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Deterministic sampling on top of mt19937_64. The std:: distributions are
// implementation-defined, so seeds would not reproduce across standard
// libraries; these helpers pin the exact bit streams.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace webspam::rng {

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + uniform01(gen) * (hi - lo);
}

/// Uniform integer in [0, bound) via mask-and-reject; bound must be > 0.
inline std::uint64_t below(std::mt19937_64& gen, std::uint64_t bound) {
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        std::uint64_t v = gen() & mask;
        if (v < bound) return v;
    }
}

/// In-place Fisher-Yates shuffle with the pinned integer sampler.
template <typename T>
void shuffle(std::mt19937_64& gen, std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(below(gen, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace webspam::rng
