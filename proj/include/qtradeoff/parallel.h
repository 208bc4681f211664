// Copyright 2026 The qtradeoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTRADEOFF_PARALLEL_H
#define QTRADEOFF_PARALLEL_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace qtradeoff {

using Rng = std::mt19937_64;

/// Mixes (master, stream) into an independent 64-bit seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
    return Rng(derive_seed(master, stream));
}

/// Worker count used when a call passes workers = 0. Defaults to the hardware concurrency.
unsigned default_workers();
void set_default_workers(unsigned workers);

/// Runs body(i) for i in [0, count). Work is handed out dynamically, so body
/// must not depend on which thread runs it.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body, unsigned workers = 0);

struct MonteCarloEstimate {
    double mean = 0;
    double std_error = 0;
    std::size_t samples = 0;
};

/// Mean and standard error of sample(rng) over `samples` draws.
///
/// Draws are split into chunks of chunk_size; chunk k owns
/// make_rng(seed, k) and chunk statistics are merged in chunk order, so the
/// result depends on (seed, chunk_size) only, never on the worker count.
MonteCarloEstimate monte_carlo(std::size_t samples, std::uint64_t seed, const std::function<double(Rng &)> &sample,
                               std::size_t chunk_size = 8192, unsigned workers = 0);

}  // namespace qtradeoff

#endif
