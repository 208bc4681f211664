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


#include <gtest/gtest.h>

#include <atomic>
#include <set>

#include "qtradeoff/parallel.h"

namespace qtradeoff {
namespace {

TEST(DeriveSeed, DistinctStreams) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; s++) {
        seen.insert(derive_seed(42, s));
    }
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
    EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
    for (const auto &h : hits) {
        EXPECT_EQ(h.load(), 1);
    }
    parallel_for(0, [](std::size_t) { FAIL(); }, 4);
}

TEST(ParallelFor, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(100, [](std::size_t i) {
        if (i == 37) {
            throw std::runtime_error("boom");
        }
    }, 3),
                 std::runtime_error);
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
    auto sample = [](Rng &rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
    auto one = monte_carlo(100000, 91, sample, 4096, 1);
    auto many = monte_carlo(100000, 91, sample, 4096, 5);
    EXPECT_EQ(one.mean, many.mean);
    EXPECT_EQ(one.std_error, many.std_error);
    EXPECT_EQ(one.samples, 100000u);
    EXPECT_LT(std::abs(one.mean - 0.5), 4 * one.std_error);
    EXPECT_NEAR(one.std_error, std::sqrt(1.0 / 12 / 100000), 1e-5);
}

TEST(MonteCarlo, ConstantHasZeroError) {
    auto est = monte_carlo(5000, 92, [](Rng &) { return 2.5; });
    EXPECT_EQ(est.mean, 2.5);
    EXPECT_EQ(est.std_error, 0);
}

}  // namespace
}  // namespace qtradeoff
