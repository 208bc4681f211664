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

#ifndef QTRADEOFF_VERIFY_H
#define QTRADEOFF_VERIFY_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qtradeoff/measures.h"

namespace qtradeoff {

// Property suites behind `qtradeoff verify`. Every detail entry carries a
// slack (worst_margin) and passes iff worst_margin >= -tolerance. Results
// depend only on the seed and trial count, never on the worker count.

enum class Suite { Bound, Convexity, Efficiency, AppendixA, AppendixB, All };

const char *suite_name(Suite suite);
std::optional<Suite> parse_suite(std::string_view name);

struct VerifyConfig {
    std::uint64_t seed = 42;
    std::size_t trials = 1000;
    /// Replaces the tolerance of every check that has a non-zero one.
    std::optional<double> tolerance;
};

struct SuiteReport {
    std::string suite;
    std::size_t trials = 0;
    double worst_margin = 0;
    bool pass = false;
    std::vector<ProbeReport> details;
};

/// Throws OutOfRange for trials == 0.
SuiteReport run_suite(Suite suite, const VerifyConfig &config);

// Individual suites; each appends to `details`.
void bound_suite(const VerifyConfig &config, std::vector<ProbeReport> &details);
void convexity_suite(const VerifyConfig &config, std::vector<ProbeReport> &details);
void efficiency_suite(const VerifyConfig &config, std::vector<ProbeReport> &details);
void appendix_a_suite(const VerifyConfig &config, std::vector<ProbeReport> &details);
void appendix_b_suite(const VerifyConfig &config, std::vector<ProbeReport> &details);

nlohmann::ordered_json to_json(const ProbeReport &report);
nlohmann::ordered_json to_json(const SuiteReport &report);

/// Brute-force sup over chords t y_i + (1 - t) y_j through each sample x_k,
/// O(n^3). Reference for concave_envelope.
std::vector<double> chord_sup(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace qtradeoff

#endif
