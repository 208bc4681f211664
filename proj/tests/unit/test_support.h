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


#ifndef QTRADEOFF_TESTS_TEST_SUPPORT_H
#define QTRADEOFF_TESTS_TEST_SUPPORT_H

#include <gtest/gtest.h>

#include <random>

#include "qtradeoff/error.h"
#include "qtradeoff/qmat.h"
#include "qtradeoff/parallel.h"

namespace qtradeoff::testing {

/// Runs fn and checks that it throws an Error of the given kind.
template <class Fn>
void expect_error(ErrorKind kind, Fn &&fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << error_kind_name(kind);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

inline ComplexMatrix gaussian_matrix(std::size_t d, Rng &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            m(i, j) = Complex(g(rng), g(rng));
        }
    }
    return m;
}

}  // namespace qtradeoff::testing

#endif
