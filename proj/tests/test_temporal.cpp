// Copyright 2026 The bricksim Authors
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

#include <cmath>
#include <random>

#include "bricksim/errors.hpp"
#include "bricksim/temporal.hpp"
#include "doctest.h"
#include "support/loop_oracle.hpp"

using namespace bricksim;

using testing::layered_cascade;
using testing::random_loop_program;

TEST_CASE("loop_gate special cases") {
    CHECK(max_abs_diff(loop_gate(kPi / 4, 0), bs_matrix()) < 1e-15);
    CHECK(max_abs_diff(loop_gate(0, 0), ComplexMatrix::Identity(2, 2)) == 0.0);
    CHECK(is_unitary(loop_gate(0.3, 1.7), 1e-12).ok());
}

TEST_CASE("single coupler is the beam splitter") {
    LoopProgram p{2, 1, 30e-12, {{0, 0, kPi / 4, 0.0}}};
    UnfoldedCircuit c = unfold_to_spatial(p);
    CHECK(max_abs_diff(c.unitary, bs_matrix()) < 1e-12);
    CHECK(c.depth == 1);
    CHECK(c.layer_log.size() == 1);

    OutputDistribution d = temporal_sampling(p, {1, 1});
    OutputDistribution ref = full_distribution(bs_matrix(), {1, 1});
    CHECK(d.outcomes == ref.outcomes);
    for (std::size_t k = 0; k < d.outcomes.size(); ++k) {
        CHECK(std::abs(d.probabilities[k] - ref.probabilities[k]) < 1e-15);
    }
    CHECK(d.probabilities[1] < 1e-15);
}

TEST_CASE("bar schedule is the identity") {
    LoopProgram p{5, 3, 1e-9, {}};
    UnfoldedCircuit c = unfold_to_spatial(p);
    CHECK(max_abs_diff(c.unitary, ComplexMatrix::Identity(5, 5)) == 0.0);
    CHECK(c.layer_log.size() == 3);
    CHECK(c.layer_log[0].size() == 4);
    OutputDistribution d = temporal_sampling(p, {1, 0, 1, 1, 0});
    for (std::size_t k = 0; k < d.outcomes.size(); ++k) {
        CHECK(d.probabilities[k] ==
              doctest::Approx(d.outcomes[k] == OccupationVector{1, 0, 1, 1, 0} ? 1.0 : 0.0));
    }
}

TEST_CASE("random programs match the cascade oracle") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + trial % 5;
        const int n = 1 + trial % 4;
        LoopProgram p = random_loop_program(m, n, rng);
        UnfoldedCircuit c = unfold_to_spatial(p);
        CHECK(c.depth == n);
        CHECK(c.layer_log.size() == static_cast<std::size_t>(n));
        CHECK(is_unitary(c.unitary, 1e-10).ok());
        CHECK(max_abs_diff(c.unitary, layered_cascade(p)) < 1e-12);
    }
    LoopProgram p = random_loop_program(4, 2, rng);
    CHECK(std::abs(temporal_sampling(p, {1, 1, 0, 1}).total() - 1.0) < 1e-9);
}

TEST_CASE("invalid programs") {
    CHECK_THROWS_AS(unfold_to_spatial({1, 1, 1e-9, {}}), InvalidArgument);
    CHECK_THROWS_AS(unfold_to_spatial({2, 0, 1e-9, {}}), InvalidArgument);
    CHECK_THROWS_AS(unfold_to_spatial({2, 1, 0.0, {}}), InvalidArgument);
    CHECK_THROWS_AS(unfold_to_spatial({3, 1, 1e-9, {{0, 2, 0.1, 0.0}}}), InvalidArgument);
    CHECK_THROWS_AS(unfold_to_spatial({3, 1, 1e-9, {{1, 0, 0.1, 0.0}}}), InvalidArgument);
    CHECK_THROWS_AS(unfold_to_spatial({3, 1, 1e-9, {{0, 0, 0.1, 0.0}, {0, 0, 0.2, 0.0}}}),
                    InvalidArgument);
    CHECK_THROWS_AS(unfold_to_spatial({3, 1, 1e-9, {{0, 0, NAN, 0.0}}}), InvalidArgument);
    CHECK_THROWS_AS(temporal_sampling({3, 1, 1e-9, {}}, {1, 1}), InvalidArgument);
}
