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

#include "bricksim/cyclic.hpp"
#include "bricksim/errors.hpp"
#include "doctest.h"

using namespace bricksim;

TEST_CASE("n = 3 path elements") {
    // u(out, in), 0-indexed; comments give the 1-indexed (in -> out) element.
    for (double phi : {0.0, 0.9, 2.5}) {
        ComplexMatrix u = build_ci_unitary({3, phi, PhasePlacement::kSingleInternal});
        CHECK(std::abs(u(1, 2) - Complex(-0.5, 0)) < 1e-12);                 // S_{3,2}
        CHECK(std::abs(u(5, 2) - Complex(0.5, 0)) < 1e-12);                  // S_{3,6}
        CHECK(std::abs(u(1, 0) - Complex(0.5, 0)) < 1e-12);                  // S_{1,2}
        CHECK(std::abs(u(2, 0) + 0.5 * std::polar(1.0, phi)) < 1e-12);       // S_{1,3}
        CHECK(std::abs(u(2, 4) - Complex(0.5, 0)) < 1e-12);                  // S_{5,3}
        CHECK(std::abs(u(5, 4) - Complex(-0.5, 0)) < 1e-12);                 // S_{5,6}
        CHECK(is_unitary(u, 1e-10).ok());
    }
    CHECK(ci_arm_permutation(3) == std::vector<int>{1, 3, 5, 0, 2, 4});
    CHECK_THROWS_AS(build_ci_unitary({1, 0.0}), InvalidArgument);
}

TEST_CASE("probability formula") {
    for (double phi : {0.0, 0.4, kPi, 4.0}) {
        CHECK(ci_probability_formula(3, 0, 2, phi) == doctest::Approx((1 - std::cos(phi)) / 32));
    }
    CHECK(ci_probability_formula(3, 0, 2, 0.0) == 0.0);
    CHECK(ci_probability_formula(2, 0, 1, kPi) == doctest::Approx(0.25));
}

TEST_CASE("Eq. 15 outcome") {
    CiOutcome o = make_ci_outcome(3, {1, 2, 5});
    CHECK(o.p == 0);
    CHECK(o.q == 2);
    CHECK(std::abs(ci_exact_probability({3, kPi}, o) - 1.0 / 16) < 1e-12);
    CHECK(ci_exact_probability({3, 0.0}, o) < 1e-12);
    for (double phi : uniform_phase_grid(24)) {
        CHECK(std::abs(ci_exact_probability({3, phi}, o) - (1 - std::cos(phi)) / 32) < 1e-12);
    }
}

TEST_CASE("formula equals permanent oracle for n = 2..5") {
    for (int n = 2; n <= 5; ++n) {
        auto reachable = ci_reachable_outcomes(n);
        CHECK(!reachable.empty());
        for (const auto &o : reachable) {
            for (double phi : uniform_phase_grid(n <= 3 ? 24 : 6)) {
                CHECK(std::abs(ci_exact_probability({n, phi}, o) -
                               ci_probability_formula(n, o.p, o.q, phi)) < 1e-12);
            }
        }
    }
}

TEST_CASE("unitarity and normalization") {
    for (int n = 2; n <= 8; ++n) {
        for (double phi : uniform_phase_grid(5)) {
            CHECK(is_unitary(build_ci_unitary({n, phi}), 1e-10).ok());
            CHECK(is_unitary(build_ci_unitary({n, phi, PhasePlacement::kLayer4Difference}), 1e-10)
                      .ok());
        }
    }
    for (int n = 2; n <= 3; ++n) {
        auto d = full_distribution(build_ci_unitary({n, 1.3}), ci_canonical_input(n));
        CHECK(std::abs(d.total() - 1.0) < 1e-9);
    }
}

TEST_CASE("phase placements agree") {
    for (int n = 2; n <= 4; ++n) {
        for (const auto &o : ci_reachable_outcomes(n)) {
            for (double phi : uniform_phase_grid(8)) {
                CHECK(std::abs(
                          ci_exact_probability({n, phi, PhasePlacement::kSingleInternal}, o) -
                          ci_exact_probability({n, phi, PhasePlacement::kLayer4Difference}, o)) <
                      1e-12);
            }
        }
    }
}

TEST_CASE("fringe scans and visibility") {
    const CiOutcome o = make_ci_outcome(3, {1, 2, 5});
    const auto grid = uniform_phase_grid(24);
    FringeScan ideal = fringe_scan({3}, o, grid);
    CHECK(std::abs(ideal.visibility - 1.0) < 1e-9);
    CHECK(std::abs(gi_report(ideal) - 1.0) < 1e-9);

    FringeScan dist = fringe_scan({3}, o, grid, GramMatrix::Identity(3, 3));
    for (double p : dist.probabilities) CHECK(std::abs(p - dist.probabilities[0]) < 1e-10);
    CHECK(std::abs(gi_report(dist)) < 1e-10);

    GramMatrix one_out = GramMatrix::Ones(3, 3);
    for (int k = 1; k < 3; ++k) one_out(0, k) = one_out(k, 0) = 0.0;
    FringeScan homog = fringe_scan({3}, o, grid, one_out);
    for (double p : homog.probabilities) CHECK(std::abs(p - homog.probabilities[0]) < 1e-10);
    CHECK(std::abs(gi_report(homog)) < 1e-10);

    // With pairwise overlap x the fringe contrast is x^n; 0.25 at n = 2, x = 0.5.
    GramMatrix half(2, 2);
    half << 1.0, 0.5, 0.5, 1.0;
    const CiOutcome o2 = ci_reachable_outcomes(2).front();
    CHECK(std::abs(gi_report(fringe_scan({2}, o2, grid, half)) - 0.25) < 1e-10);
    GramMatrix third = GramMatrix::Ones(3, 3) * 0.5;
    third.diagonal().setOnes();
    CHECK(std::abs(gi_report(fringe_scan({3}, o, grid, third)) - 0.125) < 1e-10);
}

TEST_CASE("parity law flips the fringe") {
    const auto grid = uniform_phase_grid(24);
    for (const auto &o : ci_reachable_outcomes(3)) {
        FringeScan s = fringe_scan({3}, o, grid);
        const bool max_at_zero = ((3 + o.p + o.q) % 2 == 0);
        CHECK((s.probabilities[0] > s.probabilities[12]) == max_at_zero);
    }
}

TEST_CASE("degenerate visibility") {
    CHECK_THROWS_AS(fringe_visibility({0.0, 0.0}), DegenerateResult);
    CHECK(fringe_visibility({0.3, 0.3, 0.3}) == 0.0);
    // Unreachable outcome: photons cannot all stay in the upper modes.
    const CiOutcome dead = make_ci_outcome(3, {0, 2, 4});
    if (!ci_outcome_reachable(3, dead)) {
        FringeScan s = fringe_scan({3}, dead, uniform_phase_grid(4));
        CHECK(std::isnan(s.visibility));
        CHECK_THROWS_AS(gi_report(s), DegenerateResult);
    }
}
