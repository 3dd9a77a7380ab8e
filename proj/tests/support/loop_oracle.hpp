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


// Reference for loop programs: the full M x M gate product, pass by pass and
// step by step, with bar couplers where the schedule is silent.

#ifndef BRICKSIM_TESTS_LOOP_ORACLE_HPP
#define BRICKSIM_TESTS_LOOP_ORACLE_HPP

#include <cmath>
#include <random>

#include "bricksim/temporal.hpp"

namespace bricksim::testing {

template <class Rng>
LoopProgram random_loop_program(int m, int n, Rng &rng) {
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    LoopProgram p{m, n, 30e-12, {}};
    for (int pass = 0; pass < n; ++pass)
        for (int k = 0; k + 1 < m; ++k) p.schedule.push_back({pass, k, ang(rng), ang(rng)});
    return p;
}

inline ComplexMatrix layered_cascade(const LoopProgram &p) {
    ComplexMatrix u = ComplexMatrix::Identity(p.bins, p.bins);
    for (int pass = 0; pass < p.passes; ++pass) {
        for (int k = 0; k + 1 < p.bins; ++k) {
            double theta = 0, phi = 0;
            for (const auto &e : p.schedule) {
                if (e.pass == pass && e.step == k) {
                    theta = e.theta;
                    phi = e.phi;
                }
            }
            ComplexMatrix ps = ComplexMatrix::Identity(2, 2);
            ps(0, 0) = std::polar(1.0, phi);
            ComplexMatrix c(2, 2);
            c << std::cos(theta), kI * std::sin(theta), kI * std::sin(theta), std::cos(theta);
            u = embed_two_mode(c * ps, k, k + 1, p.bins) * u;
        }
    }
    return u;
}

}  // namespace bricksim::testing

#endif  // BRICKSIM_TESTS_LOOP_ORACLE_HPP
