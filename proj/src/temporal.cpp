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

#include "bricksim/temporal.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "bricksim/errors.hpp"

namespace bricksim {

ComplexMatrix loop_gate(double theta, double phi) {
    const Complex e = std::polar(1.0, phi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    ComplexMatrix u(2, 2);
    u << e * c, kI * s, kI * e * s, c;
    return u;
}

void validate_loop_program(const LoopProgram &program) {
    if (program.bins < 2) throw InvalidArgument("loop program: bins must be >= 2");
    if (program.passes < 1) throw InvalidArgument("loop program: passes must be >= 1");
    if (!(std::isfinite(program.tau_s) && program.tau_s > 0.0)) {
        throw InvalidArgument("loop program: tau_s must be positive and finite");
    }
    std::map<std::pair<int, int>, int> seen;
    for (const LoopStep &e : program.schedule) {
        const std::string where =
            "loop program: entry (pass " + std::to_string(e.pass) + ", step " +
            std::to_string(e.step) + ")";
        if (e.pass < 0 || e.pass >= program.passes) throw InvalidArgument(where + ": pass out of range");
        if (e.step < 0 || e.step > program.bins - 2) {
            throw InvalidArgument(where + ": step out of range 0.." + std::to_string(program.bins - 2));
        }
        if (!std::isfinite(e.theta) || !std::isfinite(e.phi)) {
            throw InvalidArgument(where + ": non-finite angle");
        }
        if (seen[{e.pass, e.step}]++ > 0) throw InvalidArgument(where + ": duplicated");
    }
}

UnfoldedCircuit unfold_to_spatial(const LoopProgram &program) {
    validate_loop_program(program);
    std::map<std::pair<int, int>, const LoopStep *> lookup;
    for (const LoopStep &e : program.schedule) lookup[{e.pass, e.step}] = &e;

    const int m = program.bins;
    UnfoldedCircuit out;
    out.unitary = ComplexMatrix::Identity(m, m);
    out.depth = program.passes;
    out.layer_log.resize(program.passes);
    for (int p = 0; p < program.passes; ++p) {
        for (int k = 0; k + 1 < m; ++k) {
            AppliedGate g{p, k, k, k + 1, 0.0, 0.0};
            if (auto it = lookup.find({p, k}); it != lookup.end()) {
                g.theta = it->second->theta;
                g.phi = it->second->phi;
            }
            // Only rows k and k+1 change.
            const ComplexMatrix gate = loop_gate(g.theta, g.phi);
            const Eigen::MatrixXcd rows = out.unitary.middleRows(k, 2);
            out.unitary.middleRows(k, 2) = gate * rows;
            out.layer_log[p].push_back(g);
        }
    }
    return out;
}

OutputDistribution temporal_sampling(const LoopProgram &program,
                                     const OccupationVector &input_bins, std::uint64_t cap) {
    if (input_bins.size() != static_cast<std::size_t>(program.bins)) {
        throw InvalidArgument("temporal_sampling: input has " + std::to_string(input_bins.size()) +
                              " bins, program has " + std::to_string(program.bins));
    }
    return full_distribution(unfold_to_spatial(program).unitary, input_bins, cap);
}

}  // namespace bricksim
