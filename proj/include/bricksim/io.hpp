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


// File formats. Numbers are written with 17 significant digits so outputs are
// byte-stable and round-trip exactly. Complex values are [re, im] pairs.
//
// Mesh program:
//   {"topology": "fig2" | "fig3" | {"rows": R, "cols": C,
//                                   "removed_rungs": [[i, k], ...],
//                                   "stub_rungs": [[i, k], ...], "name": s},
//    "default_setting": {"phi1": x, "phi2": y},          (optional)
//    "settings": [{"tbu": id or label, "phi1": x, "phi2": y}, ...],
//    "segments": [{"link": k, "phase": p, "delay_s": d}, ...]}
// TBUs without an entry take default_setting; without one they are an error.
//
// Loop program:
//   {"bins": M, "passes": N, "tau_s": t,
//    "schedule": [{"pass": p, "step": k, "theta": t, "phi": f}, ...]}
//
// Matrices (unitaries, Gram matrices): an array of rows, each entry a number
// or an [re, im] pair, or an object holding it under "unitary" / "gram".
//
// Unknown fields are rejected everywhere.

#ifndef BRICKSIM_IO_HPP
#define BRICKSIM_IO_HPP

#include <string>
#include <vector>

#include "bricksim/compile.hpp"
#include "bricksim/cyclic.hpp"
#include "bricksim/fock.hpp"
#include "bricksim/mesh.hpp"
#include "bricksim/temporal.hpp"

namespace bricksim {

struct TopologySpec {
    std::string preset;  // empty for a custom bricks grid
    int rows = 0;
    int cols = 0;
    BrickEdits edits;
    std::string name;
};

/// "fig2", "fig3", or "RxC" (e.g. "2x1") for a plain bricks grid.
TopologySpec parse_topology_arg(const std::string &text);
MeshTopology build_topology(const TopologySpec &spec);

struct MeshProgramFile {
    TopologySpec spec;
    MeshTopology topology;
    MeshProgram program;
};

MeshProgramFile parse_mesh_program(const std::string &json_text);
std::string mesh_program_to_json(const TopologySpec &spec, const MeshTopology &topology,
                                 const MeshProgram &program);

LoopProgram parse_loop_program(const std::string &json_text);
std::string loop_program_to_json(const LoopProgram &program);

ComplexMatrix parse_matrix(const std::string &json_text);
std::string matrix_to_json(const ComplexMatrix &m, int indent = 0);

/// {"topology", "frequency_hz", "port_order", "ports", "unitarity_deviation", "unitary"}.
std::string compiled_unitary_to_json(const std::string &topology_name, const CompiledUnitary &cu);

/// %.17g
std::string format_double(double x);

/// "occupation,probability" with ';'-joined occupations.
std::string distribution_csv(const OutputDistribution &d);
/// Header mode0..mode{m-1}, one draw per row.
std::string samples_csv(const std::vector<OccupationVector> &samples, int modes);
/// "frequency_hz,re,im,abs,phase"; failed points are written as nan.
std::string sweep_csv(const SpectralSweep &sweep);
/// "phi,probability"
std::string fringe_csv(const FringeScan &scan);

/// Both throw InvalidArgument on I/O failure.
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

}  // namespace bricksim

#endif  // BRICKSIM_IO_HPP
