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

// Time-bin loop programs.
//
// M time bins separated by tau stream through a short loop of delay tau, so
// the loop coupler acts on each adjacent pair of bins (k, k+1) in turn,
// k = 0 .. M-2. A long loop re-injects the whole train for the next pass.
// One pass is therefore a staircase of M-1 two-mode gates and N passes unfold
// to an M-mode network of depth N. Passes and steps are 0-indexed.
//
// The coupler for step (p, k) is loop_gate(theta, phi) acting on modes
// (k, k+1): a phase phi on bin k followed by a coupler of angle theta.
// theta = 0 is the bar state (bins untouched) and is used for every step the
// schedule leaves out; theta = pi/4, phi = 0 is bs_matrix().

#ifndef BRICKSIM_TEMPORAL_HPP
#define BRICKSIM_TEMPORAL_HPP

#include <cstdint>
#include <vector>

#include "bricksim/fock.hpp"
#include "bricksim/linops.hpp"
#include "bricksim/mesh.hpp"
#include "bricksim/routing.hpp"

namespace bricksim {

struct LoopStep {
    int pass = 0;
    int step = 0;
    double theta = 0.0;
    double phi = 0.0;
};

struct LoopProgram {
    int bins = 2;
    int passes = 1;
    double tau_s = 1e-9;
    std::vector<LoopStep> schedule;
};

struct AppliedGate {
    int pass = 0;
    int step = 0;
    int mode_a = 0;
    int mode_b = 1;
    double theta = 0.0;
    double phi = 0.0;
};

struct UnfoldedCircuit {
    ComplexMatrix unitary;
    int depth = 0;
    std::vector<std::vector<AppliedGate>> layer_log;  // one entry per pass
};

/// [[e^{i phi} cos theta, i sin theta], [i e^{i phi} sin theta, cos theta]].
ComplexMatrix loop_gate(double theta, double phi);

/// Throws InvalidArgument on M < 2, N < 1, tau <= 0, out-of-range or
/// duplicated (pass, step) entries, or non-finite values.
void validate_loop_program(const LoopProgram &program);

UnfoldedCircuit unfold_to_spatial(const LoopProgram &program);

/// Boson sampling of the unfolded network.
OutputDistribution temporal_sampling(const LoopProgram &program,
                                     const OccupationVector &input_bins,
                                     std::uint64_t cap = kDefaultStateCap);

// ---------------------------------------------------------------------------
// Loops on a bricks mesh.
//
// mesh_loop_program engages two closed bar/cross loops, a short one of 4 BULs
// and a longer one, each coupled through one of its own TBUs (the coupler) to
// a separate bus waveguide routed between two external ports. The coupler is
// detuned by `coupler_offset` radians from the loop's bar/cross state; every
// TBU not on a loop or bus is left at 50:50. Every link gets the delay of
// half of each TBU it joins, length_bul * mzi_length * group_index / c, so a
// loop's round trip is its BUL length times one TBU transit time.
// ---------------------------------------------------------------------------

struct MeshCavity {
    int buls = 0;
    std::vector<Hop> loop;
    int coupler_tbu = -1;
    std::vector<Hop> bus;  // from bus_in_port to bus_out_port, through the coupler
    int bus_in_port = -1;  // external ports (global index)
    int bus_out_port = -1;
    int bus_in_index = -1;  // positions in external_ports / compiled unitary
    int bus_out_index = -1;
    double round_trip_s = 0.0;
};

struct MeshLoopProgram {
    MeshProgram program;
    MeshCavity small;
    MeshCavity large;
};

/// Throws InvalidArgument when the mesh has no routable loop of the needed
/// length.
MeshLoopProgram mesh_loop_program(const MeshTopology &topology, double mzi_length_m = 450e-6,
                                  double group_index = 5.0, int large_buls = 6,
                                  double coupler_offset = 0.5);

}  // namespace bricksim

#endif  // BRICKSIM_TEMPORAL_HPP
