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

// Recirculating mesh model.
//
// A mesh is a set of tunable basic units (TBUs), each one MZI with four
// physical ports: a0, a1 on side A and b0, b1 on side B. Port k of TBU t has
// the global index 4t + k (k = 0..3 for a0, a1, b0, b1). Every physical port
// carries an inbound mode (light entering the TBU) and an outbound mode.
//
// A TBU with 2x2 core C scatters
//
//   out_B = C   * in_A
//   out_A = C^T * in_B
//
// so its 4x4 scattering matrix is reciprocal. A link is a waveguide joining
// two ports; it carries light both ways with the same phase and delay. Ports
// without a link are the external ports of the mesh.
//
// Routing language: with phi1 - phi2 = pi (delta = pi/2) a TBU is in the bar
// state, a0 <-> b0 and a1 <-> b1; with phi1 = phi2 it is in the cross state,
// a0 <-> b1 and a1 <-> b0; delta = pi/4 splits 50:50.

#ifndef BRICKSIM_MESH_HPP
#define BRICKSIM_MESH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bricksim/linops.hpp"

namespace bricksim {

enum class Orientation { kHorizontal, kVertical };

enum class TbuKind {
    kSymmetric,   // sMZI, core smzi_matrix(phi1, phi2)
    kAsymmetric,  // aMZI, core amzi_matrix(phi1, phi2)
    kModified,    // vertical MZI: X * smzi_matrix(phi1, phi2) * X, X the swap
};

enum PortSlot : int { kA0 = 0, kA1 = 1, kB0 = 2, kB1 = 3 };

struct Tbu {
    int id = 0;
    Orientation orientation = Orientation::kHorizontal;
    TbuKind kind = TbuKind::kSymmetric;
    double length_bul = 1.0;  // physical length in basic unit lengths
    std::string label;
};

struct Link {
    int a = 0;  // global port index
    int b = 0;
    double phase = 0.0;    // radians, both directions
    double delay_s = 0.0;  // group delay, contributes e^{i 2 pi nu delay}
};

struct MeshTopology {
    std::string name;
    std::vector<Tbu> tbus;
    std::vector<Link> links;
    std::vector<int> external_ports;  // ascending global port index
    std::vector<int> link_of_port;    // link index per global port, -1 if external

    int port_count() const { return static_cast<int>(tbus.size()) * 4; }
    int mode_count() const { return static_cast<int>(external_ports.size()); }
    /// Port on the other end of p's link, or -1.
    int partner(int port) const;
    /// "label.a0" style name of a global port.
    std::string port_label(int port) const;
    /// Position of a global port in external_ports, or -1.
    int external_index(int port) const;
};

class MeshBuilder {
   public:
    explicit MeshBuilder(std::string name = "custom");
    int add_tbu(Orientation orientation, TbuKind kind, double length_bul, std::string label);
    /// Join two ports; each port may be linked at most once.
    int link(int port_a, int port_b, double phase = 0.0, double delay_s = 0.0);
    /// Validates and returns the topology; throws InvalidArgument.
    MeshTopology build() const;

   private:
    MeshTopology topo_;
};

struct GateSetting {
    double phi1 = 0.0;
    double phi2 = 0.0;
};

struct SegmentSetting {
    double phase = 0.0;
    double delay_s = 0.0;
};

struct MeshProgram {
    std::map<int, GateSetting> settings;    // TBU id -> phases
    std::map<int, SegmentSetting> segments;  // link index -> override of the topology values
};

GateSetting bar_setting();
GateSetting cross_setting();
GateSetting split_setting();
/// phi1 = 2 delta, phi2 = 0: |core(0,0)| = sin(delta).
GateSetting setting_for_delta(double delta);

/// Same setting on every TBU.
MeshProgram uniform_program(const MeshTopology &topology, GateSetting setting);

/// 2x2 core of a TBU kind.
ComplexMatrix tbu_core(TbuKind kind, const GateSetting &setting);

/// 4x4 scattering over (a0, a1, b0, b1): [[0, C^T], [C, 0]].
ComplexMatrix tbu_scattering(TbuKind kind, const GateSetting &setting);

/// Effective phase and delay of a link under a program.
SegmentSetting link_setting(const MeshTopology &topology, const MeshProgram &program, int link);

/// Problems with a program: missing or unknown TBU settings, non-finite
/// phases, unknown or non-finite segment overrides. Empty when valid.
std::vector<std::string> validate_program(const MeshTopology &topology,
                                          const MeshProgram &program);

/// Throws InvalidArgument listing every validate_program problem.
void require_valid_program(const MeshTopology &topology, const MeshProgram &program);

// ---------------------------------------------------------------------------
// Bricks meshes.
//
// build_bricks_mesh(rows, cols) places cols + 1 vertical lines of `rows`
// vertical TBUs each (modified MZIs, 0.5 BUL long). Junction nodes sit at
// (i, k), i = 0..rows, k = 0..cols; vertical V(i,k) runs from node (i, k)
// (side A) down to node (i+1, k) (side B). A horizontal sMZI H(i,k) of length
// 1 BUL joins node (i, k) (side A) to node (i, k+1) (side B) whenever i + k is
// even, which offsets alternate rows like brickwork. Every node is a 3-point
// junction: each pair of its TBUs is joined by exactly one waveguide, and a
// pair with a missing member leaves the other port external.
//
// Counts: horizontals = sum over k < cols of the number of i in 0..rows with
// i + k even; verticals = rows * (cols + 1); external ports = 2 per node of
// degree below 3. (rows, cols) = (1, 1) gives one rung between two vertical
// TBUs (3 TBUs, 8 external ports); the smallest closed brick cell, (2, 1),
// has 2 rungs and 4 verticals and forms a 4-BUL loop.
// ---------------------------------------------------------------------------

struct BrickEdits {
    /// Rungs to drop, by their left node (i, k).
    std::vector<std::pair<int, int>> removed_rungs;
    /// Extra rungs from node (i, k) to a new node (i, k+1) past the last line.
    std::vector<std::pair<int, int>> stub_rungs;
};

MeshTopology build_bricks_mesh(int rows, int cols);
MeshTopology build_bricks_mesh(int rows, int cols, const BrickEdits &edits,
                               const std::string &name);

/// "fig2": build_bricks_mesh(7, 3) without rungs H(0,0) and H(6,2); 10 + 28
/// TBUs, 32 modes. "fig3": build_bricks_mesh(6, 6) without H(3,3) and with a
/// stub rung at (0, 6); 21 + 42 TBUs, 44 modes.
MeshTopology build_preset(const std::string &name);

/// TBU id by label, e.g. "H(2,0)" or "V(3,1)"; -1 if absent.
int find_tbu(const MeshTopology &topology, const std::string &label);

// ---------------------------------------------------------------------------
// Resources.
// ---------------------------------------------------------------------------

/// Gates of an m-mode feed-forward (triangular or rectangular) mesh: m(m-1)/2.
long long feedforward_gate_count(int m);

struct ResourceReport {
    int tbu_count = 0;
    int horizontal_count = 0;
    int vertical_count = 0;
    int external_modes = 0;
    long long feedforward_equivalent = 0;
    double ratio = 0.0;  // feedforward_equivalent / tbu_count
};

ResourceReport resource_report(const MeshTopology &topology);

// ---------------------------------------------------------------------------
// Dominant-path tracing.
// ---------------------------------------------------------------------------

struct PathTrace {
    /// Alternating entry/exit ports of every TBU crossed, global indices.
    std::vector<int> ports;
    int beamsplitters_crossed = 0;
    int exit_port = -1;  // external port where the light leaves
};

/// Beam splitters inside one TBU of the given kind (2 for every MZI type).
int beamsplitters_in(TbuKind kind);

/// Follows the largest-magnitude output of every TBU from an external port
/// until the light leaves the mesh. Ties go to the lower port. Throws
/// InvalidArgument if the port is not external or the path closes on itself.
PathTrace trace_path(const MeshTopology &topology, const MeshProgram &program, int from_port);

/// Beam splitters on the dominant path from one external port to another;
/// throws InvalidArgument when that path leaves somewhere else.
int optical_depth(const MeshTopology &topology, const MeshProgram &program, int from_port,
                  int to_port);

}  // namespace bricksim

#endif  // BRICKSIM_MESH_HPP
