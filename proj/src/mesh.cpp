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

#include "bricksim/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "bricksim/errors.hpp"

namespace bricksim {

namespace {

const char *kSlotNames[4] = {"a0", "a1", "b0", "b1"};

std::string fmt_node(int i, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(k) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// MeshTopology
// ---------------------------------------------------------------------------

int MeshTopology::partner(int port) const {
    if (port < 0 || port >= port_count()) return -1;
    const int l = link_of_port[port];
    if (l < 0) return -1;
    return links[l].a == port ? links[l].b : links[l].a;
}

std::string MeshTopology::port_label(int port) const {
    if (port < 0 || port >= port_count()) return "?" + std::to_string(port);
    const Tbu &t = tbus[port / 4];
    const std::string base = t.label.empty() ? "T" + std::to_string(t.id) : t.label;
    return base + "." + kSlotNames[port % 4];
}

int MeshTopology::external_index(int port) const {
    auto it = std::lower_bound(external_ports.begin(), external_ports.end(), port);
    if (it == external_ports.end() || *it != port) return -1;
    return static_cast<int>(it - external_ports.begin());
}

// ---------------------------------------------------------------------------
// MeshBuilder
// ---------------------------------------------------------------------------

MeshBuilder::MeshBuilder(std::string name) { topo_.name = std::move(name); }

int MeshBuilder::add_tbu(Orientation orientation, TbuKind kind, double length_bul,
                         std::string label) {
    if (!(std::isfinite(length_bul) && length_bul > 0.0)) {
        throw InvalidArgument("add_tbu: length must be positive");
    }
    Tbu t;
    t.id = static_cast<int>(topo_.tbus.size());
    t.orientation = orientation;
    t.kind = kind;
    t.length_bul = length_bul;
    t.label = std::move(label);
    topo_.tbus.push_back(std::move(t));
    topo_.link_of_port.resize(topo_.tbus.size() * 4, -1);
    return topo_.tbus.back().id;
}

int MeshBuilder::link(int port_a, int port_b, double phase, double delay_s) {
    const int ports = topo_.port_count();
    if (port_a < 0 || port_b < 0 || port_a >= ports || port_b >= ports) {
        throw InvalidArgument("link: port out of range");
    }
    if (port_a == port_b) throw InvalidArgument("link: a port cannot link to itself");
    if (port_a / 4 == port_b / 4) {
        throw InvalidArgument("link: ports " + topo_.port_label(port_a) + " and " +
                              topo_.port_label(port_b) + " belong to the same TBU");
    }
    for (int p : {port_a, port_b}) {
        if (topo_.link_of_port[p] >= 0) {
            throw InvalidArgument("link: port " + topo_.port_label(p) + " is already linked");
        }
    }
    if (!std::isfinite(phase) || !std::isfinite(delay_s) || delay_s < 0.0) {
        throw InvalidArgument("link: phase and delay must be finite, delay >= 0");
    }
    const int idx = static_cast<int>(topo_.links.size());
    topo_.links.push_back({port_a, port_b, phase, delay_s});
    topo_.link_of_port[port_a] = idx;
    topo_.link_of_port[port_b] = idx;
    return idx;
}

MeshTopology MeshBuilder::build() const {
    if (topo_.tbus.empty()) throw InvalidArgument("mesh has no TBUs");
    MeshTopology t = topo_;
    t.external_ports.clear();
    for (int p = 0; p < t.port_count(); ++p) {
        if (t.link_of_port[p] < 0) t.external_ports.push_back(p);
    }
    if (t.external_ports.empty()) throw InvalidArgument("mesh has no external ports");
    return t;
}

// ---------------------------------------------------------------------------
// Gate settings and scattering
// ---------------------------------------------------------------------------

GateSetting bar_setting() { return {kPi, 0.0}; }
GateSetting cross_setting() { return {0.0, 0.0}; }
GateSetting split_setting() { return {kPi / 2, 0.0}; }
GateSetting setting_for_delta(double delta) { return {2.0 * delta, 0.0}; }

MeshProgram uniform_program(const MeshTopology &topology, GateSetting setting) {
    MeshProgram p;
    for (const Tbu &t : topology.tbus) p.settings[t.id] = setting;
    return p;
}

ComplexMatrix tbu_core(TbuKind kind, const GateSetting &s) {
    switch (kind) {
        case TbuKind::kSymmetric:
            return smzi_matrix(s.phi1, s.phi2);
        case TbuKind::kAsymmetric:
            return amzi_matrix(s.phi1, s.phi2);
        case TbuKind::kModified: {
            const ComplexMatrix c = smzi_matrix(s.phi1, s.phi2);
            ComplexMatrix x(2, 2);
            x << c(1, 1), c(1, 0), c(0, 1), c(0, 0);
            return x;
        }
    }
    throw InvalidArgument("unknown TBU kind");
}

ComplexMatrix tbu_scattering(TbuKind kind, const GateSetting &setting) {
    const ComplexMatrix c = tbu_core(kind, setting);
    ComplexMatrix s = ComplexMatrix::Zero(4, 4);
    s.block(2, 0, 2, 2) = c;
    s.block(0, 2, 2, 2) = c.transpose();
    return s;
}

SegmentSetting link_setting(const MeshTopology &topology, const MeshProgram &program, int link) {
    auto it = program.segments.find(link);
    if (it != program.segments.end()) return it->second;
    const Link &l = topology.links.at(link);
    return {l.phase, l.delay_s};
}

std::vector<std::string> validate_program(const MeshTopology &topology,
                                          const MeshProgram &program) {
    std::vector<std::string> errors;
    const int n = static_cast<int>(topology.tbus.size());
    for (const Tbu &t : topology.tbus) {
        if (!program.settings.count(t.id)) {
            errors.push_back("missing setting for TBU " + std::to_string(t.id) + " (" + t.label +
                             ")");
        }
    }
    for (const auto &[id, s] : program.settings) {
        if (id < 0 || id >= n) {
            errors.push_back("setting for unknown TBU " + std::to_string(id));
            continue;
        }
        if (!std::isfinite(s.phi1) || !std::isfinite(s.phi2)) {
            errors.push_back("non-finite phase on TBU " + std::to_string(id));
        }
    }
    const int links = static_cast<int>(topology.links.size());
    for (const auto &[idx, seg] : program.segments) {
        if (idx < 0 || idx >= links) {
            errors.push_back("segment override for unknown link " + std::to_string(idx));
            continue;
        }
        if (!std::isfinite(seg.phase) || !std::isfinite(seg.delay_s)) {
            errors.push_back("non-finite value on segment " + std::to_string(idx));
        } else if (seg.delay_s < 0.0) {
            errors.push_back("negative delay on segment " + std::to_string(idx));
        }
    }
    return errors;
}

void require_valid_program(const MeshTopology &topology, const MeshProgram &program) {
    const auto errors = validate_program(topology, program);
    if (errors.empty()) return;
    std::string msg = "invalid mesh program:";
    for (const auto &e : errors) msg += "\n  " + e;
    throw InvalidArgument(msg);
}

// ---------------------------------------------------------------------------
// Bricks generator
// ---------------------------------------------------------------------------

namespace {

struct Node {
    int north = -1;  // vertical above, meets this node with its B side
    int south = -1;  // vertical below, A side
    int rung = -1;   // east rung (A side) on even nodes, west rung (B side) on odd
};

}  // namespace

MeshTopology build_bricks_mesh(int rows, int cols) {
    return build_bricks_mesh(rows, cols, {}, "bricks(" + std::to_string(rows) + "," +
                                                 std::to_string(cols) + ")");
}

MeshTopology build_bricks_mesh(int rows, int cols, const BrickEdits &edits,
                               const std::string &name) {
    if (rows < 1 || cols < 1) {
        throw InvalidArgument("build_bricks_mesh: rows and cols must be >= 1");
    }
    const int lines = cols + 1;
    std::set<std::pair<int, int>> removed(edits.removed_rungs.begin(), edits.removed_rungs.end());
    for (const auto &[i, k] : removed) {
        if (i < 0 || i > rows || k < 0 || k >= cols || (i + k) % 2 != 0) {
            throw InvalidArgument("build_bricks_mesh: no rung at " + fmt_node(i, k) + " to remove");
        }
    }
    std::vector<std::pair<int, int>> rungs;
    for (int i = 0; i <= rows; ++i) {
        for (int k = 0; k < cols; ++k) {
            if ((i + k) % 2 == 0 && !removed.count({i, k})) rungs.emplace_back(i, k);
        }
    }
    for (const auto &[i, k] : edits.stub_rungs) {
        if (i < 0 || i > rows || k != cols || (i + k) % 2 != 0) {
            throw InvalidArgument("build_bricks_mesh: stub rung must start on an even node of "
                                  "the last line, got " + fmt_node(i, k));
        }
        rungs.emplace_back(i, k);
    }
    std::sort(rungs.begin(), rungs.end());

    MeshBuilder b(name);
    std::map<std::pair<int, int>, Node> nodes;
    for (const auto &[i, k] : rungs) {
        const int id = b.add_tbu(Orientation::kHorizontal, TbuKind::kSymmetric, 1.0,
                                 "H" + fmt_node(i, k));
        nodes[{i, k}].rung = id;
        nodes[{i, k + 1}].rung = id;
    }
    for (int i = 0; i < rows; ++i) {
        for (int k = 0; k < lines; ++k) {
            const int id = b.add_tbu(Orientation::kVertical, TbuKind::kModified, 0.5,
                                     "V" + fmt_node(i, k));
            nodes[{i, k}].south = id;
            nodes[{i + 1, k}].north = id;
        }
    }

    // Junction wiring. Even node (rung to the east, side A: a0 upper, a1
    // lower): N.b1-E.a0, E.a1-S.a1, S.a0-N.b0. Odd node (rung to the west,
    // side B: b0 upper, b1 lower): N.b0-W.b0, W.b1-S.a0, S.a1-N.b1.
    auto port = [](int tbu, int slot) { return tbu < 0 ? -1 : 4 * tbu + slot; };
    for (const auto &[pos, nd] : nodes) {
        const bool even = (pos.first + pos.second) % 2 == 0;
        std::array<std::pair<int, int>, 3> pairs;
        if (even) {
            pairs = {{{port(nd.north, kB1), port(nd.rung, kA0)},
                      {port(nd.rung, kA1), port(nd.south, kA1)},
                      {port(nd.south, kA0), port(nd.north, kB0)}}};
        } else {
            pairs = {{{port(nd.north, kB0), port(nd.rung, kB0)},
                      {port(nd.rung, kB1), port(nd.south, kA0)},
                      {port(nd.south, kA1), port(nd.north, kB1)}}};
        }
        for (const auto &[p, q] : pairs) {
            if (p >= 0 && q >= 0) b.link(p, q);
        }
    }
    return b.build();
}

MeshTopology build_preset(const std::string &name) {
    if (name == "fig2") {
        return build_bricks_mesh(7, 3, {{{0, 0}, {6, 2}}, {}}, "fig2");
    }
    if (name == "fig3") {
        return build_bricks_mesh(6, 6, {{{3, 3}}, {{0, 6}}}, "fig3");
    }
    throw InvalidArgument("unknown preset '" + name + "' (expected fig2 or fig3)");
}

int find_tbu(const MeshTopology &topology, const std::string &label) {
    for (const Tbu &t : topology.tbus) {
        if (t.label == label) return t.id;
    }
    return -1;
}

// ---------------------------------------------------------------------------
// Resources
// ---------------------------------------------------------------------------

long long feedforward_gate_count(int m) {
    if (m < 2) throw InvalidArgument("feedforward_gate_count: m must be >= 2");
    return static_cast<long long>(m) * (m - 1) / 2;
}

ResourceReport resource_report(const MeshTopology &topology) {
    ResourceReport r;
    r.tbu_count = static_cast<int>(topology.tbus.size());
    for (const Tbu &t : topology.tbus) {
        (t.orientation == Orientation::kHorizontal ? r.horizontal_count : r.vertical_count)++;
    }
    r.external_modes = topology.mode_count();
    r.feedforward_equivalent = r.external_modes >= 2 ? feedforward_gate_count(r.external_modes) : 0;
    r.ratio = r.tbu_count ? static_cast<double>(r.feedforward_equivalent) / r.tbu_count : 0.0;
    return r;
}

// ---------------------------------------------------------------------------
// Path tracing
// ---------------------------------------------------------------------------

int beamsplitters_in(TbuKind) { return 2; }

PathTrace trace_path(const MeshTopology &topology, const MeshProgram &program, int from_port) {
    require_valid_program(topology, program);
    if (topology.external_index(from_port) < 0) {
        throw InvalidArgument("trace_path: port " + std::to_string(from_port) +
                              " is not an external port");
    }
    PathTrace trace;
    std::set<int> entered;
    int in = from_port;
    for (;;) {
        if (!entered.insert(in).second) {
            throw InvalidArgument("trace_path: dominant path from " + topology.port_label(from_port) +
                                  " closes into a loop at " + topology.port_label(in));
        }
        const int t = in / 4;
        const int slot = in % 4;
        const Tbu &tbu = topology.tbus[t];
        const ComplexMatrix s = tbu_scattering(tbu.kind, program.settings.at(t));
        int best = -1;
        double best_mag = -1.0;
        for (int o = 0; o < 4; ++o) {
            const double mag = std::abs(s(o, slot));
            if (mag > best_mag + 1e-12) {
                best_mag = mag;
                best = o;
            }
        }
        const int out = 4 * t + best;
        trace.ports.push_back(in);
        trace.ports.push_back(out);
        trace.beamsplitters_crossed += beamsplitters_in(tbu.kind);
        const int next = topology.partner(out);
        if (next < 0) {
            trace.exit_port = out;
            return trace;
        }
        in = next;
    }
}

int optical_depth(const MeshTopology &topology, const MeshProgram &program, int from_port,
                  int to_port) {
    const PathTrace trace = trace_path(topology, program, from_port);
    if (trace.exit_port != to_port) {
        throw InvalidArgument("optical_depth: no dominant path from " +
                              topology.port_label(from_port) + " to " +
                              topology.port_label(to_port) + " (it exits at " +
                              topology.port_label(trace.exit_port) + ")");
    }
    return trace.beamsplitters_crossed;
}

}  // namespace bricksim
