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

// Bar/cross routing on a mesh: waveguide paths and closed loops built from
// TBUs used as switches. A path is a list of hops, each entering a TBU on one
// side and leaving on the other; the pair of slots fixes the TBU state.

#ifndef BRICKSIM_ROUTING_HPP
#define BRICKSIM_ROUTING_HPP

#include <optional>
#include <set>
#include <vector>

#include "bricksim/mesh.hpp"

namespace bricksim {

struct Hop {
    int tbu = 0;
    int in_port = 0;   // global port where the light enters
    int out_port = 0;  // global port where it leaves
};

/// True when the hop keeps the waveguide index (a0 <-> b0 or a1 <-> b1).
bool hop_is_bar(const Hop &hop);

/// Bar or cross setting realizing the hop.
GateSetting hop_setting(const Hop &hop);

/// Writes hop_setting for every hop into the program.
void apply_route(MeshProgram &program, const std::vector<Hop> &hops);

/// Scattering amplitude of one hop under the program.
Complex hop_amplitude(const MeshTopology &topology, const MeshProgram &program, const Hop &hop);

struct RouteGoal {
    /// Stop on entering this port (its TBU may be blocked), or -1.
    int enter_port = -1;
    /// Stop on leaving the mesh: any external port when true and
    /// exit_port == -1, otherwise only exit_port.
    bool leave_mesh = false;
    int exit_port = -1;
};

/// Fewest-hop route for light entering the mesh at `entry_port` (a TBU port;
/// an external port for mesh inputs). TBUs in `blocked` are never crossed.
/// Returns nullopt if no route exists. Leaving through an external port in
/// `blocked_exits` is not allowed.
std::optional<std::vector<Hop>> find_route(const MeshTopology &topology, int entry_port,
                                           const RouteGoal &goal, const std::set<int> &blocked,
                                           const std::set<int> &blocked_exits = {});

/// Route bringing light from the mesh boundary into TBU port `port`
/// (ending with light entering there). Empty when `port` is itself external.
std::optional<std::vector<Hop>> route_from_boundary(const MeshTopology &topology, int port,
                                                    const std::set<int> &blocked);

/// Route taking light that leaves a TBU through `port` out of the mesh.
/// Empty when `port` is itself external.
std::optional<std::vector<Hop>> route_to_boundary(const MeshTopology &topology, int port,
                                                  const std::set<int> &blocked);

/// Closed bar/cross loops of exactly `length_bul`, each TBU used once and
/// none from `blocked`. Each physical loop is reported once, starting at its
/// lowest TBU id entered on side A. At most `limit` loops are returned.
std::vector<std::vector<Hop>> find_cavities(const MeshTopology &topology, double length_bul,
                                            const std::set<int> &blocked = {},
                                            std::size_t limit = 1000);

/// Sum of the TBU lengths along a route or loop.
double route_length_bul(const MeshTopology &topology, const std::vector<Hop> &hops);

}  // namespace bricksim

#endif  // BRICKSIM_ROUTING_HPP
