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

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>

#include "bricksim/compile.hpp"
#include "bricksim/errors.hpp"
#include "bricksim/temporal.hpp"

namespace bricksim {

namespace {

std::optional<MeshCavity> place_cavity(const MeshTopology &topology, int buls,
                                       const std::set<int> &used) {
    for (const auto &loop : find_cavities(topology, buls, used)) {
        std::set<int> blocked = used;
        for (const Hop &h : loop) blocked.insert(h.tbu);
        for (const Hop &c : loop) {
            // The bus uses the two coupler ports the loop leaves free.
            const Hop bus_hop{c.tbu, 4 * c.tbu + ((c.in_port % 4) ^ 1),
                              4 * c.tbu + ((c.out_port % 4) ^ 1)};
            auto in = route_from_boundary(topology, bus_hop.in_port, blocked);
            if (!in) continue;
            std::set<int> blocked_out = blocked;
            for (const Hop &h : *in) blocked_out.insert(h.tbu);
            auto out = route_to_boundary(topology, bus_hop.out_port, blocked_out);
            if (!out) continue;
            MeshCavity cav;
            cav.buls = buls;
            cav.loop = loop;
            cav.coupler_tbu = c.tbu;
            cav.bus = *in;
            cav.bus.push_back(bus_hop);
            cav.bus.insert(cav.bus.end(), out->begin(), out->end());
            cav.bus_in_port = cav.bus.front().in_port;
            cav.bus_out_port = cav.bus.back().out_port;
            cav.bus_in_index = topology.external_index(cav.bus_in_port);
            cav.bus_out_index = topology.external_index(cav.bus_out_port);
            return cav;
        }
    }
    return std::nullopt;
}

}  // namespace

MeshLoopProgram mesh_loop_program(const MeshTopology &topology, double mzi_length_m,
                                  double group_index, int large_buls, double coupler_offset) {
    if (large_buls < 6 || large_buls % 2 != 0) {
        throw InvalidArgument("mesh_loop_program: the larger loop needs an even length >= 6 BULs");
    }
    if (!(std::isfinite(coupler_offset) && coupler_offset > 0.0 && coupler_offset < kPi / 2)) {
        throw InvalidArgument("mesh_loop_program: coupler offset must lie in (0, pi/2)");
    }
    const double transit = cavity_metrics(mzi_length_m, group_index, 4).round_trip_time_s / 4.0;

    MeshLoopProgram out;
    std::set<int> used;
    auto claim = [&](int buls) {
        auto cav = place_cavity(topology, buls, used);
        if (!cav) {
            throw InvalidArgument("mesh_loop_program: no routable " + std::to_string(buls) +
                                  "-BUL loop in mesh '" + topology.name + "'");
        }
        for (const Hop &h : cav->loop) used.insert(h.tbu);
        for (const Hop &h : cav->bus) used.insert(h.tbu);
        cav->round_trip_s = cavity_metrics(mzi_length_m, group_index, buls).round_trip_time_s;
        return *cav;
    };
    out.small = claim(4);
    out.large = claim(large_buls);

    MeshProgram &p = out.program;
    p = uniform_program(topology, split_setting());
    for (const MeshCavity *cav : {&out.small, &out.large}) {
        apply_route(p, cav->loop);
        apply_route(p, cav->bus);
        const Hop *coupler = nullptr;
        for (const Hop &h : cav->loop) {
            if (h.tbu == cav->coupler_tbu) coupler = &h;
        }
        p.settings[cav->coupler_tbu] =
            setting_for_delta(hop_is_bar(*coupler) ? kPi / 2 - coupler_offset : coupler_offset);
    }
    for (std::size_t l = 0; l < topology.links.size(); ++l) {
        const Link &link = topology.links[l];
        const double len = 0.5 * (topology.tbus[link.a / 4].length_bul +
                                  topology.tbus[link.b / 4].length_bul);
        p.segments[static_cast<int>(l)] = {link.phase, len * transit};
    }
    return out;
}

}  // namespace bricksim
