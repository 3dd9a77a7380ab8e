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

#include "bricksim/routing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>

#include "bricksim/errors.hpp"

namespace bricksim {

namespace {

// Exit slots on the opposite side of an entry slot.
std::array<int, 2> exits_for(int slot) {
    if (slot < 2) return {kB0, kB1};
    return {kA0, kA1};
}

}  // namespace

bool hop_is_bar(const Hop &hop) { return (hop.in_port % 2) == (hop.out_port % 2); }

GateSetting hop_setting(const Hop &hop) { return hop_is_bar(hop) ? bar_setting() : cross_setting(); }

void apply_route(MeshProgram &program, const std::vector<Hop> &hops) {
    for (const Hop &h : hops) program.settings[h.tbu] = hop_setting(h);
}

Complex hop_amplitude(const MeshTopology &topology, const MeshProgram &program, const Hop &hop) {
    const Tbu &t = topology.tbus.at(hop.tbu);
    const ComplexMatrix s = tbu_scattering(t.kind, program.settings.at(hop.tbu));
    return s(hop.out_port % 4, hop.in_port % 4);
}

std::optional<std::vector<Hop>> find_route(const MeshTopology &topology, int entry_port,
                                           const RouteGoal &goal, const std::set<int> &blocked,
                                           const std::set<int> &blocked_exits) {
    if (entry_port < 0 || entry_port >= topology.port_count()) {
        throw InvalidArgument("find_route: entry port out of range");
    }
    if (goal.enter_port < 0 && !goal.leave_mesh) {
        throw InvalidArgument("find_route: goal needs an entry port or leave_mesh");
    }
    // Breadth-first over entry ports. A TBU is expanded at most once, which
    // keeps every returned route free of repeated TBUs.
    std::map<int, Hop> came_from;  // entry port -> hop that led to it
    std::set<int> expanded;
    std::deque<int> queue{entry_port};
    std::set<int> queued{entry_port};
    auto unwind = [&](int port, std::optional<Hop> last) {
        std::vector<Hop> hops;
        if (last) hops.push_back(*last);
        while (port != entry_port) {
            const Hop &h = came_from.at(port);
            hops.push_back(h);
            port = h.in_port;
        }
        std::reverse(hops.begin(), hops.end());
        return hops;
    };
    while (!queue.empty()) {
        const int in = queue.front();
        queue.pop_front();
        if (in == goal.enter_port) return unwind(in, std::nullopt);
        const int t = in / 4;
        if (blocked.count(t) || !expanded.insert(t).second) continue;
        for (int slot : exits_for(in % 4)) {
            const int out = 4 * t + slot;
            const Hop hop{t, in, out};
            const int next = topology.partner(out);
            if (next < 0) {
                const bool wanted = goal.leave_mesh && !blocked_exits.count(out) &&
                                    (goal.exit_port < 0 || goal.exit_port == out);
                if (wanted) return unwind(in, hop);
                continue;
            }
            if (queued.insert(next).second) {
                came_from[next] = hop;
                queue.push_back(next);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Hop>> route_from_boundary(const MeshTopology &topology, int port,
                                                    const std::set<int> &blocked) {
    const int outside = topology.partner(port);
    if (outside < 0) return std::vector<Hop>{};
    // Walk outwards and reverse; hops are reciprocal.
    auto out = find_route(topology, outside, RouteGoal{-1, true, -1}, blocked);
    if (!out) return std::nullopt;
    std::vector<Hop> hops;
    for (auto it = out->rbegin(); it != out->rend(); ++it) hops.push_back({it->tbu, it->out_port, it->in_port});
    return hops;
}

std::optional<std::vector<Hop>> route_to_boundary(const MeshTopology &topology, int port,
                                                  const std::set<int> &blocked) {
    const int next = topology.partner(port);
    if (next < 0) return std::vector<Hop>{};
    return find_route(topology, next, RouteGoal{-1, true, -1}, blocked);
}

namespace {

struct CavitySearch {
    const MeshTopology &topology;
    double target;
    const std::set<int> &blocked;
    std::size_t limit;
    int start_tbu = 0;
    int start_port = 0;
    std::vector<Hop> path;
    std::set<int> used;
    std::vector<std::vector<Hop>> found;

    void extend(int in, double length) {
        if (found.size() >= limit) return;
        const int t = in / 4;
        if (t < start_tbu || blocked.count(t) || used.count(t)) return;
        const double len = length + topology.tbus[t].length_bul;
        if (len > target + 1e-9) return;
        used.insert(t);
        for (int slot : exits_for(in % 4)) {
            const int out = 4 * t + slot;
            const int next = topology.partner(out);
            if (next < 0) continue;
            path.push_back({t, in, out});
            if (next == start_port) {
                if (std::abs(len - target) < 1e-9) found.push_back(path);
            } else {
                extend(next, len);
            }
            path.pop_back();
        }
        used.erase(t);
    }
};

}  // namespace

std::vector<std::vector<Hop>> find_cavities(const MeshTopology &topology, double length_bul,
                                            const std::set<int> &blocked, std::size_t limit) {
    CavitySearch search{topology, length_bul, blocked, limit, 0, 0, {}, {}, {}};
    for (const Tbu &t : topology.tbus) {
        for (int slot : {kA0, kA1}) {
            search.start_tbu = t.id;
            search.start_port = 4 * t.id + slot;
            search.extend(search.start_port, 0.0);
        }
    }
    return search.found;
}

double route_length_bul(const MeshTopology &topology, const std::vector<Hop> &hops) {
    double total = 0.0;
    for (const Hop &h : hops) total += topology.tbus.at(h.tbu).length_bul;
    return total;
}

}  // namespace bricksim
