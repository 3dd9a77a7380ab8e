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

#include "bricksim/compile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "bricksim/errors.hpp"
#include "parallel.hpp"

namespace bricksim {

BlockRelations assemble_block_relations(const MeshTopology &topology, const MeshProgram &program,
                                        std::optional<double> frequency_hz) {
    require_valid_program(topology, program);
    if (frequency_hz && !std::isfinite(*frequency_hz)) {
        throw InvalidArgument("frequency must be finite");
    }
    const int ports = topology.port_count();
    BlockRelations r;
    r.external_ports = topology.external_ports;
    std::vector<int> slot(ports, -1);  // position within E or I
    for (std::size_t k = 0; k < r.external_ports.size(); ++k) slot[r.external_ports[k]] = k;
    for (int p = 0; p < ports; ++p) {
        if (topology.link_of_port[p] >= 0) {
            slot[p] = static_cast<int>(r.internal_ports.size());
            r.internal_ports.push_back(p);
        }
    }
    const Index ne = static_cast<Index>(r.external_ports.size());
    const Index ni = static_cast<Index>(r.internal_ports.size());
    ComplexMatrix see = ComplexMatrix::Zero(ne, ne);
    ComplexMatrix sei = ComplexMatrix::Zero(ne, ni);
    ComplexMatrix sie = ComplexMatrix::Zero(ni, ne);
    ComplexMatrix sii = ComplexMatrix::Zero(ni, ni);
    for (const Tbu &t : topology.tbus) {
        const ComplexMatrix s = tbu_scattering(t.kind, program.settings.at(t.id));
        for (int o = 0; o < 4; ++o) {
            const int po = 4 * t.id + o;
            const bool o_ext = topology.link_of_port[po] < 0;
            for (int i = 0; i < 4; ++i) {
                if (s(o, i) == Complex(0.0, 0.0)) continue;
                const int pi = 4 * t.id + i;
                const bool i_ext = topology.link_of_port[pi] < 0;
                if (o_ext && i_ext) see(slot[po], slot[pi]) = s(o, i);
                if (o_ext && !i_ext) sei(slot[po], slot[pi]) = s(o, i);
                if (!o_ext && i_ext) sie(slot[po], slot[pi]) = s(o, i);
                if (!o_ext && !i_ext) sii(slot[po], slot[pi]) = s(o, i);
            }
        }
    }
    // P: the inbound mode at one end of a link is the outbound mode at the
    // other end times the segment factor. Applied as a row gather.
    std::vector<Index> source(ni);
    std::vector<Complex> factor(ni);
    r.delays_s.resize(ni);
    for (Index k = 0; k < ni; ++k) {
        const int p = r.internal_ports[k];
        const int l = topology.link_of_port[p];
        const SegmentSetting seg = link_setting(topology, program, l);
        double phase = seg.phase;
        if (frequency_hz) phase += 2.0 * kPi * (*frequency_hz) * seg.delay_s;
        r.delays_s[k] = seg.delay_s;
        source[k] = slot[topology.partner(p)];
        factor[k] = std::polar(1.0, phase);
    }
    r.a = std::move(see);
    r.b = std::move(sei);
    r.c.resize(ni, ne);
    r.d.resize(ni, ni);
    for (Index k = 0; k < ni; ++k) {
        r.c.row(k) = factor[k] * sie.row(source[k]);
        r.d.row(k) = factor[k] * sii.row(source[k]);
    }
    return r;
}

namespace {

// Ports carrying the (near) unit-eigenvalue mode of D, in propagation order.
std::vector<std::string> resonant_cycle(const MeshTopology &topology, const BlockRelations &r) {
    std::vector<std::string> cycle;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(r.d);
    if (es.info() != Eigen::Success) return cycle;
    Index best = 0;
    for (Index k = 1; k < es.eigenvalues().size(); ++k) {
        if (std::abs(es.eigenvalues()(k) - 1.0) < std::abs(es.eigenvalues()(best) - 1.0)) best = k;
    }
    const ComplexVector v = es.eigenvectors().col(best);
    const double vmax = v.cwiseAbs().maxCoeff();
    std::set<Index> support;
    for (Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-6 * vmax) support.insert(k);
    }
    if (support.empty()) return cycle;
    Index start = 0;
    v.cwiseAbs().maxCoeff(&start);
    std::set<Index> seen;
    Index cur = start;
    while (seen.insert(cur).second) {
        cycle.push_back(topology.port_label(r.internal_ports[cur]));
        Index next = -1;
        double weight = 0.0;
        for (Index j : support) {
            const double w = std::abs(r.d(j, cur) * v(cur));
            if (w > weight) {
                weight = w;
                next = j;
            }
        }
        if (next < 0) break;
        cur = next;
    }
    return cycle;
}

}  // namespace

CompiledUnitary compile_mesh(const MeshTopology &topology, const MeshProgram &program,
                             std::optional<double> frequency_hz) {
    const BlockRelations r = assemble_block_relations(topology, program, frequency_hz);
    CompiledUnitary out;
    out.ports = r.external_ports;
    for (int p : r.external_ports) out.port_order.push_back(topology.port_label(p));
    out.frequency_hz = frequency_hz;
    const Index ni = r.d.rows();
    if (ni == 0) {
        out.unitary = r.a;
        return out;
    }
    const ComplexMatrix lhs = ComplexMatrix::Identity(ni, ni) - r.d;
    Eigen::PartialPivLU<ComplexMatrix> lu(lhs);
    const double rcond = lu.rcond();
    if (!(rcond >= kSingularRcond)) {
        std::vector<std::string> cycle = resonant_cycle(topology, r);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", rcond);
        std::string msg = std::string("singular feedback: I - D has reciprocal condition ") + buf +
                          " (resonant lossless loop)";
        if (!cycle.empty()) {
            msg += "; cycle:";
            for (const auto &c : cycle) msg += " " + c;
        }
        throw SingularFeedback(msg, std::move(cycle), rcond > 0 ? 1.0 / rcond
                                                               : std::numeric_limits<double>::infinity());
    }
    out.unitary = r.a + r.b * lu.solve(r.c);
    if (!all_finite(out.unitary)) {
        throw SingularFeedback("singular feedback: non-finite compiled matrix", {},
                               std::numeric_limits<double>::infinity());
    }
    return out;
}

SpectralSweep spectral_sweep(const MeshTopology &topology, const MeshProgram &program,
                             int in_index, int out_index, const std::vector<double> &freq_grid) {
    const int m = topology.mode_count();
    if (in_index < 0 || in_index >= m || out_index < 0 || out_index >= m) {
        throw InvalidArgument("spectral_sweep: port index out of range 0.." + std::to_string(m - 1));
    }
    const BlockRelations base = assemble_block_relations(topology, program);
    SpectralSweep sweep;
    sweep.frequencies = freq_grid;
    const std::size_t n = freq_grid.size();
    sweep.responses.assign(n, Complex(std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN()));
    std::vector<std::string> errors(n);
    const Index ni = base.d.rows();
    // Only the rows of C and D carry the frequency, so each point rescales
    // them and solves for the one column that is needed.
    detail::parallel_for(n, [&](std::size_t k) {
        Complex value = base.a(out_index, in_index);
        if (ni > 0) {
            const double nu = freq_grid[k];
            if (!std::isfinite(nu)) {
                errors[k] = "frequency must be finite";
                return;
            }
            ComplexMatrix lhs = -base.d;
            ComplexVector rhs = base.c.col(in_index);
            for (Index row = 0; row < ni; ++row) {
                const Complex f = std::polar(1.0, 2.0 * kPi * nu * base.delays_s[row]);
                lhs.row(row) *= f;
                rhs(row) *= f;
            }
            lhs.diagonal().array() += 1.0;
            Eigen::PartialPivLU<ComplexMatrix> lu(lhs);
            if (!(lu.rcond() >= kSingularRcond)) {
                try {
                    compile_mesh(topology, program, nu);
                    errors[k] = "singular feedback";
                } catch (const SingularFeedback &e) {
                    errors[k] = e.what();
                }
                return;
            }
            const ComplexVector x = lu.solve(rhs);
            value += base.b.row(out_index).transpose().cwiseProduct(x).sum();
        }
        sweep.responses[k] = value;
    });
    for (std::size_t k = 0; k < n; ++k) {
        if (!errors[k].empty()) {
            sweep.failed.push_back(k);
            sweep.failure_messages.push_back(errors[k]);
        }
    }
    return sweep;
}

std::vector<double> linear_frequency_grid(double start, double stop, int points) {
    if (points < 1 || !std::isfinite(start) || !std::isfinite(stop)) {
        throw InvalidArgument("frequency grid needs finite bounds and >= 1 point");
    }
    std::vector<double> grid(points);
    for (int k = 0; k < points; ++k) {
        grid[k] = points == 1 ? start : start + (stop - start) * k / (points - 1);
    }
    return grid;
}

double estimate_fsr(const SpectralSweep &sweep) {
    const std::size_t n = sweep.frequencies.size();
    if (n < 5) throw DegenerateResult("estimate_fsr: sweep too short");
    // Phase step between neighbouring points; its magnitude peaks at each
    // resonance where the group delay is largest.
    std::vector<double> step(n - 1, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Complex a = sweep.responses[k];
        const Complex b = sweep.responses[k + 1];
        if (!std::isfinite(a.real()) || !std::isfinite(b.real()) || std::abs(a) < 1e-300 ||
            std::abs(b) < 1e-300) {
            continue;
        }
        step[k] = std::abs(std::arg(b / a));
    }
    const double top = *std::max_element(step.begin(), step.end());
    std::vector<double> sorted = step;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    if (top < 1e-9 || top < 2.0 * median) {
        throw DegenerateResult("estimate_fsr: no resonances in the sweep");
    }
    const double threshold = 0.5 * (top + median);
    std::vector<double> peaks;
    for (std::size_t k = 0; k < step.size(); ++k) {
        if (step[k] < threshold) continue;
        const double left = k > 0 ? step[k - 1] : -1.0;
        const double right = k + 1 < step.size() ? step[k + 1] : -1.0;
        if (step[k] < left || step[k] <= right) continue;
        double offset = 0.0;
        if (left >= 0.0 && right >= 0.0) {
            const double denom = left - 2.0 * step[k] + right;
            if (denom < 0.0) offset = 0.5 * (left - right) / denom;
        }
        const double df = sweep.frequencies[k + 1] - sweep.frequencies[k];
        peaks.push_back(0.5 * (sweep.frequencies[k] + sweep.frequencies[k + 1]) + offset * df);
    }
    if (peaks.size() < 2) {
        throw DegenerateResult("estimate_fsr: fewer than two resonances in the sweep");
    }
    return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

CavityMetrics cavity_metrics(double mzi_length_m, double group_index, int buls) {
    if (!(std::isfinite(mzi_length_m) && mzi_length_m > 0.0)) {
        throw InvalidArgument("cavity_metrics: MZI length must be positive");
    }
    if (!(std::isfinite(group_index) && group_index >= 1.0)) {
        throw InvalidArgument("cavity_metrics: group index must be >= 1");
    }
    if (buls < 4 || buls % 2 != 0) {
        throw InvalidArgument("cavity_metrics: cavities are 4, 6, 8, ... BULs, got " +
                              std::to_string(buls));
    }
    CavityMetrics m;
    m.round_trip_time_s = group_index * buls * mzi_length_m / kSpeedOfLight;
    m.fsr_hz = 1.0 / m.round_trip_time_s;
    return m;
}

}  // namespace bricksim
