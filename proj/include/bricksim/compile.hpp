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

// Steady-state compilation of a programmed mesh.
//
// Ports split into external (E) and linked/internal (I). With o the outbound
// and i the inbound mode amplitudes, the TBUs give o = S i and the links give
// i_I = P o_I, where P swaps the two ends of each link and applies its phase
// e^{i(phase + 2 pi nu delay)}. Eliminating the internal modes:
//
//   U = A + B (I - D)^{-1} C,   A = S_EE, B = S_EI, C = P S_IE, D = P S_II.
//
// U(r, c) is the amplitude from external port c (inbound) to external port r
// (outbound), both indexed in topology.external_ports order.

#ifndef BRICKSIM_COMPILE_HPP
#define BRICKSIM_COMPILE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bricksim/linops.hpp"
#include "bricksim/mesh.hpp"

namespace bricksim {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Reciprocal condition number below which (I - D) counts as singular.
inline constexpr double kSingularRcond = 1e-12;

struct BlockRelations {
    ComplexMatrix a, b, c, d;
    std::vector<int> external_ports;  // rows of A and B, columns of A and C
    std::vector<int> internal_ports;  // order of the internal blocks
    std::vector<double> delays_s;     // link delay feeding each internal row
};

struct CompiledUnitary {
    ComplexMatrix unitary;
    std::vector<std::string> port_order;
    std::vector<int> ports;
    std::optional<double> frequency_hz;
};

struct SpectralSweep {
    std::vector<double> frequencies;
    std::vector<Complex> responses;  // NaN where the point failed
    std::vector<std::size_t> failed;
    std::vector<std::string> failure_messages;
};

struct CavityMetrics {
    double round_trip_time_s = 0.0;
    double fsr_hz = 0.0;
};

BlockRelations assemble_block_relations(const MeshTopology &topology, const MeshProgram &program,
                                        std::optional<double> frequency_hz = std::nullopt);

/// Throws SingularFeedback (listing the resonant port cycle) when the
/// reciprocal condition estimate of I - D falls below kSingularRcond.
CompiledUnitary compile_mesh(const MeshTopology &topology, const MeshProgram &program,
                             std::optional<double> frequency_hz = std::nullopt);

/// Response U(nu)[out_index, in_index] over the grid. Points that hit
/// SingularFeedback are recorded in `failed` and the sweep continues.
/// Frequencies are evaluated on worker threads; results keep grid order.
SpectralSweep spectral_sweep(const MeshTopology &topology, const MeshProgram &program,
                             int in_index, int out_index, const std::vector<double> &freq_grid);

/// points evenly spaced values from start to stop inclusive.
std::vector<double> linear_frequency_grid(double start, double stop, int points);

/// Spacing of the group-delay peaks of a sweep, i.e. the free spectral range
/// of the dominant loop. Throws DegenerateResult with fewer than two peaks.
double estimate_fsr(const SpectralSweep &sweep);

/// round trip = group_index * buls * mzi_length / c, fsr = 1 / round trip.
/// buls must be even and >= 4.
CavityMetrics cavity_metrics(double mzi_length_m, double group_index, int buls);

}  // namespace bricksim

#endif  // BRICKSIM_COMPILE_HPP
