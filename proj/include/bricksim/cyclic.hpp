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

// Cyclic interferometer (CI) on m = 2n modes.
//
// Modes are 0-indexed here; the "odd" modes of the usual 1-indexed labelling
// are the even indices 0, 2, 4, ... The circuit is
//
//   U = L * P * D * L
//
// with L a layer of bs_matrix() on pairs (2k, 2k+1), D the internal phase and
// P the cyclic arm permutation returned by ci_arm_permutation(). Each pair's
// upper arm is sent forward around the cycle and its lower arm backward, so
// pair k interferes with both of its neighbours and pair n closes the ring
// with pair 1.

#ifndef BRICKSIM_CYCLIC_HPP
#define BRICKSIM_CYCLIC_HPP

#include <optional>
#include <vector>

#include "bricksim/fock.hpp"
#include "bricksim/linops.hpp"

namespace bricksim {

enum class PhasePlacement {
    /// Whole phase on arm 1 (the lower arm of the first pair).
    kSingleInternal,
    /// +phase/(2n) on every upper arm and -phase/(2n) on every lower arm, so
    /// the summed odd-minus-even phase equals `phase`.
    kLayer4Difference,
};

struct CiConfig {
    int n = 3;
    double phase = 0.0;
    PhasePlacement placement = PhasePlacement::kSingleInternal;
};

struct CiOutcome {
    OccupationVector input;
    OccupationVector output;
    int p = 0;  // occupied odd-indexed (1-indexed even) input modes
    int q = 0;  // occupied odd-indexed (1-indexed even) output modes
};

struct FringeScan {
    std::vector<double> phases;
    std::vector<double> probabilities;
    double visibility = 0.0;  // NaN when max + min vanishes
};

/// perm[a] = output position of arm a after the first beam-splitter layer.
std::vector<int> ci_arm_permutation(int n);

ComplexMatrix build_ci_unitary(const CiConfig &config);

/// One photon in each of modes 0, 2, ..., 2n-2.
OccupationVector ci_canonical_input(int n);

/// Outcome for the canonical input and the given 0-indexed output modes.
CiOutcome make_ci_outcome(int n, const std::vector<int> &output_modes);

/// Outcome with explicit occupations; p and q are derived.
CiOutcome make_ci_outcome(const OccupationVector &input, const OccupationVector &output);

/// 1/2^(2n-1) * (1 + (-1)^(n+p+q) cos phi).
double ci_probability_formula(int n, int p, int q, double phi);

/// output_probability on build_ci_unitary(config).
double ci_exact_probability(const CiConfig &config, const CiOutcome &outcome);

/// False when the outcome's amplitude vanishes for every phase.
bool ci_outcome_reachable(int n, const CiOutcome &outcome);

/// Collision-free outcomes of the canonical input that are reachable.
std::vector<CiOutcome> ci_reachable_outcomes(int n);

/// points equally spaced phases 2 pi k / points.
std::vector<double> uniform_phase_grid(int points);

/// Probability of `outcome` at every phase of the grid, using the ideal
/// permanent law or, when g is given, partial_probability with that Gram
/// matrix. config.phase is ignored.
FringeScan fringe_scan(const CiConfig &config, const CiOutcome &outcome,
                       const std::vector<double> &phi_grid,
                       const std::optional<GramMatrix> &g = std::nullopt);

/// (max - min) / (max + min); throws DegenerateResult when max + min <= 1e-14.
double fringe_visibility(const std::vector<double> &probabilities);

/// The fringe visibility, taken as the genuine-indistinguishability
/// observable. Throws DegenerateResult for an all-zero scan.
double gi_report(const FringeScan &scan);

}  // namespace bricksim

#endif  // BRICKSIM_CYCLIC_HPP
