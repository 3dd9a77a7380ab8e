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

#include "bricksim/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bricksim/errors.hpp"

namespace bricksim {

namespace {

void require_n(int n, const char *who) {
    if (n < 2) {
        throw InvalidArgument(std::string(who) + ": n must be >= 2, got " + std::to_string(n));
    }
}

ComplexMatrix bs_layer(int n) {
    ComplexMatrix l = ComplexMatrix::Zero(2 * n, 2 * n);
    const ComplexMatrix b = bs_matrix();
    for (int k = 0; k < n; ++k) l.block(2 * k, 2 * k, 2, 2) = b;
    return l;
}

}  // namespace

std::vector<int> ci_arm_permutation(int n) {
    require_n(n, "ci_arm_permutation");
    // Pairs are 1-indexed in this block. rho reverses the pair order so the
    // ring runs 1 -> n -> n-1 -> ... ; the upper arm of pair k lands on the
    // lower slot of pair rho(k) and the lower arm on the upper slot of
    // pair rho(k - 1).
    auto rho = [n](int j) { return ((n + 1 - j) % n + n) % n + 1; };
    std::vector<int> perm(2 * n);
    for (int k = 1; k <= n; ++k) {
        perm[2 * k - 2] = 2 * rho(k) - 1;
        perm[2 * k - 1] = 2 * rho(k > 1 ? k - 1 : n) - 2;
    }
    if (n % 2 == 1) {
        const int t = rho(n);
        std::vector<int> arms;
        for (int a = 0; a < 2 * n; ++a) {
            if (perm[a] == 2 * t - 2 || perm[a] == 2 * t - 1) arms.push_back(a);
        }
        std::swap(perm[arms[0]], perm[arms[1]]);
    }
    return perm;
}

ComplexMatrix build_ci_unitary(const CiConfig &config) {
    const int n = config.n;
    require_n(n, "build_ci_unitary");
    if (!std::isfinite(config.phase)) throw InvalidArgument("build_ci_unitary: phase is not finite");
    const int m = 2 * n;
    ComplexMatrix d = ComplexMatrix::Identity(m, m);
    if (config.placement == PhasePlacement::kSingleInternal) {
        d(1, 1) = std::polar(1.0, config.phase);
    } else {
        const double share = config.phase / (2.0 * n);
        for (int a = 0; a < m; ++a) d(a, a) = std::polar(1.0, a % 2 == 0 ? share : -share);
    }
    ComplexMatrix p = ComplexMatrix::Zero(m, m);
    const std::vector<int> perm = ci_arm_permutation(n);
    for (int a = 0; a < m; ++a) p(perm[a], a) = 1.0;
    const ComplexMatrix l = bs_layer(n);
    return l * p * d * l;
}

OccupationVector ci_canonical_input(int n) {
    require_n(n, "ci_canonical_input");
    OccupationVector s(2 * n, 0);
    for (int k = 0; k < n; ++k) s[2 * k] = 1;
    return s;
}

CiOutcome make_ci_outcome(int n, const std::vector<int> &output_modes) {
    OccupationVector v(2 * n, 0);
    for (int mode : output_modes) {
        if (mode < 0 || mode >= 2 * n) {
            throw InvalidArgument("make_ci_outcome: output mode " + std::to_string(mode) +
                                  " out of range");
        }
        v[mode] += 1;
    }
    return make_ci_outcome(ci_canonical_input(n), v);
}

CiOutcome make_ci_outcome(const OccupationVector &input, const OccupationVector &output) {
    if (input.size() != output.size() || input.size() % 2 != 0 || input.size() < 4) {
        throw InvalidArgument("make_ci_outcome: occupations must have equal even length >= 4");
    }
    if (total_photons(input) != total_photons(output)) {
        throw InvalidArgument("make_ci_outcome: photon numbers differ");
    }
    CiOutcome o;
    o.input = input;
    o.output = output;
    for (std::size_t k = 1; k < input.size(); k += 2) {
        o.p += input[k] > 0 ? 1 : 0;
        o.q += output[k] > 0 ? 1 : 0;
    }
    return o;
}

double ci_probability_formula(int n, int p, int q, double phi) {
    const double sign = ((n + p + q) % 2 == 0) ? 1.0 : -1.0;
    return (1.0 + sign * std::cos(phi)) / std::ldexp(1.0, 2 * n - 1);
}

namespace {

void check_outcome(const CiConfig &config, const CiOutcome &outcome) {
    const auto m = static_cast<std::size_t>(2 * config.n);
    if (outcome.input.size() != m || outcome.output.size() != m) {
        throw InvalidArgument("ci outcome has " + std::to_string(outcome.output.size()) +
                              " modes, config needs " + std::to_string(m));
    }
    if (total_photons(outcome.input) != config.n || total_photons(outcome.output) != config.n) {
        throw InvalidArgument("ci outcome must carry exactly n = " + std::to_string(config.n) +
                              " photons");
    }
    if (!is_collision_free(outcome.input) || !is_collision_free(outcome.output)) {
        throw InvalidArgument("ci outcome must be collision-free");
    }
}

}  // namespace

double ci_exact_probability(const CiConfig &config, const CiOutcome &outcome) {
    check_outcome(config, outcome);
    return output_probability(build_ci_unitary(config), outcome.input, outcome.output);
}

bool ci_outcome_reachable(int n, const CiOutcome &outcome) {
    CiConfig config{n, 0.0, PhasePlacement::kSingleInternal};
    check_outcome(config, outcome);
    // The amplitude is affine in e^{i phi}; two phases decide whether it is
    // identically zero.
    for (double phi : {0.0, kPi / 2}) {
        config.phase = phi;
        if (ci_exact_probability(config, outcome) > 1e-14) return true;
    }
    return false;
}

std::vector<CiOutcome> ci_reachable_outcomes(int n) {
    require_n(n, "ci_reachable_outcomes");
    std::vector<CiOutcome> out;
    for (const auto &v : enumerate_outputs(2 * n, n)) {
        if (!is_collision_free(v)) continue;
        CiOutcome o = make_ci_outcome(ci_canonical_input(n), v);
        if (ci_outcome_reachable(n, o)) out.push_back(o);
    }
    return out;
}

std::vector<double> uniform_phase_grid(int points) {
    if (points < 1) throw InvalidArgument("phase grid needs at least one point");
    std::vector<double> grid(points);
    for (int k = 0; k < points; ++k) grid[k] = 2.0 * kPi * k / points;
    return grid;
}

double fringe_visibility(const std::vector<double> &probabilities) {
    if (probabilities.empty()) throw DegenerateResult("visibility of an empty scan");
    const auto [lo, hi] = std::minmax_element(probabilities.begin(), probabilities.end());
    const double sum = *hi + *lo;
    if (sum <= 1e-14) {
        throw DegenerateResult("visibility undefined: fringe maximum and minimum are both zero");
    }
    return (*hi - *lo) / sum;
}

FringeScan fringe_scan(const CiConfig &config, const CiOutcome &outcome,
                       const std::vector<double> &phi_grid, const std::optional<GramMatrix> &g) {
    if (phi_grid.empty()) throw InvalidArgument("fringe_scan: phase grid is empty");
    check_outcome(config, outcome);
    if (g && config.n > kPartialMaxN) {
        throw InvalidArgument("fringe_scan: Gram-matrix scans support n <= " +
                              std::to_string(kPartialMaxN));
    }
    FringeScan scan;
    scan.phases = phi_grid;
    scan.probabilities.reserve(phi_grid.size());
    CiConfig c = config;
    for (double phi : phi_grid) {
        c.phase = phi;
        if (g) {
            scan.probabilities.push_back(
                partial_probability(build_ci_unitary(c), outcome.input, outcome.output, *g));
        } else {
            scan.probabilities.push_back(ci_exact_probability(c, outcome));
        }
    }
    try {
        scan.visibility = fringe_visibility(scan.probabilities);
    } catch (const DegenerateResult &) {
        scan.visibility = std::numeric_limits<double>::quiet_NaN();
    }
    return scan;
}

double gi_report(const FringeScan &scan) { return fringe_visibility(scan.probabilities); }

}  // namespace bricksim
