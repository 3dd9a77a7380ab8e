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

// Fock-state combinatorics, permanents and exact boson sampling.
//
// Amplitude convention: u(o, i) is the single-photon amplitude from input
// mode i to output mode o (see linops.hpp). The n-photon amplitude from s to
// v is therefore the permanent of the matrix whose rows are picked from u by
// v and whose columns are picked by s. The probability functions below take
// care of this; build_submatrix itself is literal (rows from its first
// occupation argument) so callers can pick either orientation.

#ifndef BRICKSIM_FOCK_HPP
#define BRICKSIM_FOCK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bricksim/linops.hpp"

namespace bricksim {

/// Photon count per mode.
using OccupationVector = std::vector<int>;

/// n x n Hermitian overlap matrix G(i, j) = <psi_i|psi_j> of the internal
/// states of the input photons, photons ordered by ascending input mode.
using GramMatrix = ComplexMatrix;

inline constexpr std::uint64_t kDefaultStateCap = 2'000'000;

/// Largest n accepted by permanent_naive.
inline constexpr int kNaivePermanentMaxN = 8;
/// Largest n accepted by partial_probability.
inline constexpr int kPartialMaxN = 6;

struct OutputDistribution {
    std::vector<OccupationVector> outcomes;
    std::vector<double> probabilities;

    double total() const;
};

int total_photons(const OccupationVector &v);
bool is_collision_free(const OccupationVector &v);
/// "a;b;c" rendering used by the CSV outputs.
std::string format_occupation(const OccupationVector &v, char sep = ';');

/// C(m + n - 1, n), saturating at UINT64_MAX.
std::uint64_t count_outputs(int m, int n);

/// All ways to place n photons in m modes, in descending lexicographic order
/// (n, 0, ..., 0) first. Throws StateSpaceTooLarge when the count exceeds cap.
std::vector<OccupationVector> enumerate_outputs(int m, int n,
                                                std::uint64_t cap = kDefaultStateCap);

/// n x n matrix with row r of u repeated rows[r] times and column c repeated
/// cols[c] times, both in ascending mode order.
ComplexMatrix build_submatrix(const ComplexMatrix &u, const OccupationVector &rows,
                              const OccupationVector &cols);

/// Sum over all permutations; O(n * n!). n <= kNaivePermanentMaxN.
Complex permanent_naive(const ComplexMatrix &b);

/// Ryser's formula with Gray-code subset updates, O(n 2^n). The subset range
/// is cut into a fixed number of chunks that depends only on n; chunks run on
/// up to BRICKSIM_THREADS worker threads and their partial sums are added in
/// chunk order, so the result is bit-identical for any thread count.
Complex permanent_ryser(const ComplexMatrix &b);

/// Same as permanent_ryser for the real matrices of the distinguishable case.
double permanent_ryser_real(const Eigen::MatrixXd &b);

/// |Per|^2 / (prod s_i! prod v_i!). u must be unitary: deviations above 1e-6
/// print a warning to stderr, above 1e-3 throw.
double output_probability(const ComplexMatrix &u, const OccupationVector &s,
                          const OccupationVector &v);

/// Probabilities of every output with the same photon number as s.
OutputDistribution full_distribution(const ComplexMatrix &u, const OccupationVector &s,
                                     std::uint64_t cap = kDefaultStateCap);

/// count i.i.d. draws by inverse CDF over full_distribution, driven by
/// mt19937_64(seed).
std::vector<OccupationVector> sample(const ComplexMatrix &u, const OccupationVector &s,
                                     std::uint64_t count, std::uint64_t seed,
                                     std::uint64_t cap = kDefaultStateCap);

/// Classical transfer probability of labelled photons: Per(|M|^2) / prod v_i!.
double distinguishable_probability(const ComplexMatrix &u, const OccupationVector &s,
                                   const OccupationVector &v);

/// Throws InvalidArgument unless g is n x n, Hermitian, unit-diagonal and
/// positive semidefinite (all within 1e-10).
void validate_gram(const GramMatrix &g, int n);

/// Probability for partially distinguishable photons described by g:
/// sum over sigma, tau of prod_k g(sigma_k, tau_k) a(sigma_k, k) conj(a(tau_k, k))
/// divided by prod v_i!, where a(p, k) is the amplitude from photon p's input
/// mode to the k-th detected output. s must be collision-free, n <= 6.
double partial_probability(const ComplexMatrix &u, const OccupationVector &s,
                           const OccupationVector &v, const GramMatrix &g);

/// Clamp tiny negative roundoff to zero; throw below -1e-12.
double clamp_probability(double p);

}  // namespace bricksim

#endif  // BRICKSIM_FOCK_HPP
