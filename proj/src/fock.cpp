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

#include "bricksim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>

#include "bricksim/errors.hpp"

namespace bricksim {

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double factorial_product(const OccupationVector &v) {
    double f = 1.0;
    for (int c : v) f *= factorial(c);
    return f;
}

void check_occupation(const OccupationVector &v, const char *who) {
    for (int c : v) {
        if (c < 0) throw InvalidArgument(std::string(who) + ": negative photon count");
    }
}

// Ascending list of modes, mode k repeated v[k] times.
std::vector<Index> mode_list(const OccupationVector &v) {
    std::vector<Index> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        for (int r = 0; r < v[k]; ++r) out.push_back(static_cast<Index>(k));
    }
    return out;
}

void check_pair(const ComplexMatrix &u, const OccupationVector &s, const OccupationVector &v,
                const char *who) {
    if (u.rows() != u.cols()) {
        throw InvalidArgument(std::string(who) + ": unitary must be square");
    }
    const auto m = static_cast<std::size_t>(u.rows());
    if (s.size() != m || v.size() != m) {
        throw InvalidArgument(std::string(who) + ": occupation length must equal the mode count " +
                              std::to_string(m));
    }
    check_occupation(s, who);
    check_occupation(v, who);
    if (total_photons(s) != total_photons(v)) {
        throw InvalidArgument(std::string(who) + ": input has " + std::to_string(total_photons(s)) +
                              " photons, output has " + std::to_string(total_photons(v)));
    }
}

void check_unitary_input(const ComplexMatrix &u, const char *who) {
    const double dev = is_unitary(u).max_deviation;
    if (dev > 1e-3) {
        throw InvalidArgument(std::string(who) + ": matrix is not unitary (deviation " +
                              std::to_string(dev) + ")");
    }
    if (dev > 1e-6) {
        std::cerr << "warning: " << who << ": unitarity deviation " << dev << "\n";
    }
}

// Amplitude matrix: row k = k-th detected output mode, column p = photon p.
ComplexMatrix amplitude_matrix(const ComplexMatrix &u, const OccupationVector &s,
                               const OccupationVector &v) {
    return build_submatrix(u, v, s);
}

double probability_unchecked(const ComplexMatrix &u, const OccupationVector &s,
                             const OccupationVector &v) {
    const ComplexMatrix sub = amplitude_matrix(u, s, v);
    const Complex per = sub.rows() <= 3 ? permanent_naive(sub) : permanent_ryser(sub);
    return clamp_probability(std::norm(per) / (factorial_product(s) * factorial_product(v)));
}

}  // namespace

double OutputDistribution::total() const {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

int total_photons(const OccupationVector &v) { return std::accumulate(v.begin(), v.end(), 0); }

bool is_collision_free(const OccupationVector &v) {
    return std::all_of(v.begin(), v.end(), [](int c) { return c == 0 || c == 1; });
}

std::string format_occupation(const OccupationVector &v, char sep) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out.push_back(sep);
        out += std::to_string(v[k]);
    }
    return out;
}

std::uint64_t count_outputs(int m, int n) {
    if (m < 1 || n < 0) return 0;
    // C(m - 1 + n, n) built incrementally; each partial product is an integer.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t c = 1;
    for (int k = 1; k <= n; ++k) {
        const std::uint64_t top = static_cast<std::uint64_t>(m - 1 + k);
        const std::uint64_t g = std::gcd(c, static_cast<std::uint64_t>(k));
        const std::uint64_t a = c / g;
        const std::uint64_t b = top / (k / g);
        if (a > limit / b) return limit;
        c = a * b;
    }
    return c;
}

std::vector<OccupationVector> enumerate_outputs(int m, int n, std::uint64_t cap) {
    if (m < 1) throw InvalidArgument("enumerate_outputs: m must be >= 1");
    if (n < 0) throw InvalidArgument("enumerate_outputs: n must be >= 0");
    const std::uint64_t count = count_outputs(m, n);
    if (count > cap) throw StateSpaceTooLarge(count, cap);
    std::vector<OccupationVector> out;
    out.reserve(count);
    OccupationVector v(m, 0);
    v[0] = n;
    for (;;) {
        out.push_back(v);
        // Next composition in descending lexicographic order: move one photon
        // from the last nonzero slot before the tail into its right neighbour
        // and gather the tail there.
        int j = m - 2;
        while (j >= 0 && v[j] == 0) --j;
        if (j < 0) break;
        const int tail = v[m - 1];
        v[m - 1] = 0;
        v[j] -= 1;
        v[j + 1] = tail + 1;
    }
    return out;
}

ComplexMatrix build_submatrix(const ComplexMatrix &u, const OccupationVector &rows,
                              const OccupationVector &cols) {
    check_occupation(rows, "build_submatrix");
    check_occupation(cols, "build_submatrix");
    if (total_photons(rows) != total_photons(cols)) {
        throw InvalidArgument("build_submatrix: row total " + std::to_string(total_photons(rows)) +
                              " differs from column total " + std::to_string(total_photons(cols)));
    }
    if (rows.size() != static_cast<std::size_t>(u.rows()) ||
        cols.size() != static_cast<std::size_t>(u.cols())) {
        throw InvalidArgument("build_submatrix: occupation lengths do not match the matrix");
    }
    const std::vector<Index> r = mode_list(rows);
    const std::vector<Index> c = mode_list(cols);
    ComplexMatrix sub(r.size(), c.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) sub(i, j) = u(r[i], c[j]);
    }
    return sub;
}

double clamp_probability(double p) {
    if (p >= 0.0) return p;
    if (p >= -1e-12) return 0.0;
    throw Error("negative probability " + std::to_string(p));
}

double output_probability(const ComplexMatrix &u, const OccupationVector &s,
                          const OccupationVector &v) {
    check_pair(u, s, v, "output_probability");
    check_unitary_input(u, "output_probability");
    return probability_unchecked(u, s, v);
}

OutputDistribution full_distribution(const ComplexMatrix &u, const OccupationVector &s,
                                     std::uint64_t cap) {
    check_pair(u, s, s, "full_distribution");
    check_unitary_input(u, "full_distribution");
    OutputDistribution dist;
    dist.outcomes = enumerate_outputs(static_cast<int>(u.rows()), total_photons(s), cap);
    dist.probabilities.reserve(dist.outcomes.size());
    for (const auto &v : dist.outcomes) dist.probabilities.push_back(probability_unchecked(u, s, v));
    return dist;
}

std::vector<OccupationVector> sample(const ComplexMatrix &u, const OccupationVector &s,
                                     std::uint64_t count, std::uint64_t seed,
                                     std::uint64_t cap) {
    const OutputDistribution dist = full_distribution(u, s, cap);
    std::vector<double> cdf(dist.probabilities.size());
    std::partial_sum(dist.probabilities.begin(), dist.probabilities.end(), cdf.begin());
    const double total = cdf.empty() ? 0.0 : cdf.back();
    if (!(total > 0.0)) throw DegenerateResult("sample: distribution has zero total weight");
    std::mt19937_64 rng(seed);
    std::vector<OccupationVector> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
        // Zero-probability outcomes share their predecessor's CDF value and
        // can never be selected by upper_bound.
        if (it == cdf.end()) it = std::prev(cdf.end());
        out.push_back(dist.outcomes[static_cast<std::size_t>(it - cdf.begin())]);
    }
    return out;
}

double distinguishable_probability(const ComplexMatrix &u, const OccupationVector &s,
                                   const OccupationVector &v) {
    check_pair(u, s, v, "distinguishable_probability");
    check_unitary_input(u, "distinguishable_probability");
    const Eigen::MatrixXd weights = amplitude_matrix(u, s, v).cwiseAbs2();
    return clamp_probability(permanent_ryser_real(weights) / factorial_product(v));
}

void validate_gram(const GramMatrix &g, int n) {
    if (g.rows() != n || g.cols() != n) {
        throw InvalidArgument("gram matrix must be " + std::to_string(n) + "x" + std::to_string(n) +
                              ", got " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
    }
    for (Index i = 0; i < n; ++i) {
        if (std::abs(g(i, i) - Complex(1.0, 0.0)) > 1e-10) {
            throw InvalidArgument("gram matrix diagonal must be 1");
        }
        for (Index j = 0; j < n; ++j) {
            if (std::abs(g(i, j) - std::conj(g(j, i))) > 1e-10) {
                throw InvalidArgument("gram matrix must be Hermitian");
            }
        }
    }
    if (n > 0) {
        const ComplexMatrix h = 0.5 * (g + g.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10) {
            throw InvalidArgument("gram matrix must be positive semidefinite");
        }
    }
}

double partial_probability(const ComplexMatrix &u, const OccupationVector &s,
                           const OccupationVector &v, const GramMatrix &g) {
    check_pair(u, s, v, "partial_probability");
    if (!is_collision_free(s)) {
        throw InvalidArgument("partial_probability: input must be collision-free");
    }
    const int n = total_photons(s);
    if (n > kPartialMaxN) {
        throw InvalidArgument("partial_probability: n = " + std::to_string(n) + " exceeds " +
                              std::to_string(kPartialMaxN));
    }
    validate_gram(g, n);
    check_unitary_input(u, "partial_probability");
    const ComplexMatrix a = amplitude_matrix(u, s, v);  // a(k, p)
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    std::vector<Complex> forward(perms.size());
    for (std::size_t x = 0; x < perms.size(); ++x) {
        Complex prod(1.0, 0.0);
        for (int k = 0; k < n; ++k) prod *= a(k, perms[x][k]);
        forward[x] = prod;
    }
    Complex total(0.0, 0.0);
    for (std::size_t x = 0; x < perms.size(); ++x) {
        for (std::size_t y = 0; y < perms.size(); ++y) {
            Complex overlap(1.0, 0.0);
            for (int k = 0; k < n; ++k) overlap *= g(perms[x][k], perms[y][k]);
            total += overlap * forward[x] * std::conj(forward[y]);
        }
    }
    return clamp_probability(total.real() / factorial_product(v));
}

}  // namespace bricksim
