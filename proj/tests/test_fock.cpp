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

#include <cmath>
#include <cstdlib>
#include <map>
#include <random>

#include "bricksim/errors.hpp"
#include "bricksim/fock.hpp"
#include "doctest.h"

using namespace bricksim;

namespace {

ComplexMatrix random_complex(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    ComplexMatrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = Complex(nd(rng), nd(rng));
    return b;
}

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("enumerate_outputs") {
    auto two = enumerate_outputs(2, 1);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == OccupationVector{1, 0});
    CHECK(two[1] == OccupationVector{0, 1});
    auto six = enumerate_outputs(3, 2);
    CHECK(six.size() == 6);
    CHECK(six.front() == OccupationVector{2, 0, 0});
    CHECK(six.back() == OccupationVector{0, 0, 2});
    auto many = enumerate_outputs(6, 3);
    CHECK(many.size() == 56);
    std::map<OccupationVector, int> seen;
    for (const auto &v : many) {
        CHECK(total_photons(v) == 3);
        seen[v]++;
    }
    CHECK(seen.size() == 56);
    for (std::size_t i = 1; i < many.size(); ++i) CHECK(many[i - 1] > many[i]);
    CHECK(count_outputs(30, 10) == 635745396ULL);
    try {
        enumerate_outputs(30, 10);
        FAIL("expected StateSpaceTooLarge");
    } catch (const StateSpaceTooLarge &e) {
        CHECK(e.count() == 635745396ULL);
    }
}

TEST_CASE("build_submatrix") {
    ComplexMatrix u(2, 2);
    u << 1.0, 2.0, 3.0, 4.0;
    CHECK((build_submatrix(u, {1, 1}, {1, 1}) - u).norm() == 0.0);
    ComplexMatrix rep = build_submatrix(u, {2, 0}, {1, 1});
    ComplexMatrix want(2, 2);
    want << 1.0, 2.0, 1.0, 2.0;
    CHECK((rep - want).norm() == 0.0);
    CHECK_THROWS_AS(build_submatrix(u, {2, 0}, {1, 0}), InvalidArgument);

    // Reordering repeated rows leaves |Per|^2 unchanged.
    ComplexMatrix h = haar_random_unitary(4, 3);
    ComplexMatrix a = build_submatrix(h, {2, 0, 1, 0}, {0, 1, 1, 1});
    ComplexMatrix b = a;
    b.row(0).swap(b.row(2));
    CHECK(std::abs(std::norm(permanent_naive(a)) - std::norm(permanent_naive(b))) < 1e-14);
}

TEST_CASE("permanent_naive") {
    for (int n = 1; n <= 8; ++n) {
        CHECK(std::abs(permanent_naive(ComplexMatrix::Identity(n, n)) - 1.0) == 0.0);
        double fact = 1;
        for (int k = 2; k <= n; ++k) fact *= k;
        CHECK(permanent_naive(ComplexMatrix::Ones(n, n)).real() == fact);
    }
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    CHECK(permanent_naive(m) == Complex(10.0, 0.0));
    CHECK_THROWS_AS(permanent_naive(ComplexMatrix::Zero(2, 3)), InvalidArgument);
    CHECK_THROWS_AS(permanent_naive(ComplexMatrix::Identity(9, 9)), InvalidArgument);
}

TEST_CASE("permanent_ryser matches naive") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 8;
        ComplexMatrix b = random_complex(n, rng);
        CHECK(rel_err(permanent_ryser(b), permanent_naive(b)) < 1e-10);
    }
    CHECK(permanent_ryser(ComplexMatrix::Identity(5, 5)) == Complex(1.0, 0.0));
    ComplexMatrix z(1, 1);
    z << Complex(0.3, -1.2);
    CHECK(permanent_ryser(z) == z(0, 0));
    CHECK(permanent_ryser(ComplexMatrix::Ones(8, 8)).real() == 40320.0);
    CHECK_THROWS_AS(permanent_ryser(ComplexMatrix::Zero(3, 2)), InvalidArgument);
}

TEST_CASE("permanent multilinearity") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix b = random_complex(6, rng);
        const Complex c(0.7, -1.9);
        ComplexMatrix scaled = b;
        scaled.row(trial % 6) *= c;
        CHECK(rel_err(permanent_ryser(scaled), c * permanent_ryser(b)) < 1e-12);
    }
}

TEST_CASE("permanent_ryser chunked path is thread-count independent") {
    std::mt19937_64 rng(99);
    ComplexMatrix b = random_complex(16, rng) * 0.3;
    setenv("BRICKSIM_THREADS", "1", 1);
    const Complex one = permanent_ryser(b);
    setenv("BRICKSIM_THREADS", "3", 1);
    const Complex three = permanent_ryser(b);
    unsetenv("BRICKSIM_THREADS");
    CHECK(one == three);
    // Expansion along the first row as an independent check.
    Complex expand(0.0, 0.0);
    for (int j = 0; j < 16; ++j) {
        ComplexMatrix minor(15, 15);
        for (int r = 1; r < 16; ++r) {
            int cc = 0;
            for (int c = 0; c < 16; ++c)
                if (c != j) minor(r - 1, cc++) = b(r, c);
        }
        expand += b(0, j) * permanent_ryser(minor);
    }
    CHECK(rel_err(one, expand) < 1e-9);
}

TEST_CASE("Hong-Ou-Mandel") {
    const ComplexMatrix bs = bs_matrix();
    CHECK(output_probability(bs, {1, 1}, {1, 1}) < 1e-12);
    CHECK(std::abs(output_probability(bs, {1, 1}, {2, 0}) - 0.5) < 1e-12);
    CHECK(std::abs(output_probability(bs, {1, 1}, {0, 2}) - 0.5) < 1e-12);
    CHECK(std::abs(distinguishable_probability(bs, {1, 1}, {1, 1}) - 0.5) < 1e-12);

    OutputDistribution d = full_distribution(bs, {1, 1});
    REQUIRE(d.outcomes.size() == 3);
    CHECK(std::abs(d.probabilities[0] - 0.5) < 1e-12);
    CHECK(d.probabilities[1] < 1e-12);
    CHECK(std::abs(d.probabilities[2] - 0.5) < 1e-12);
}

TEST_CASE("output_probability basics") {
    ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    CHECK(output_probability(id, {1, 0, 1, 0}, {1, 0, 1, 0}) == doctest::Approx(1.0));
    CHECK(output_probability(id, {1, 0, 1, 0}, {0, 1, 1, 0}) == 0.0);
    CHECK_THROWS_AS(output_probability(id, {1, 0, 1, 0}, {1, 0, 0, 0}), InvalidArgument);
    CHECK_THROWS_AS(output_probability(2.0 * id, {1, 0, 0, 0}, {1, 0, 0, 0}), InvalidArgument);

    OutputDistribution d = full_distribution(id, {1, 0, 1, 0});
    for (std::size_t k = 0; k < d.outcomes.size(); ++k) {
        CHECK(d.probabilities[k] == (d.outcomes[k] == OccupationVector{1, 0, 1, 0} ? 1.0 : 0.0));
    }
}

TEST_CASE("amplitude orientation follows u(out, in)") {
    // A non-symmetric unitary: one photon from mode 0 must leave with |u(o, 0)|^2.
    ComplexMatrix u = haar_random_unitary(3, 17);
    for (int o = 0; o < 3; ++o) {
        OccupationVector v(3, 0);
        v[o] = 1;
        CHECK(std::abs(output_probability(u, {1, 0, 0}, v) - std::norm(u(o, 0))) < 1e-14);
    }
}

TEST_CASE("distributions normalize") {
    for (int seed = 0; seed < 20; ++seed) {
        const int m = 2 + seed % 5;
        const int n = 1 + seed % 3;
        ComplexMatrix u = haar_random_unitary(m, 100 + seed);
        OccupationVector s(m, 0);
        for (int k = 0; k < n; ++k) s[k % m] += 1;
        OutputDistribution d = full_distribution(u, s);
        CHECK(std::abs(d.total() - 1.0) < 1e-9);
        double classical = 0.0;
        for (const auto &v : d.outcomes) {
            CHECK(d.probabilities.back() >= -1e-12);
            classical += distinguishable_probability(u, s, v);
        }
        CHECK(std::abs(classical - 1.0) < 1e-9);
    }
    ComplexMatrix h = haar_random_unitary(6, 5);
    CHECK(std::abs(full_distribution(h, {1, 1, 1, 0, 0, 0}).total() - 1.0) < 1e-9);
}

TEST_CASE("sample") {
    ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    for (const auto &v : sample(id, {1, 0, 1}, 50, 1)) CHECK(v == OccupationVector{1, 0, 1});

    const ComplexMatrix bs = bs_matrix();
    auto draws = sample(bs, {1, 1}, 10000, 7);
    REQUIRE(draws.size() == 10000);
    int coincidences = 0, bunched_left = 0;
    for (const auto &v : draws) {
        if (v == OccupationVector{1, 1}) ++coincidences;
        if (v == OccupationVector{2, 0}) ++bunched_left;
    }
    CHECK(coincidences == 0);
    CHECK(std::abs(bunched_left / 10000.0 - 0.5) < 0.02);
    CHECK(draws == sample(bs, {1, 1}, 10000, 7));

    // Empirical frequencies within 4 sigma of the exact law.
    ComplexMatrix h = haar_random_unitary(4, 8);
    OccupationVector s{1, 1, 0, 0};
    OutputDistribution d = full_distribution(h, s);
    auto many = sample(h, s, 10000, 3);
    for (std::size_t k = 0; k < d.outcomes.size(); ++k) {
        int hits = 0;
        for (const auto &v : many) hits += (v == d.outcomes[k]);
        const double p = d.probabilities[k];
        const double sigma = std::sqrt(p * (1 - p) / 10000.0);
        CHECK(std::abs(hits / 10000.0 - p) <= 4 * sigma + 1e-12);
    }
}

TEST_CASE("partial_probability limits") {
    const ComplexMatrix bs = bs_matrix();
    GramMatrix ones = GramMatrix::Ones(2, 2);
    GramMatrix id = GramMatrix::Identity(2, 2);
    CHECK(partial_probability(bs, {1, 1}, {1, 1}, ones) < 1e-12);
    CHECK(std::abs(partial_probability(bs, {1, 1}, {1, 1}, id) - 0.5) < 1e-12);
    for (double x : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        GramMatrix g(2, 2);
        g << 1.0, x, x, 1.0;
        CHECK(std::abs(partial_probability(bs, {1, 1}, {1, 1}, g) - (1 - x * x) / 2) < 1e-12);
    }
    CHECK_THROWS_AS(partial_probability(bs, {2, 0}, {1, 1}, ones), InvalidArgument);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        const int m = 3 + trial % 4;
        const int n = 1 + trial % 3;
        ComplexMatrix u = haar_random_unitary(m, 300 + trial);
        OccupationVector s(m, 0);
        for (int k = 0; k < n; ++k) s[k] = 1;
        for (const auto &v : enumerate_outputs(m, n)) {
            CHECK(std::abs(partial_probability(u, s, v, GramMatrix::Ones(n, n)) -
                           output_probability(u, s, v)) < 1e-10);
            CHECK(std::abs(partial_probability(u, s, v, GramMatrix::Identity(n, n)) -
                           distinguishable_probability(u, s, v)) < 1e-10);
        }
    }
}

TEST_CASE("validate_gram") {
    GramMatrix bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0;  // not PSD
    CHECK_THROWS_AS(validate_gram(bad, 2), InvalidArgument);
    bad << 1.0, Complex(0, 0.5), Complex(0, 0.5), 1.0;  // not Hermitian
    CHECK_THROWS_AS(validate_gram(bad, 2), InvalidArgument);
    CHECK_NOTHROW(validate_gram(GramMatrix::Ones(3, 3), 3));
    CHECK_THROWS_AS(validate_gram(GramMatrix::Ones(3, 3), 2), InvalidArgument);
}

TEST_CASE("clamp_probability") {
    CHECK(clamp_probability(-5e-13) == 0.0);
    CHECK(clamp_probability(0.25) == 0.25);
    CHECK_THROWS_AS(clamp_probability(-1e-6), Error);
}
