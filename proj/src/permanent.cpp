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
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bricksim/errors.hpp"
#include "bricksim/fock.hpp"
#include "parallel.hpp"

namespace bricksim {

namespace {

constexpr int kRyserMaxN = 30;

void require_square(Index rows, Index cols, const char *who) {
    if (rows != cols) {
        throw InvalidArgument(std::string(who) + ": matrix is " + std::to_string(rows) + "x" +
                              std::to_string(cols) + ", not square");
    }
}

// Number of Gray-code chunks. Depends on n only, never on the thread count.
std::uint64_t chunk_count(int n) {
    if (n < 14) return 1;
    return std::uint64_t{1} << std::min(n - 8, 8);
}

// Ryser sum over Gray-code indices [k0, k1), k0 >= 1. Column j enters or
// leaves the subset when bit j flips; the sign tracks the subset parity.
template <typename Scalar, typename Matrix>
Scalar ryser_range(const Matrix &a, int n, std::uint64_t k0, std::uint64_t k1) {
    std::vector<Scalar> row_sum(n, Scalar(0));
    std::uint64_t gray = k0 ^ (k0 >> 1);
    for (int j = 0; j < n; ++j) {
        if ((gray >> j) & 1u) {
            for (int i = 0; i < n; ++i) row_sum[i] += a(i, j);
        }
    }
    Scalar total(0);
    auto accumulate = [&](std::uint64_t g) {
        Scalar prod(1);
        for (int i = 0; i < n; ++i) prod *= row_sum[i];
        if (std::popcount(g) & 1) {
            total -= prod;
        } else {
            total += prod;
        }
    };
    accumulate(gray);
    for (std::uint64_t k = k0 + 1; k < k1; ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t next = k ^ (k >> 1);
        if ((next >> j) & 1u) {
            for (int i = 0; i < n; ++i) row_sum[i] += a(i, j);
        } else {
            for (int i = 0; i < n; ++i) row_sum[i] -= a(i, j);
        }
        gray = next;
        accumulate(gray);
    }
    return total;
}

template <typename Scalar, typename Matrix>
Scalar ryser(const Matrix &a, const char *who) {
    require_square(a.rows(), a.cols(), who);
    const int n = static_cast<int>(a.rows());
    if (n == 0) return Scalar(1);
    if (n > kRyserMaxN) {
        throw InvalidArgument(std::string(who) + ": n = " + std::to_string(n) +
                              " exceeds the supported maximum " + std::to_string(kRyserMaxN));
    }
    const std::uint64_t subsets = std::uint64_t{1} << n;
    const std::uint64_t chunks = chunk_count(n);
    const std::uint64_t span = subsets / chunks;
    std::vector<Scalar> partial(chunks, Scalar(0));
    detail::parallel_for(chunks, [&](std::size_t c) {
        const std::uint64_t k0 = std::max<std::uint64_t>(1, c * span);
        const std::uint64_t k1 = (c + 1) * span;
        partial[c] = ryser_range<Scalar>(a, n, k0, k1);
    });
    // Pairwise reduction in fixed order.
    while (partial.size() > 1) {
        std::vector<Scalar> next((partial.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = partial[2 * i];
            if (2 * i + 1 < partial.size()) next[i] += partial[2 * i + 1];
        }
        partial.swap(next);
    }
    return (n % 2 == 0) ? partial[0] : -partial[0];
}

}  // namespace

Complex permanent_naive(const ComplexMatrix &b) {
    require_square(b.rows(), b.cols(), "permanent_naive");
    const int n = static_cast<int>(b.rows());
    if (n > kNaivePermanentMaxN) {
        throw InvalidArgument("permanent_naive: n = " + std::to_string(n) + " exceeds " +
                              std::to_string(kNaivePermanentMaxN));
    }
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex total(0.0, 0.0);
    do {
        Complex prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= b(i, sigma[i]);
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

Complex permanent_ryser(const ComplexMatrix &b) { return ryser<Complex>(b, "permanent_ryser"); }

double permanent_ryser_real(const Eigen::MatrixXd &b) {
    return ryser<double>(b, "permanent_ryser_real");
}

}  // namespace bricksim
