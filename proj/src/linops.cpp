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

#include "bricksim/linops.hpp"

#include <cmath>
#include <random>
#include <string>

#include "bricksim/errors.hpp"

namespace bricksim {

ComplexMatrix bs_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix u(2, 2);
    u << Complex(r, 0), Complex(0, r), Complex(0, r), Complex(r, 0);
    return u;
}

ComplexMatrix ps_matrix(double phi) {
    ComplexMatrix u = ComplexMatrix::Identity(2, 2);
    u(0, 0) = std::polar(1.0, phi);
    return u;
}

ComplexMatrix smzi_matrix(double phi1, double phi2) {
    const double d = 0.5 * (phi1 - phi2);
    const Complex pre = kI * std::polar(1.0, 0.5 * (phi1 + phi2));
    const double s = std::sin(d);
    const double c = std::cos(d);
    ComplexMatrix u(2, 2);
    u << pre * s, pre * c, pre * c, -pre * s;
    return u;
}

ComplexMatrix amzi_matrix(double phi1, double phi2) {
    const Complex pre = kI * std::polar(1.0, 0.5 * phi2);
    const Complex ext = std::polar(1.0, phi1);
    const double s = std::sin(0.5 * phi2);
    const double c = std::cos(0.5 * phi2);
    ComplexMatrix u(2, 2);
    u << pre * ext * s, pre * c, pre * ext * c, -pre * s;
    return u;
}

ComplexMatrix embed_two_mode(const ComplexMatrix &u2, Index i, Index j, Index m) {
    if (u2.rows() != 2 || u2.cols() != 2) {
        throw InvalidArgument("embed_two_mode: gate must be 2x2");
    }
    if (i < 0 || j < 0 || i >= m || j >= m) {
        throw InvalidArgument("embed_two_mode: mode index out of range (" + std::to_string(i) +
                              ", " + std::to_string(j) + ") for m = " + std::to_string(m));
    }
    if (i == j) {
        throw InvalidArgument("embed_two_mode: modes must differ");
    }
    ComplexMatrix u = ComplexMatrix::Identity(m, m);
    u(i, i) = u2(0, 0);
    u(i, j) = u2(0, 1);
    u(j, i) = u2(1, 0);
    u(j, j) = u2(1, 1);
    return u;
}

ComplexMatrix compose(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw InvalidArgument("compose: inner dimensions differ (" + std::to_string(a.cols()) +
                              " vs " + std::to_string(b.rows()) + ")");
    }
    return a * b;
}

namespace {

// Uniform double in (0, 1) from the top 53 bits; portable across standard
// libraries, unlike std::uniform_real_distribution.
double open_unit(std::mt19937_64 &rng) {
    for (;;) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

}  // namespace

ComplexMatrix haar_random_unitary(Index m, std::uint64_t seed) {
    if (m < 1) {
        throw InvalidArgument("haar_random_unitary: m must be >= 1");
    }
    std::mt19937_64 rng(seed);
    ComplexMatrix z(m, m);
    for (Index c = 0; c < m; ++c) {
        for (Index r = 0; r < m; ++r) {
            // Box-Muller: one complex standard normal per draw pair.
            const double u1 = open_unit(rng);
            const double u2 = open_unit(rng);
            const double radius = std::sqrt(-std::log(u1));
            z(r, c) = std::polar(radius, 2.0 * kPi * u2);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &packed = qr.matrixQR();
    for (Index k = 0; k < m; ++k) {
        const Complex d = packed(k, k);
        const double a = std::abs(d);
        q.col(k) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

UnitarityReport is_unitary(const ComplexMatrix &u, double tol) {
    if (u.rows() != u.cols()) {
        throw InvalidArgument("is_unitary: matrix is " + std::to_string(u.rows()) + "x" +
                              std::to_string(u.cols()) + ", not square");
    }
    const ComplexMatrix g = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    UnitarityReport report;
    report.tolerance = tol;
    report.max_deviation = g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
    return report;
}

bool all_finite(const ComplexMatrix &u) {
    for (Index c = 0; c < u.cols(); ++c) {
        for (Index r = 0; r < u.rows(); ++r) {
            if (!std::isfinite(u(r, c).real()) || !std::isfinite(u(r, c).imag())) return false;
        }
    }
    return true;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace bricksim
