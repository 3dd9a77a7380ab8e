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

// Linear-optics primitives.
//
// Convention used everywhere in bricksim: a transfer matrix acts on a column
// vector of mode amplitudes, out = U * in, so U(o, i) is the amplitude for
// light entering mode i to leave in mode o. When elements are cascaded, the
// first element the light meets is the rightmost factor. Matrices keep their
// physical global phase; comparisons are entrywise.

#ifndef BRICKSIM_LINOPS_HPP
#define BRICKSIM_LINOPS_HPP

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace bricksim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Tolerances by provenance: single constructors, accumulated products and
/// compiled mesh outputs.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kProductTol = 1e-10;
inline constexpr double kCompilerTol = 1e-9;

struct UnitarityReport {
    double max_deviation = 0.0;  // sup-norm of U^dagger U - I
    double tolerance = 0.0;

    bool ok() const { return max_deviation <= tolerance; }
};

/// 50:50 beam splitter, (1/sqrt 2) [[1, i], [i, 1]].
ComplexMatrix bs_matrix();

/// Phase shifter on the first of two modes, diag(e^{i phi}, 1).
ComplexMatrix ps_matrix(double phi);

/// Symmetric MZI: BS * diag(e^{i phi1}, e^{i phi2}) * BS, evaluated in closed
/// form as i e^{i(phi1+phi2)/2} [[sin d, cos d], [cos d, -sin d]] with
/// d = (phi1 - phi2)/2.
ComplexMatrix smzi_matrix(double phi1, double phi2);

/// Asymmetric MZI: external phase phi1 on the input followed by an internal
/// phase phi2, closed form
/// i e^{i phi2/2} [[e^{i phi1} sin(phi2/2), cos(phi2/2)],
///                 [e^{i phi1} cos(phi2/2), -sin(phi2/2)]].
ComplexMatrix amzi_matrix(double phi1, double phi2);

/// Identity on m modes except the (i, j) block, which becomes u2.
ComplexMatrix embed_two_mode(const ComplexMatrix &u2, Index i, Index j, Index m);

/// Matrix product a * b (b acts first). Throws on inner-dimension mismatch.
ComplexMatrix compose(const ComplexMatrix &a, const ComplexMatrix &b);

/// Haar-distributed m x m unitary from the QR factorization of a complex
/// Ginibre matrix with the phases of R's diagonal moved into Q. The Gaussian
/// variates come from a Box-Muller transform over mt19937_64 so the result
/// depends only on (m, seed).
ComplexMatrix haar_random_unitary(Index m, std::uint64_t seed);

UnitarityReport is_unitary(const ComplexMatrix &u, double tol = kProductTol);

bool all_finite(const ComplexMatrix &u);

/// Largest entrywise |a - b|; matrices must have equal shape.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace bricksim

#endif  // BRICKSIM_LINOPS_HPP
