/*
   Copyright 2026 The anops Authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <utility>
#include <vector>

#include "anops/operator.hpp"

namespace anops {

/// Hermitian eigendecomposition: ascending values, orthonormal columns.
struct EigenSystem {
    Eigen::VectorXd values;
    Matrix vectors;
    /// max_j ||M v_j - lambda_j v_j|| / ||M||
    double residual = 0.0;
};

/// Throws NotHermitian if ||M - M*||_max > 1e-12 max(1, ||M||_max) and
/// ConvergenceFailure if the residual exceeds `tol`.
EigenSystem hermitian_eig(const Matrix& m, double tol = 1e-8);

/// Ascending eigenvalues only; uses a real solver when M is real.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

/// Eigenvalues of a general square matrix (no vectors).
std::vector<Complex> general_eigenvalues(const Matrix& m);

/// Singular values, descending.
Eigen::VectorXd singular_values(const Matrix& m);

struct Polar {
    Matrix isometry;  // partial isometry, initial space range(P)
    Matrix positive;  // sqrt(M* M)
};

/// M = V P.  Singular values below max(r, c) eps sigma_max are treated as zero.
Polar svd_polar(const Matrix& m);

/// Orthonormal basis of the column span of `q` chosen canonically: modified
/// Gram-Schmidt over P e_0, P e_1, ... (P = q q*), so subspaces spanned by
/// coordinate vectors come back as exactly those coordinate vectors.
Matrix canonical_basis(const Matrix& q);

/// Orthonormal basis (columns) of the numerical null space of M, canonical.
Matrix null_space(const Matrix& m, double rel_tol = 1e-9);

/// Completes a partial isometry V to an isometry S = V + W, where W maps
/// null(V) onto range(V)^perp.  Throws DimensionMismatch if null(V) is larger
/// than range(V)^perp and ValidationError if V*V is not a projection.
Matrix isometry_extension(const Matrix& v, double tol = 1e-9);

struct Truncation {
    std::size_t n = 256;
    std::size_t cap = 4096;
};

struct EigenCluster {
    double value = 0.0;
    int multiplicity = 1;
};

/// Merge sorted values closer than `gap` into (mean, count) clusters.
std::vector<EigenCluster> cluster_values(const std::vector<double>& sorted, double gap);

struct DiscreteEigenReport {
    std::vector<EigenCluster> eigenvalues;
    bool stabilized = false;
    std::pair<std::size_t, std::size_t> sizes_used{0, 0};
    /// The list found at the larger size, kept even when unstable.
    std::vector<EigenCluster> at_larger;
};

/// Eigenvalues of a positive operator strictly below bound - tol, from
/// compressions at n and 2n.  Never throws NotStabilized: an unstable result
/// comes back with stabilized = false.
DiscreteEigenReport discrete_eigs_below(const StructuredOperator& p, double bound,
                                        double tol = 1e-8, std::size_t n = 256);

/// max(essential norm, largest singular value of the n and 2n truncations).
/// Throws NotStabilized when the truncations disagree by more than 1e-8 above
/// the essential norm.
double operator_norm(const StructuredOperator& t, std::size_t n = 256);

/// m(T) = sqrt(min(ess-min of |a|^2, discrete eigenvalues of T*T below it)).
double min_modulus(const StructuredOperator& t, double tol = 1e-8, std::size_t n = 256);

/// Number of near-zero singular values (relative `rel_tol`) of the exact
/// image of the first n columns of T: an estimate of dim N(T).
int kernel_dimension(const StructuredOperator& t, std::size_t n, double rel_tol = 1e-6);

/// dim N(T - lambda) - dim N((T - lambda)*) by truncation counting.
int truncation_index(const StructuredOperator& t, Complex lambda, std::size_t n = 512,
                     double rel_tol = 1e-6);

/// n raised to at least support_extent + 2 bandwidth + 1, so the head block
/// and its band neighbourhood fit inside the truncation.
std::size_t working_size(const StructuredOperator& t, std::size_t n);

/// True when M has no imaginary parts.
bool is_real(const Matrix& m) noexcept;

}  // namespace anops
