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

#include <random>
#include <string>
#include <vector>

#include "anops/operator.hpp"

namespace anops::catalog {

/// R(x0, x1, ...) = (0, x0, x1, ...)
StructuredOperator right_shift();

/// T(x0, x1, x2, ...) = (x0/2, 0, x1/2, x2, x3, ...): hyponormal, AN,
/// T*T = diag(1/4, 1/4, 1, 1, ...).
StructuredOperator compressed_shift();

/// T(x0, x1, x2, ...) = (0, x0, x1, 2 x2, 2 x3, ...): head block nilpotent.
StructuredOperator nilpotent_head_shift();

/// T(x0, x1, x2, ...) = (x0, 2 x1, 0, 3 x2, 3 x3, ...): head block diag(1, 2).
StructuredOperator diagonal_head_shift();

/// Identity written as a pure band (symbol 1).
StructuredOperator unitary_diag();

/// Self-adjoint tridiagonal operator with symbol z + 1/z.
StructuredOperator selfadjoint_band();

/// Names of the bundled operator specs, in a fixed order.
const std::vector<std::string>& bundled_names();

/// Operator for a bundled name; throws std::out_of_range for unknown names.
StructuredOperator bundled(const std::string& name);

}  // namespace anops::catalog

namespace anops::random {

using Rng = std::mt19937_64;

Complex scalar(Rng& rng, double radius = 1.0);

/// Banded operator with offsets in [-max_offset, max_offset], short prefixes,
/// optional rank-one terms.
StructuredOperator banded(Rng& rng, int max_offset = 2, int max_prefix = 3, int rank_terms = 0);

/// Diagonal operator with prefix length in [0, max_prefix].
StructuredOperator diagonal(Rng& rng, int max_prefix = 8);

/// Finite-rank operator.  Mixes normal (sum of lambda_k u_k u_k* over an
/// orthonormal family), generic rank-one sums, and dense head blocks.
StructuredOperator finite_rank(Rng& rng, int max_dim = 5);

/// Hyponormal band operator: c + weighted shift with nondecreasing weights,
/// or an analytic Toeplitz operator (offsets >= 0, no prefix).
StructuredOperator hyponormal_band(Rng& rng);

}  // namespace anops::random
