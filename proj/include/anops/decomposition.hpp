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

#include <string>
#include <vector>

#include "anops/classify.hpp"
#include "anops/operator.hpp"

namespace anops {

struct H0Block {
    double lambda = 0.0;
    int dim = 0;
    Matrix U;  // unitary, dim x dim
};

struct H2Block {
    double delta = 0.0;
    int dim = 0;
};

/// T restricted to the first n coordinates, written in the basis
/// H0 (+) H1 (+) H2.  The image of the first n columns of T reaches
/// n + extra_rows coordinates; those extra rows are appended to the H1 rows,
/// so S1 and A have h1_dim + extra_rows rows.
struct BlockDecomposition {
    std::size_t n = 0;
    int extra_rows = 0;
    double alpha = 0.0;
    std::vector<H0Block> h0_blocks;  // lambda descending
    int h1_dim = 0;
    Matrix S1;  // (h1_dim + extra_rows) x h1_dim isometry
    Matrix A;   // (h1_dim + extra_rows) x h2_dim
    std::vector<H2Block> h2_blocks;  // delta ascending
    Matrix S2;  // h2_dim x h2_dim
    Matrix basis;  // n x n, columns ordered H0 | H1 | H2
    std::string case_label;  // lambda_eq_norm, case1 .. case4 (advisory)
    double assign_tol = 0.0;

    int h0_dim() const noexcept;
    int h2_dim() const noexcept;
};

/// Requires T hyponormal and AN.  Throws NotHyponormal, NotAN,
/// NotStabilized (a premise came back undetermined) or TemplateMismatch.
BlockDecomposition structure_decompose(const StructuredOperator& t, std::size_t n = 128, double tol = 1e-8);

/// The block template as a dense (n + extra_rows) x n matrix in block
/// coordinates.
Matrix assemble_template(const BlockDecomposition& dec);

struct Residual {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed() const noexcept { return value <= threshold; }
};

struct VerificationRecord {
    std::vector<Residual> residuals;
    bool passed() const noexcept;
    const Residual* find(const std::string& name) const noexcept;
};

VerificationRecord verify_decomposition(const BlockDecomposition& dec, const StructuredOperator& t, std::size_t n,
                                        double tol);

struct BlockNormalityRecord {
    Verdict verdict = Verdict::undetermined;
    double interior_defect = 0.0;  // ||I - S S*|| away from the block edges
    int corank = 0;                // rank deficiency of the top rows of S1
    /// check_normal(T) when T was supplied, otherwise undetermined.
    Verdict cross_check = Verdict::undetermined;
    bool consistent = true;
};

BlockNormalityRecord normality_from_blocks(const BlockDecomposition& dec, double tol,
                                           const StructuredOperator* t = nullptr);

struct InclusionRecord {
    std::vector<Complex> eigenvalues;
    std::vector<Complex> violators;
    double max_excess = 0.0;
    bool holds = true;
};

/// Truncation eigenvalues of T at size dec.n against the closed disc of
/// radius alpha together with the circles |z| = lambda_i, inflated by tol.
InclusionRecord spectrum_inclusion_check(const StructuredOperator& t, const BlockDecomposition& dec, double tol);

}  // namespace anops
