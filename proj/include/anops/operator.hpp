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

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace anops {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// An eventually constant sequence d_0, d_1, ...: prefix values then `tail`
/// forever.  Canonical form has no trailing prefix entries equal to the tail.
class DiagonalDescriptor {
public:
    DiagonalDescriptor() = default;
    DiagonalDescriptor(std::vector<Complex> prefix, Complex tail);

    Complex at(std::size_t m) const noexcept {
        return m < prefix_.size() ? prefix_[m] : tail_;
    }
    const std::vector<Complex>& prefix() const noexcept { return prefix_; }
    Complex tail() const noexcept { return tail_; }

    bool is_canonical() const noexcept;
    DiagonalDescriptor canonical() const;
    // All entries zero.
    bool is_zero() const noexcept { return prefix_.empty() && tail_ == Complex{}; }

    friend bool operator==(const DiagonalDescriptor&, const DiagonalDescriptor&) = default;

private:
    std::vector<Complex> prefix_;
    Complex tail_{};
};

/// Finitely supported vector in l2(N); coordinates past the end are zero.
class FiniteVector {
public:
    FiniteVector() = default;
    explicit FiniteVector(std::vector<Complex> entries);

    static FiniteVector unit(std::size_t k, Complex value = 1.0);

    Complex operator[](std::size_t i) const noexcept {
        return i < entries_.size() ? entries_[i] : Complex{};
    }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<Complex>& entries() const noexcept { return entries_; }

    bool is_canonical() const noexcept;
    FiniteVector canonical() const;
    double norm() const noexcept;

    friend bool operator==(const FiniteVector&, const FiniteVector&) = default;

private:
    std::vector<Complex> entries_;
};

/// Rank-one map x -> <x, right> left, where <x, y> = sum x_i conj(y_i).
struct FiniteRankTerm {
    FiniteVector left;
    FiniteVector right;

    friend bool operator==(const FiniteRankTerm&, const FiniteRankTerm&) = default;
};

/// Banded operator on l2(N) with eventually constant diagonals plus finitely
/// many rank-one terms.
///
/// Matrix entry (i, j) is bands[i - j].at(min(i, j)) plus the rank-one
/// contributions sum left_i conj(right_j).  Offset k = row - column, so the
/// right shift lives on offset +1.  Instances are always canonical.
class StructuredOperator {
public:
    using BandMap = std::map<int, DiagonalDescriptor>;

    StructuredOperator() = default;
    /// Canonicalizes its input; throws ValidationError on non-finite values.
    StructuredOperator(BandMap bands, std::vector<FiniteRankTerm> rank_terms = {});

    static StructuredOperator zero() { return {}; }
    static StructuredOperator identity();
    /// Constant diagonal on offset `offset` (offset 1 = right shift R,
    /// offset k = R^k, offset -k = (R*)^k).
    static StructuredOperator shift(int offset, Complex value = 1.0);
    static StructuredOperator diagonal(std::vector<Complex> prefix, Complex tail);
    static StructuredOperator rank_one(FiniteVector left, FiniteVector right);

    const BandMap& bands() const noexcept { return bands_; }
    const std::vector<FiniteRankTerm>& rank_terms() const noexcept { return rank_terms_; }

    Complex entry(std::size_t i, std::size_t j) const noexcept;

    /// Largest positive offset present (0 if none): how far T pushes mass down.
    int lower_bandwidth() const noexcept;
    /// Largest |negative offset| present (0 if none).
    int upper_bandwidth() const noexcept;
    int bandwidth() const noexcept;
    /// Number of leading rows/columns outside of which the operator is a
    /// pure constant-diagonal band matrix.
    std::size_t support_extent() const noexcept;

    friend bool operator==(const StructuredOperator&, const StructuredOperator&) = default;

private:
    BandMap bands_;
    std::vector<FiniteRankTerm> rank_terms_;
};

StructuredOperator adjoint(const StructuredOperator& t);
StructuredOperator add(const StructuredOperator& a, const StructuredOperator& b);
StructuredOperator scale(Complex c, const StructuredOperator& t);
StructuredOperator subtract(const StructuredOperator& a, const StructuredOperator& b);
/// Exact matrix product a * b, kept inside the class.
StructuredOperator compose(const StructuredOperator& a, const StructuredOperator& b);
/// T*T - TT*.
StructuredOperator self_commutator(const StructuredOperator& t);

/// Leading n x n block of the matrix.
Matrix truncate(const StructuredOperator& t, std::size_t n);
/// Leading rows x cols block.  With rows >= cols + lower_bandwidth() this is
/// the exact image of the first `cols` basis vectors (up to rank-term support).
Matrix truncate(const StructuredOperator& t, std::size_t rows, std::size_t cols);

FiniteVector apply(const StructuredOperator& t, const FiniteVector& x);

/// True iff every entry of T has magnitude <= tol.  Exact when tol == 0.
bool is_zero(const StructuredOperator& t, double tol);

/// Max |a_ij - b_ij| over all entries (finite because both are eventually
/// constant along diagonals).
double max_entry_difference(const StructuredOperator& a, const StructuredOperator& b);

/// Schur-type upper bound sum_k sup|d_k| + sum ||left|| ||right||.
double norm_bound(const StructuredOperator& t);

bool is_finite_rank(const StructuredOperator& t) noexcept;

}  // namespace anops
