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

#include "anops/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

namespace anops::catalog {

using Bands = StructuredOperator::BandMap;

StructuredOperator right_shift() { return StructuredOperator::shift(1); }

StructuredOperator compressed_shift() {
    return StructuredOperator(Bands{
        {0, DiagonalDescriptor({0.5}, 0.0)},
        {1, DiagonalDescriptor({0.0, 0.5}, 1.0)},
    });
}

StructuredOperator nilpotent_head_shift() {
    return StructuredOperator(Bands{{1, DiagonalDescriptor({1.0, 1.0}, 2.0)}});
}

StructuredOperator diagonal_head_shift() {
    return StructuredOperator(Bands{
        {0, DiagonalDescriptor({1.0, 2.0}, 0.0)},
        {1, DiagonalDescriptor({0.0, 0.0}, 3.0)},
    });
}

StructuredOperator unitary_diag() { return StructuredOperator::identity(); }

StructuredOperator selfadjoint_band() {
    return StructuredOperator(Bands{{-1, DiagonalDescriptor({}, 1.0)}, {1, DiagonalDescriptor({}, 1.0)}});
}

const std::vector<std::string>& bundled_names() {
    static const std::vector<std::string> names = {"right_shift",  "example36", "t1", "t2",
                                                   "unitary_diag", "selfadjoint_band"};
    return names;
}

StructuredOperator bundled(const std::string& name) {
    if (name == "right_shift") return right_shift();
    if (name == "example36") return compressed_shift();
    if (name == "t1") return nilpotent_head_shift();
    if (name == "t2") return diagonal_head_shift();
    if (name == "unitary_diag") return unitary_diag();
    if (name == "selfadjoint_band") return selfadjoint_band();
    throw std::out_of_range("unknown bundled operator: " + name);
}

}  // namespace anops::catalog

namespace anops::random {

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Matrix random_unitary(Rng& rng, int n) {
    Matrix g(n, n);
    std::normal_distribution<double> nd;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(nd(rng), nd(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(n, n);
}

FiniteVector column(const Matrix& m, Eigen::Index c) {
    std::vector<Complex> e(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) e[static_cast<std::size_t>(i)] = m(i, c);
    return FiniteVector(std::move(e));
}

}  // namespace

Complex scalar(Rng& rng, double radius) {
    const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
    return std::polar(r, uniform(rng, 0.0, 2.0 * M_PI));
}

StructuredOperator banded(Rng& rng, int max_offset, int max_prefix, int rank_terms) {
    StructuredOperator::BandMap bands;
    for (int k = -max_offset; k <= max_offset; ++k) {
        if (uniform(rng, 0.0, 1.0) < 0.3) continue;
        std::vector<Complex> prefix(static_cast<std::size_t>(uniform_int(rng, 0, max_prefix)));
        for (auto& z : prefix) z = scalar(rng);
        bands.emplace(k, DiagonalDescriptor(std::move(prefix), scalar(rng)));
    }
    std::vector<FiniteRankTerm> terms;
    for (int r = 0; r < rank_terms; ++r) {
        std::vector<Complex> l(static_cast<std::size_t>(uniform_int(rng, 1, 4)));
        std::vector<Complex> rr(static_cast<std::size_t>(uniform_int(rng, 1, 4)));
        for (auto& z : l) z = scalar(rng);
        for (auto& z : rr) z = scalar(rng);
        terms.push_back({FiniteVector(std::move(l)), FiniteVector(std::move(rr))});
    }
    return StructuredOperator(std::move(bands), std::move(terms));
}

StructuredOperator diagonal(Rng& rng, int max_prefix) {
    std::vector<Complex> prefix(static_cast<std::size_t>(uniform_int(rng, 0, max_prefix)));
    for (auto& z : prefix) z = scalar(rng, 2.0);
    const Complex tail = uniform(rng, 0.0, 1.0) < 0.1 ? Complex{} : scalar(rng, 1.5);
    return StructuredOperator::diagonal(std::move(prefix), tail);
}

StructuredOperator finite_rank(Rng& rng, int max_dim) {
    const int dim = uniform_int(rng, 1, max_dim);
    switch (uniform_int(rng, 0, 3)) {
        case 0: {
            // Normal: sum lambda_k u_k u_k*.
            const Matrix u = random_unitary(rng, dim);
            std::vector<FiniteRankTerm> terms;
            const int rank = uniform_int(rng, 1, dim);
            for (int k = 0; k < rank; ++k) {
                const Complex lambda = scalar(rng, 2.0);
                std::vector<Complex> l(static_cast<std::size_t>(dim));
                for (int i = 0; i < dim; ++i) l[static_cast<std::size_t>(i)] = lambda * u(i, k);
                terms.push_back({FiniteVector(std::move(l)), column(u, k)});
            }
            return StructuredOperator({}, std::move(terms));
        }
        case 1: {
            // Generic sum of rank-one maps.
            std::vector<FiniteRankTerm> terms;
            const int rank = uniform_int(rng, 1, 3);
            for (int k = 0; k < rank; ++k) {
                std::vector<Complex> l(static_cast<std::size_t>(dim)), r(static_cast<std::size_t>(dim));
                for (auto& z : l) z = scalar(rng);
                for (auto& z : r) z = scalar(rng);
                terms.push_back({FiniteVector(std::move(l)), FiniteVector(std::move(r))});
            }
            return StructuredOperator({}, std::move(terms));
        }
        case 2: {
            // Normal head block U diag(lambda) U* written into band prefixes.
            const Matrix u = random_unitary(rng, dim);
            Eigen::VectorXcd lambda(dim);
            for (int i = 0; i < dim; ++i) lambda(i) = scalar(rng, 2.0);
            const Matrix m = u * lambda.asDiagonal() * u.adjoint();
            StructuredOperator::BandMap bands;
            for (int k = -(dim - 1); k <= dim - 1; ++k) {
                std::vector<Complex> prefix;
                for (int i = 0; i < dim; ++i) {
                    const int j = i - k;
                    if (j < 0 || j >= dim) continue;
                    const std::size_t idx = static_cast<std::size_t>(std::min(i, j));
                    if (prefix.size() <= idx) prefix.resize(idx + 1);
                    prefix[idx] = m(i, j);
                }
                bands.emplace(k, DiagonalDescriptor(std::move(prefix), 0.0));
            }
            return StructuredOperator(std::move(bands));
        }
        default: {
            // Strictly lower-triangular (nilpotent) head block.
            StructuredOperator::BandMap bands;
            for (int k = 1; k < std::max(dim, 2); ++k) {
                std::vector<Complex> prefix(static_cast<std::size_t>(std::max(dim - k, 1)));
                for (auto& z : prefix) z = scalar(rng);
                bands.emplace(k, DiagonalDescriptor(std::move(prefix), 0.0));
            }
            return StructuredOperator(std::move(bands));
        }
    }
}

StructuredOperator hyponormal_band(Rng& rng) {
    if (uniform(rng, 0.0, 1.0) < 0.5) {
        // c + weighted shift, weights nondecreasing in modulus.
        const int len = uniform_int(rng, 0, 4);
        std::vector<double> w(static_cast<std::size_t>(len) + 1);
        for (auto& x : w) x = uniform(rng, 0.1, 2.0);
        std::sort(w.begin(), w.end());
        const double tail = w.back();
        w.pop_back();
        std::vector<Complex> prefix;
        for (double x : w) prefix.emplace_back(x * std::polar(1.0, uniform(rng, 0.0, 2.0 * M_PI)));
        StructuredOperator::BandMap bands{{1, DiagonalDescriptor(std::move(prefix), tail)}};
        if (uniform(rng, 0.0, 1.0) < 0.5) bands.emplace(0, DiagonalDescriptor({}, scalar(rng)));
        return StructuredOperator(std::move(bands));
    }
    // Analytic Toeplitz: multiplication by a polynomial on H^2.
    StructuredOperator::BandMap bands;
    const int degree = uniform_int(rng, 1, 3);
    for (int k = 0; k <= degree; ++k) bands.emplace(k, DiagonalDescriptor({}, scalar(rng)));
    return StructuredOperator(std::move(bands));
}

}  // namespace anops::random
