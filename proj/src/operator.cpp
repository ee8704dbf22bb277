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

#include "anops/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "anops/errors.hpp"

namespace anops {

namespace {

bool finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(Complex z, const char* where) {
    if (!finite(z)) throw ValidationError(std::string("non-finite scalar in ") + where);
}

double sup_abs(const DiagonalDescriptor& d) {
    double m = std::abs(d.tail());
    for (auto v : d.prefix()) m = std::max(m, std::abs(v));
    return m;
}

// Band part only: sum over offsets, no rank terms.
Complex band_entry(const StructuredOperator::BandMap& bands, std::size_t i, std::size_t j) noexcept {
    const long k = static_cast<long>(i) - static_cast<long>(j);
    auto it = bands.find(static_cast<int>(k));
    if (it == bands.end()) return {};
    return it->second.at(std::min(i, j));
}

FiniteVector apply_bands(const StructuredOperator::BandMap& bands, const FiniteVector& x) {
    if (x.empty() || bands.empty()) return {};
    int lower = 0;
    for (const auto& [k, d] : bands) lower = std::max(lower, k);
    const std::size_t out = x.size() + static_cast<std::size_t>(lower);
    std::vector<Complex> y(out);
    for (const auto& [k, d] : bands) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            const long i = static_cast<long>(j) + k;
            if (i < 0) continue;
            y[static_cast<std::size_t>(i)] += d.at(std::min<std::size_t>(static_cast<std::size_t>(i), j)) * x[j];
        }
    }
    return FiniteVector(std::move(y)).canonical();
}

Complex inner(const FiniteVector& x, const FiniteVector& y) noexcept {
    Complex s{};
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) s += x[i] * std::conj(y[i]);
    return s;
}

FiniteVector scaled(Complex c, const FiniteVector& v) {
    std::vector<Complex> e = v.entries();
    for (auto& z : e) z *= c;
    return FiniteVector(std::move(e)).canonical();
}

double max_abs_entry(const StructuredOperator& t) {
    double m = 0.0;
    for (const auto& [k, d] : t.bands()) m = std::max(m, std::abs(d.tail()));
    const std::size_t window = t.support_extent() + static_cast<std::size_t>(t.bandwidth()) + 1;
    const Matrix block = truncate(t, window);
    if (block.size() > 0) m = std::max(m, block.cwiseAbs().maxCoeff());
    return m;
}

}  // namespace

DiagonalDescriptor::DiagonalDescriptor(std::vector<Complex> prefix, Complex tail)
    : prefix_(std::move(prefix)), tail_(tail) {}

bool DiagonalDescriptor::is_canonical() const noexcept {
    return prefix_.empty() || prefix_.back() != tail_;
}

DiagonalDescriptor DiagonalDescriptor::canonical() const {
    std::vector<Complex> p = prefix_;
    while (!p.empty() && p.back() == tail_) p.pop_back();
    return {std::move(p), tail_};
}

FiniteVector::FiniteVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

FiniteVector FiniteVector::unit(std::size_t k, Complex value) {
    std::vector<Complex> e(k + 1);
    e[k] = value;
    return FiniteVector(std::move(e)).canonical();
}

bool FiniteVector::is_canonical() const noexcept {
    return entries_.empty() || entries_.back() != Complex{};
}

FiniteVector FiniteVector::canonical() const {
    std::vector<Complex> e = entries_;
    while (!e.empty() && e.back() == Complex{}) e.pop_back();
    return FiniteVector(std::move(e));
}

double FiniteVector::norm() const noexcept {
    double s = 0.0;
    for (auto z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

StructuredOperator::StructuredOperator(BandMap bands, std::vector<FiniteRankTerm> rank_terms) {
    for (auto& [k, d] : bands) {
        require_finite(d.tail(), "band tail");
        for (auto v : d.prefix()) require_finite(v, "band prefix");
        DiagonalDescriptor c = d.canonical();
        if (!c.is_zero()) bands_.emplace(k, std::move(c));
    }
    for (auto& term : rank_terms) {
        for (auto v : term.left.entries()) require_finite(v, "rank term");
        for (auto v : term.right.entries()) require_finite(v, "rank term");
        FiniteRankTerm c{term.left.canonical(), term.right.canonical()};
        if (c.left.empty() || c.right.empty()) continue;
        rank_terms_.push_back(std::move(c));
    }
}

StructuredOperator StructuredOperator::identity() { return shift(0); }

StructuredOperator StructuredOperator::shift(int offset, Complex value) {
    return StructuredOperator(BandMap{{offset, DiagonalDescriptor({}, value)}});
}

StructuredOperator StructuredOperator::diagonal(std::vector<Complex> prefix, Complex tail) {
    return StructuredOperator(BandMap{{0, DiagonalDescriptor(std::move(prefix), tail)}});
}

StructuredOperator StructuredOperator::rank_one(FiniteVector left, FiniteVector right) {
    return StructuredOperator({}, {FiniteRankTerm{std::move(left), std::move(right)}});
}

Complex StructuredOperator::entry(std::size_t i, std::size_t j) const noexcept {
    Complex v = band_entry(bands_, i, j);
    for (const auto& term : rank_terms_) v += term.left[i] * std::conj(term.right[j]);
    return v;
}

int StructuredOperator::lower_bandwidth() const noexcept {
    return bands_.empty() ? 0 : std::max(0, bands_.rbegin()->first);
}

int StructuredOperator::upper_bandwidth() const noexcept {
    return bands_.empty() ? 0 : std::max(0, -bands_.begin()->first);
}

int StructuredOperator::bandwidth() const noexcept {
    return std::max(lower_bandwidth(), upper_bandwidth());
}

std::size_t StructuredOperator::support_extent() const noexcept {
    std::size_t s = 0;
    for (const auto& [k, d] : bands_) s = std::max(s, d.prefix().size());
    for (const auto& term : rank_terms_) s = std::max({s, term.left.size(), term.right.size()});
    return s;
}

StructuredOperator adjoint(const StructuredOperator& t) {
    StructuredOperator::BandMap bands;
    for (const auto& [k, d] : t.bands()) {
        std::vector<Complex> p = d.prefix();
        for (auto& z : p) z = std::conj(z);
        bands.emplace(-k, DiagonalDescriptor(std::move(p), std::conj(d.tail())));
    }
    std::vector<FiniteRankTerm> terms;
    terms.reserve(t.rank_terms().size());
    for (const auto& term : t.rank_terms()) terms.push_back({term.right, term.left});
    return StructuredOperator(std::move(bands), std::move(terms));
}

StructuredOperator add(const StructuredOperator& a, const StructuredOperator& b) {
    StructuredOperator::BandMap bands = a.bands();
    for (const auto& [k, d] : b.bands()) {
        auto it = bands.find(k);
        if (it == bands.end()) {
            bands.emplace(k, d);
            continue;
        }
        const DiagonalDescriptor& e = it->second;
        const std::size_t len = std::max(e.prefix().size(), d.prefix().size());
        std::vector<Complex> p(len);
        for (std::size_t m = 0; m < len; ++m) p[m] = e.at(m) + d.at(m);
        it->second = DiagonalDescriptor(std::move(p), e.tail() + d.tail());
    }
    std::vector<FiniteRankTerm> terms = a.rank_terms();
    terms.insert(terms.end(), b.rank_terms().begin(), b.rank_terms().end());
    return StructuredOperator(std::move(bands), std::move(terms));
}

StructuredOperator scale(Complex c, const StructuredOperator& t) {
    StructuredOperator::BandMap bands;
    for (const auto& [k, d] : t.bands()) {
        std::vector<Complex> p = d.prefix();
        for (auto& z : p) z *= c;
        bands.emplace(k, DiagonalDescriptor(std::move(p), c * d.tail()));
    }
    std::vector<FiniteRankTerm> terms;
    if (c != Complex{}) {
        for (const auto& term : t.rank_terms()) terms.push_back({scaled(c, term.left), term.right});
    }
    return StructuredOperator(std::move(bands), std::move(terms));
}

StructuredOperator subtract(const StructuredOperator& a, const StructuredOperator& b) {
    return add(a, scale(-1.0, b));
}

StructuredOperator compose(const StructuredOperator& a, const StructuredOperator& b) {
    // Band x band: every diagonal of the product is the Laurent-product tail
    // once min(i, j) clears both prefixes by the combined bandwidth.
    StructuredOperator::BandMap bands;
    if (!a.bands().empty() && !b.bands().empty()) {
        std::size_t prefix_a = 0, prefix_b = 0;
        for (const auto& [k, d] : a.bands()) prefix_a = std::max(prefix_a, d.prefix().size());
        for (const auto& [k, d] : b.bands()) prefix_b = std::max(prefix_b, d.prefix().size());
        const std::size_t settle = std::max(prefix_a, prefix_b) +
                                   static_cast<std::size_t>(a.bandwidth() + b.bandwidth());

        std::map<int, Complex> tails;
        for (const auto& [ka, da] : a.bands())
            for (const auto& [kb, db] : b.bands()) tails[ka + kb] += da.tail() * db.tail();

        for (const auto& [k, tail] : tails) {
            std::vector<Complex> prefix(settle);
            for (std::size_t m = 0; m < settle; ++m) {
                // Entry (i, j) with min(i, j) = m on offset k.
                const std::size_t i = k >= 0 ? m + static_cast<std::size_t>(k) : m;
                const std::size_t j = k >= 0 ? m : m + static_cast<std::size_t>(-k);
                Complex s{};
                for (const auto& [ka, da] : a.bands()) {
                    const long l = static_cast<long>(i) - ka;
                    if (l < 0) continue;
                    const auto lu = static_cast<std::size_t>(l);
                    auto itb = b.bands().find(k - ka);
                    if (itb == b.bands().end()) continue;
                    s += da.at(std::min(i, lu)) * itb->second.at(std::min(lu, j));
                }
                prefix[m] = s;
            }
            bands.emplace(k, DiagonalDescriptor(std::move(prefix), tail));
        }
    }

    std::vector<FiniteRankTerm> terms;
    const StructuredOperator b_bands_adj = adjoint(StructuredOperator(b.bands()));
    for (const auto& tb : b.rank_terms()) {
        // A_band (l r*) = (A_band l) r*
        terms.push_back({apply_bands(a.bands(), tb.left), tb.right});
    }
    for (const auto& ta : a.rank_terms()) {
        // (l r*) B_band = l (B_band* r)*
        terms.push_back({ta.left, apply_bands(b_bands_adj.bands(), ta.right)});
        for (const auto& tb : b.rank_terms()) {
            const Complex c = inner(tb.left, ta.right);
            if (c != Complex{}) terms.push_back({scaled(c, ta.left), tb.right});
        }
    }
    return StructuredOperator(std::move(bands), std::move(terms));
}

StructuredOperator self_commutator(const StructuredOperator& t) {
    const StructuredOperator ts = adjoint(t);
    return subtract(compose(ts, t), compose(t, ts));
}

Matrix truncate(const StructuredOperator& t, std::size_t n) { return truncate(t, n, n); }

Matrix truncate(const StructuredOperator& t, std::size_t rows, std::size_t cols) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (const auto& [k, d] : t.bands()) {
        for (std::size_t j = 0; j < cols; ++j) {
            const long i = static_cast<long>(j) + k;
            if (i < 0) continue;
            if (static_cast<std::size_t>(i) >= rows) break;
            m(i, static_cast<Eigen::Index>(j)) = d.at(std::min(static_cast<std::size_t>(i), j));
        }
    }
    for (const auto& term : t.rank_terms()) {
        const std::size_t lr = std::min(rows, term.left.size());
        const std::size_t lc = std::min(cols, term.right.size());
        for (std::size_t i = 0; i < lr; ++i)
            for (std::size_t j = 0; j < lc; ++j)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                    term.left[i] * std::conj(term.right[j]);
    }
    return m;
}

FiniteVector apply(const StructuredOperator& t, const FiniteVector& x) {
    FiniteVector y = apply_bands(t.bands(), x);
    for (const auto& term : t.rank_terms()) {
        const Complex c = inner(x, term.right);
        if (c == Complex{}) continue;
        const std::size_t n = std::max(y.size(), term.left.size());
        std::vector<Complex> e(n);
        for (std::size_t i = 0; i < n; ++i) e[i] = y[i] + c * term.left[i];
        y = FiniteVector(std::move(e)).canonical();
    }
    return y;
}

bool is_zero(const StructuredOperator& t, double tol) { return max_abs_entry(t) <= tol; }

double max_entry_difference(const StructuredOperator& a, const StructuredOperator& b) {
    return max_abs_entry(subtract(a, b));
}

double norm_bound(const StructuredOperator& t) {
    double s = 0.0;
    for (const auto& [k, d] : t.bands()) s += sup_abs(d);
    for (const auto& term : t.rank_terms()) s += term.left.norm() * term.right.norm();
    return s;
}

bool is_finite_rank(const StructuredOperator& t) noexcept {
    return std::all_of(t.bands().begin(), t.bands().end(),
                       [](const auto& kv) { return kv.second.tail() == Complex{}; });
}

}  // namespace anops
