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

#include "anops/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "anops/errors.hpp"
#include "anops/numerics.hpp"

namespace anops {

namespace {

double opnorm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return singular_values(m)(0);
}

struct Layout {
    Eigen::Index h0 = 0, h1 = 0, extra = 0, h2 = 0;

    explicit Layout(const BlockDecomposition& d)
        : h0(d.h0_dim()), h1(d.h1_dim), extra(d.extra_rows), h2(d.h2_dim()) {}

    Eigen::Index r1() const { return h0; }              // first H1 row
    Eigen::Index r2() const { return h0 + h1 + extra; } // first H2 row
    Eigen::Index rows() const { return h0 + h1 + extra + h2; }
    Eigen::Index cols() const { return h0 + h1 + h2; }
};

// Codomain basis: H0 | H1 | extra coordinates | H2.
Matrix codomain_basis(const BlockDecomposition& dec) {
    const Layout L(dec);
    const auto n = static_cast<Eigen::Index>(dec.n);
    Matrix q = Matrix::Zero(L.rows(), L.rows());
    q.block(0, 0, n, L.h0 + L.h1) = dec.basis.leftCols(L.h0 + L.h1);
    for (Eigen::Index k = 0; k < L.extra; ++k) q(n + k, L.h0 + L.h1 + k) = 1.0;
    q.block(0, L.r2(), n, L.h2) = dec.basis.rightCols(L.h2);
    return q;
}

std::size_t image_rows(const StructuredOperator& t, std::size_t n) {
    std::size_t rows = n + static_cast<std::size_t>(std::max(t.lower_bandwidth(), 0));
    for (const auto& term : t.rank_terms()) rows = std::max(rows, term.left.size());
    return rows;
}

// Groups consecutive sorted values closer than gap; returns index ranges.
std::vector<std::pair<std::size_t, std::size_t>> runs(const std::vector<double>& v, double gap) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i + 1;
        while (j < v.size() && v[j] - v[j - 1] <= gap) ++j;
        out.emplace_back(i, j);
        i = j;
    }
    return out;
}

}  // namespace

int BlockDecomposition::h0_dim() const noexcept {
    int d = 0;
    for (const auto& b : h0_blocks) d += b.dim;
    return d;
}

int BlockDecomposition::h2_dim() const noexcept {
    int d = 0;
    for (const auto& b : h2_blocks) d += b.dim;
    return d;
}

BlockDecomposition structure_decompose(const StructuredOperator& t, std::size_t n, double tol) {
    if (n == 0) throw ValidationError("truncation size must be positive");
    Options opt;
    opt.tol = tol;
    opt.trunc = n;
    const Verdict hypo = check_hyponormal(t, opt).verdict;
    if (hypo == Verdict::no) throw NotHyponormal("operator is not hyponormal");
    if (hypo == Verdict::undetermined) throw NotStabilized("hyponormality could not be decided");
    const LevelResult an = check_AN(t, opt);
    if (an.verdict == Verdict::no) throw NotAN("operator is not absolutely norm attaining");
    if (an.verdict == Verdict::undetermined) throw NotStabilized("AN level could not be decided");

    BlockDecomposition dec;
    dec.n = n;
    dec.alpha = *an.alpha;
    const std::size_t rows = image_rows(t, n);
    dec.extra_rows = static_cast<int>(rows - n);
    const Matrix m = truncate(t, rows, n);

    // Eigenvectors of |T| on the first n coordinates.
    const EigenSystem es = hermitian_eig(svd_polar(m).positive, 1e-8);
    const double at = std::max(100.0 * tol, 1e-10) * std::max(1.0, dec.alpha);
    dec.assign_tol = at;
    std::vector<Eigen::Index> lo, mid, hi;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        const double v = es.values(i);
        if (v < dec.alpha - at) lo.push_back(i);
        else if (v > dec.alpha + at) hi.push_back(i);
        else mid.push_back(i);
    }
    auto span = [&](const std::vector<Eigen::Index>& idx, std::size_t b, std::size_t e) {
        Matrix q(es.vectors.rows(), static_cast<Eigen::Index>(e - b));
        for (std::size_t k = b; k < e; ++k) q.col(static_cast<Eigen::Index>(k - b)) = es.vectors.col(idx[k]);
        return canonical_basis(q);
    };
    auto values_of = [&](const std::vector<Eigen::Index>& idx) {
        std::vector<double> v;
        for (auto i : idx) v.push_back(es.values(i));
        return v;
    };

    std::vector<Matrix> cols;
    {
        const auto v = values_of(hi);
        auto r = runs(v, at);
        std::reverse(r.begin(), r.end());
        for (const auto& [b, e] : r) {
            double mean = 0.0;
            for (std::size_t k = b; k < e; ++k) mean += v[k];
            dec.h0_blocks.push_back({mean / double(e - b), int(e - b), {}});
            cols.push_back(span(hi, b, e));
        }
    }
    dec.h1_dim = static_cast<int>(mid.size());
    cols.push_back(span(mid, 0, mid.size()));
    {
        const auto v = values_of(lo);
        for (const auto& [b, e] : runs(v, at)) {
            double mean = 0.0;
            for (std::size_t k = b; k < e; ++k) mean += v[k];
            dec.h2_blocks.push_back({std::max(mean / double(e - b), 0.0), int(e - b)});
            cols.push_back(span(lo, b, e));
        }
    }
    const auto nn = static_cast<Eigen::Index>(n);
    dec.basis.resize(nn, nn);
    Eigen::Index c = 0;
    for (const auto& q : cols) {
        dec.basis.middleCols(c, q.cols()) = q;
        c += q.cols();
    }

    const Layout L(dec);
    const Matrix conj = codomain_basis(dec).adjoint() * m * dec.basis;

    // Zero pattern: H0 reduces T, H1 is invariant.
    const double ptol = std::max(1e3 * tol, 1e-9) * std::max(1.0, opnorm(m));
    std::ostringstream bad;
    auto expect_zero = [&](const char* name, Eigen::Index r, Eigen::Index c0, Eigen::Index nr, Eigen::Index nc) {
        if (nr == 0 || nc == 0) return;
        const double v = opnorm(conj.block(r, c0, nr, nc));
        if (v > ptol) bad << ' ' << name << '=' << v;
    };
    expect_zero("H0<-rest", 0, L.h0, L.h0, L.h1 + L.h2);
    expect_zero("rest<-H0", L.h0, 0, L.rows() - L.h0, L.h0);
    expect_zero("H2<-H1", L.r2(), L.h0, L.h2, L.h1);
    Eigen::Index off = 0;
    for (std::size_t i = 0; i < dec.h0_blocks.size(); ++i) {
        const auto d = dec.h0_blocks[i].dim;
        expect_zero("H0 off-diagonal", off, 0, d, off);
        expect_zero("H0 off-diagonal", 0, off, off, d);
        off += d;
    }
    if (!bad.str().empty())
        throw TemplateMismatch("conjugated truncation violates the block template (tol " + std::to_string(ptol) +
                               "):" + bad.str());

    off = 0;
    for (auto& b : dec.h0_blocks) {
        b.U = conj.block(off, off, b.dim, b.dim) / b.lambda;
        off += b.dim;
    }
    const Matrix s1 = conj.block(L.r1(), L.h0, L.h1 + L.extra, L.h1);
    if (dec.alpha > at) {
        dec.S1 = s1 / dec.alpha;
    } else {
        // T vanishes on H1; any isometry works, take the inclusion.
        dec.S1 = Matrix::Identity(L.h1 + L.extra, L.h1);
    }
    dec.A = conj.block(L.r1(), L.h0 + L.h1, L.h1 + L.extra, L.h2);
    dec.S2 = conj.block(L.r2(), L.h0 + L.h1, L.h2, L.h2);

    // Advisory surrogates: is alpha attained, do the lambda_i crowd alpha.
    const bool attained = dec.h1_dim > 0;
    const bool limit = !dec.h0_blocks.empty() &&
                       dec.h0_blocks.back().lambda - dec.alpha <= 1e-3 * std::max(1.0, dec.alpha);
    if (dec.h0_blocks.empty()) dec.case_label = "lambda_eq_norm";
    else if (attained) dec.case_label = limit ? "case4" : "case1";
    else dec.case_label = limit ? "case2" : "case3";
    return dec;
}

Matrix assemble_template(const BlockDecomposition& dec) {
    const Layout L(dec);
    Matrix c = Matrix::Zero(L.rows(), L.cols());
    Eigen::Index off = 0;
    for (const auto& b : dec.h0_blocks) {
        c.block(off, off, b.dim, b.dim) = b.lambda * b.U;
        off += b.dim;
    }
    if (L.h1 > 0) c.block(L.r1(), L.h0, L.h1 + L.extra, L.h1) = dec.alpha * dec.S1;
    if (L.h2 > 0) {
        c.block(L.r1(), L.h0 + L.h1, L.h1 + L.extra, L.h2) = dec.A;
        c.block(L.r2(), L.h0 + L.h1, L.h2, L.h2) = dec.S2;
    }
    return c;
}

bool VerificationRecord::passed() const noexcept {
    return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.passed(); });
}

const Residual* VerificationRecord::find(const std::string& name) const noexcept {
    for (const auto& r : residuals)
        if (r.name == name) return &r;
    return nullptr;
}

VerificationRecord verify_decomposition(const BlockDecomposition& dec, const StructuredOperator& t, std::size_t n,
                                        double tol) {
    VerificationRecord rec;
    const Layout L(dec);
    const auto nn = static_cast<Eigen::Index>(n);
    const double inf = std::numeric_limits<double>::infinity();

    const double dim_gap = std::abs(double(L.h0 + L.h1 + L.h2) - double(n));
    rec.residuals.push_back({"dimensions", dim_gap, 0.0});
    if (dim_gap != 0.0 || dec.basis.rows() != nn || dec.basis.cols() != nn) {
        rec.residuals.push_back({"reconstruction", inf, 0.0});
        return rec;
    }

    double order = 0.0;
    for (const auto& b : dec.h0_blocks) order = std::max(order, dec.alpha - b.lambda);
    for (const auto& b : dec.h2_blocks) order = std::max(order, b.delta - dec.alpha);
    rec.residuals.push_back({"level_order", std::max(order, 0.0), 0.0});

    rec.residuals.push_back(
        {"basis_orthonormality", opnorm(dec.basis.adjoint() * dec.basis - Matrix::Identity(nn, nn)),
         std::max(tol, 1e-10)});

    double unitary = 0.0;
    for (const auto& b : dec.h0_blocks) {
        const Matrix id = Matrix::Identity(b.dim, b.dim);
        unitary = std::max({unitary, opnorm(b.U.adjoint() * b.U - id), opnorm(b.U * b.U.adjoint() - id)});
    }
    rec.residuals.push_back({"unitary_U", unitary, tol});

    rec.residuals.push_back(
        {"isometry_S1", opnorm(dec.S1.adjoint() * dec.S1 - Matrix::Identity(L.h1, L.h1)), tol});
    rec.residuals.push_back({"S1_adjoint_A", opnorm(dec.S1.adjoint() * dec.A), tol});

    Matrix levels = Matrix::Zero(L.h2, L.h2);
    Eigen::Index off = 0;
    for (const auto& b : dec.h2_blocks) {
        for (int k = 0; k < b.dim; ++k) levels(off + k, off + k) = b.delta * b.delta;
        off += b.dim;
    }
    const Matrix gram = dec.A.adjoint() * dec.A + dec.S2.adjoint() * dec.S2;
    const Matrix m = truncate(t, n + static_cast<std::size_t>(dec.extra_rows), n);
    const double scale = std::max(1.0, opnorm(m));
    rec.residuals.push_back({"gram_A_S2", opnorm(gram - levels), tol * scale * scale});

    const Matrix recon = codomain_basis(dec) * assemble_template(dec) * dec.basis.adjoint();
    double recon_res = inf;
    if (recon.rows() == m.rows()) recon_res = opnorm(recon - m);
    // Rank terms reaching below n + extra_rows would not fit the codomain.
    rec.residuals.push_back({"reconstruction", recon_res, tol * scale});
    return rec;
}

BlockNormalityRecord normality_from_blocks(const BlockDecomposition& dec, double tol, const StructuredOperator* t) {
    BlockNormalityRecord rec;
    const Eigen::Index h1 = dec.h1_dim;
    if (h1 > 0) {
        const Matrix sq = dec.S1.topRows(h1);
        Eigen::Index bw = 0;
        for (Eigen::Index j = 0; j < h1; ++j)
            for (Eigen::Index i = 0; i < h1; ++i)
                if (std::abs(sq(i, j)) > 1e-9) bw = std::max(bw, std::abs(i - j));
        const Matrix defect = Matrix::Identity(h1, h1) - sq * sq.adjoint();
        if (h1 - 2 * bw > 0) rec.interior_defect = opnorm(defect.block(bw, bw, h1 - 2 * bw, h1 - 2 * bw));

        // A proper isometry leaves rows at the top of its range uncovered.
        const Eigen::Index m = std::max<Eigen::Index>(1, h1 / 2);
        const Matrix w = sq.block(0, 0, m, std::min(h1, m + bw));
        const Eigen::VectorXd s = singular_values(w);
        int rank = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > 1e-6) ++rank;
        rec.corank = static_cast<int>(m) - rank;
    }
    rec.verdict = rec.interior_defect <= std::max(tol, 1e-9) && rec.corank == 0 ? Verdict::yes : Verdict::no;
    if (t) {
        rec.cross_check = check_normal(*t, std::max(tol, 1e-8)).verdict;
        rec.consistent = rec.cross_check == rec.verdict;
    }
    return rec;
}

InclusionRecord spectrum_inclusion_check(const StructuredOperator& t, const BlockDecomposition& dec, double tol) {
    InclusionRecord rec;
    rec.eigenvalues = general_eigenvalues(truncate(t, dec.n));
    const double infl = tol * std::max(1.0, dec.alpha);
    for (const Complex& z : rec.eigenvalues) {
        const double r = std::abs(z);
        double excess = r - dec.alpha;
        for (const auto& b : dec.h0_blocks) excess = std::min(excess, std::abs(r - b.lambda));
        excess = std::max(excess, 0.0);
        rec.max_excess = std::max(rec.max_excess, excess);
        if (excess > infl) rec.violators.push_back(z);
    }
    rec.holds = rec.violators.empty();
    return rec;
}

}  // namespace anops
