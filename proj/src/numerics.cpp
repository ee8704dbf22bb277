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

#include "anops/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "anops/errors.hpp"
#include "anops/symbol.hpp"

namespace anops {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

std::size_t working_size(const StructuredOperator& t, std::size_t n) {
    const std::size_t floor = t.support_extent() + 2 * static_cast<std::size_t>(t.bandwidth()) + 1;
    return std::max(n, floor);
}

bool is_real(const Matrix& m) noexcept {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j).imag() != 0.0) return false;
    return true;
}

EigenSystem hermitian_eig(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) throw NotHermitian("matrix is not square");
    const double scale = std::max(1.0, max_abs(m));
    if (max_abs(m - m.adjoint()) > 1e-12 * scale) throw NotHermitian("matrix is not Hermitian");

    EigenSystem es;
    if (m.size() == 0) return es;
    if (is_real(m)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
        if (solver.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver failed");
        es.values = solver.eigenvalues();
        es.vectors = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
        if (solver.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver failed");
        es.values = solver.eigenvalues();
        es.vectors = solver.eigenvectors();
    }
    const double norm = std::max(es.values.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    double res = 0.0;
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
        const Vector r = m * es.vectors.col(j) - es.values(j) * es.vectors.col(j);
        res = std::max(res, r.norm() / norm);
    }
    if (es.values.cwiseAbs().maxCoeff() == 0.0) res = 0.0;
    es.residual = res;
    if (res > tol) throw ConvergenceFailure("eigen residual above tolerance");
    return es;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    if (m.size() == 0) return {};
    if (is_real(m)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real(), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver failed");
        return solver.eigenvalues();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver failed");
    return solver.eigenvalues();
}

std::vector<Complex> general_eigenvalues(const Matrix& m) {
    std::vector<Complex> out;
    if (m.size() == 0) return out;
    Eigen::VectorXcd ev;
    if (is_real(m)) {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(m.real(), false);
        if (solver.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed");
        ev = solver.eigenvalues();
    } else {
        Eigen::ComplexEigenSolver<Matrix> solver(m, false);
        if (solver.info() != Eigen::Success) throw ConvergenceFailure("eigensolver failed");
        ev = solver.eigenvalues();
    }
    out.assign(ev.data(), ev.data() + ev.size());
    return out;
}

Eigen::VectorXd singular_values(const Matrix& m) {
    if (m.size() == 0) return {};
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
}

Polar svd_polar(const Matrix& m) {
    Polar p;
    if (m.size() == 0) {
        p.isometry = Matrix::Zero(m.rows(), m.cols());
        p.positive = Matrix::Zero(m.cols(), m.cols());
        return p;
    }
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw ConvergenceFailure("SVD failed");
    const Eigen::VectorXd& s = svd.singularValues();
    const double cut = static_cast<double>(std::max(m.rows(), m.cols())) *
                       std::numeric_limits<double>::epsilon() * (s.size() ? s(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    const Matrix& u = svd.matrixU();
    const Matrix& v = svd.matrixV();
    p.isometry = u.leftCols(rank) * v.leftCols(rank).adjoint();
    p.positive = v.leftCols(rank) * s.head(rank).asDiagonal() * v.leftCols(rank).adjoint();
    p.positive = 0.5 * (p.positive + p.positive.adjoint()).eval();
    return p;
}

Matrix canonical_basis(const Matrix& q) {
    const Eigen::Index n = q.rows();
    const Eigen::Index d = q.cols();
    Matrix out(n, d);
    if (d == 0) return out;
    Eigen::Index found = 0;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (double threshold : {1e-3, 1e-10}) {
        for (Eigen::Index k = 0; k < n && found < d; ++k) {
            if (used[static_cast<std::size_t>(k)]) continue;
            Vector v = q * q.row(k).adjoint();  // P e_k
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index c = 0; c < found; ++c) v -= out.col(c) * out.col(c).dot(v);
            const double nv = v.norm();
            if (nv <= threshold) continue;
            out.col(found++) = v / nv;
            used[static_cast<std::size_t>(k)] = true;
        }
    }
    if (found < d) throw ConvergenceFailure("canonical basis lost rank");
    return out;
}

Matrix null_space(const Matrix& m, double rel_tol) {
    if (m.cols() == 0) return Matrix(0, 0);
    if (m.rows() == 0) return canonical_basis(Matrix::Identity(m.cols(), m.cols()));
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cut = rel_tol * std::max(s.size() ? s(0) : 0.0, 1e-300);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cut) ++rank;
    const Matrix basis = svd.matrixV().rightCols(m.cols() - rank);
    return canonical_basis(basis);
}

Matrix isometry_extension(const Matrix& v, double tol) {
    const Matrix g = v.adjoint() * v;
    if (max_abs(g * g - g) > tol) throw ValidationError("V*V is not an orthogonal projection");
    const Matrix kernel = null_space(v, 1e-6);
    const Matrix cokernel = null_space(v.adjoint(), 1e-6);
    if (kernel.cols() > cokernel.cols())
        throw DimensionMismatch("null space of V exceeds the orthogonal complement of its range; "
                                "increase the truncation size");
    Matrix s = v;
    if (kernel.cols() > 0) s += cokernel.leftCols(kernel.cols()) * kernel.adjoint();
    return s;
}

std::vector<EigenCluster> cluster_values(const std::vector<double>& sorted, double gap) {
    std::vector<EigenCluster> out;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        double sum = sorted[i];
        while (j < sorted.size() && sorted[j] - sorted[j - 1] <= gap) sum += sorted[j++];
        out.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

DiscreteEigenReport discrete_eigs_below(const StructuredOperator& p, double bound, double tol,
                                        std::size_t n) {
    const double scale = std::max(1.0, norm_bound(p));
    if (max_entry_difference(p, adjoint(p)) > 1e-12 * scale)
        throw ValidationError("discrete_eigs_below needs a self-adjoint operator");

    n = working_size(p, n);
    const std::size_t cap = 4096;
    if (2 * n > cap) n = cap / 2;
    const Matrix big = truncate(p, 2 * n);
    const auto small_n = static_cast<Eigen::Index>(n);

    auto below = [&](const Eigen::VectorXd& ev) {
        std::vector<double> v;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev(i) < bound - tol) v.push_back(ev(i));
        std::sort(v.begin(), v.end());
        return cluster_values(v, 100.0 * tol);
    };
    const auto a = below(hermitian_eigenvalues(big.topLeftCorner(small_n, small_n)));
    const auto b = below(hermitian_eigenvalues(big));

    DiscreteEigenReport rep;
    rep.sizes_used = {n, 2 * n};
    rep.at_larger = b;
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
        same = a[i].multiplicity == b[i].multiplicity && std::abs(a[i].value - b[i].value) <= tol;
    rep.stabilized = same;
    rep.eigenvalues = b;
    return rep;
}

double operator_norm(const StructuredOperator& t, std::size_t n) {
    const double ess = ess_max_modulus(t);
    if (t.bands().empty() && t.rank_terms().empty()) return 0.0;
    n = working_size(t, n);
    if (2 * n > 4096) n = 2048;
    const Matrix gram = truncate(compose(adjoint(t), t), 2 * n);
    const auto k = static_cast<Eigen::Index>(n);
    const double s1 = std::sqrt(std::max(0.0, hermitian_eigenvalues(gram.topLeftCorner(k, k)).maxCoeff()));
    const double s2 = std::sqrt(std::max(0.0, hermitian_eigenvalues(gram).maxCoeff()));
    const double eps = 1e-8 * std::max(1.0, s2);
    if (std::abs(s2 - s1) > eps && s2 > ess + eps)
        throw NotStabilized("operator norm estimate still moving between truncation sizes");
    return std::max({ess, s1, s2});
}

double min_modulus(const StructuredOperator& t, double tol, std::size_t n) {
    const StructuredOperator gram = compose(adjoint(t), t);
    const double ess = std::max(0.0, symbol_min_real(symbol(gram)));
    const DiscreteEigenReport rep = discrete_eigs_below(gram, ess, tol, n);
    if (!rep.stabilized) throw NotStabilized("discrete spectrum of T*T did not stabilize");
    double m = ess;
    if (!rep.eigenvalues.empty()) m = std::min(m, rep.eigenvalues.front().value);
    return std::sqrt(std::max(0.0, m));
}

int kernel_dimension(const StructuredOperator& t, std::size_t n, double rel_tol) {
    std::size_t rows = n + static_cast<std::size_t>(t.lower_bandwidth());
    for (const auto& term : t.rank_terms()) rows = std::max(rows, term.left.size());
    const Matrix m = truncate(t, rows, n);
    const Eigen::VectorXd ev = hermitian_eigenvalues(m.adjoint() * m);
    if (ev.size() == 0) return 0;
    const double top = std::max(ev.maxCoeff(), 0.0);
    if (top == 0.0) return static_cast<int>(n);
    int count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) <= rel_tol * rel_tol * top) ++count;
    return count;
}

int truncation_index(const StructuredOperator& t, Complex lambda, std::size_t n, double rel_tol) {
    const StructuredOperator shifted = subtract(t, StructuredOperator::shift(0, lambda));
    return kernel_dimension(shifted, n, rel_tol) - kernel_dimension(adjoint(shifted), n, rel_tol);
}

}  // namespace anops
