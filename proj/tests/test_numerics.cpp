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

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anops/catalog.hpp"
#include "anops/errors.hpp"
#include "anops/numerics.hpp"
#include "anops/symbol.hpp"
#include "oracles.hpp"

using namespace anops;

TEST_CASE("hermitian_eig on small matrices") {
    const auto i3 = hermitian_eig(Matrix::Identity(3, 3));
    CHECK(i3.values(0) == doctest::Approx(1.0));
    CHECK(i3.values(2) == doctest::Approx(1.0));

    Matrix flip(2, 2);
    flip << 0.0, 1.0, 1.0, 0.0;
    const auto f = hermitian_eig(flip);
    CHECK(f.values(0) == doctest::Approx(-1.0));
    CHECK(f.values(1) == doctest::Approx(1.0));

    const auto t = catalog::compressed_shift();
    const auto g = hermitian_eig(truncate(compose(adjoint(t), t), 6));
    const double expect[] = {0.25, 0.25, 1, 1, 1, 1};
    for (int i = 0; i < 6; ++i) CHECK(g.values(i) == doctest::Approx(expect[i]).epsilon(1e-14));
    CHECK((g.vectors.adjoint() * g.vectors - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);

    Matrix bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(hermitian_eig(bad), NotHermitian);
}

TEST_CASE("hermitian_eig matches characteristic polynomial roots") {
    random::Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix m = oracle::random_hermitian3(rng);
        const auto roots = oracle::hermitian3_char_roots(m);
        const auto es = hermitian_eig(m, 1e-10);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(es.values(i) - roots[static_cast<std::size_t>(i)]) < 1e-10);
    }
}

TEST_CASE("svd_polar") {
    const auto id = svd_polar(Matrix::Identity(3, 3));
    CHECK((id.isometry - Matrix::Identity(3, 3)).norm() < 1e-14);
    CHECK((id.positive - Matrix::Identity(3, 3)).norm() < 1e-14);

    const Matrix r4 = truncate(catalog::right_shift(), 4);
    const auto pr = svd_polar(r4);
    CHECK((pr.isometry - r4).norm() < 1e-14);
    Matrix p4 = Matrix::Identity(4, 4);
    p4(3, 3) = 0.0;
    CHECK((pr.positive - p4).norm() < 1e-14);

    Matrix d(2, 2);
    d << -3.0, 0.0, 0.0, 0.0;
    const auto pd = svd_polar(d);
    CHECK(std::abs(pd.isometry(0, 0) - Complex(-1.0)) < 1e-14);
    CHECK(std::abs(pd.positive(0, 0) - Complex(3.0)) < 1e-14);
    CHECK(std::abs(pd.positive(1, 1)) < 1e-14);

    random::Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m(16, 16);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = random::scalar(rng);
        const auto p = svd_polar(m);
        CHECK((p.isometry * p.positive - m).norm() <= 1e-9 * m.norm());
        CHECK((p.positive - p.positive.adjoint()).norm() < 1e-12);
        CHECK(hermitian_eigenvalues(p.positive).minCoeff() > -1e-12);
    }
}

TEST_CASE("isometry_extension") {
    CHECK((isometry_extension(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() < 1e-14);

    const Matrix v = svd_polar(truncate(catalog::right_shift(), 4)).isometry;
    const Matrix s = isometry_extension(v);
    CHECK((s.adjoint() * s - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    // The e3 deficiency is sent onto the e0 cokernel.
    CHECK(std::abs(s(0, 3) - Complex(1.0)) < 1e-12);

    const Matrix zero = Matrix::Zero(1, 1);
    CHECK(isometry_extension(zero)(0, 0) == Complex(1.0));

    CHECK_THROWS_AS(isometry_extension(Matrix::Zero(1, 2)), DimensionMismatch);

    random::Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = Matrix::Zero(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 5; ++j) m(i, j) = random::scalar(rng);
        const Matrix ext = isometry_extension(svd_polar(m).isometry);
        CHECK((ext.adjoint() * ext - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("discrete_eigs_below") {
    const auto gram = StructuredOperator::diagonal({0.25, 0.25}, 1.0);
    const auto r = discrete_eigs_below(gram, 1.0);
    CHECK(r.stabilized);
    REQUIRE(r.eigenvalues.size() == 1);
    CHECK(r.eigenvalues[0].value == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.eigenvalues[0].multiplicity == 2);

    CHECK(discrete_eigs_below(StructuredOperator::identity(), 1.0).eigenvalues.empty());

    const auto d = discrete_eigs_below(StructuredOperator::diagonal({9.0, 4.0}, 25.0), 25.0);
    REQUIRE(d.eigenvalues.size() == 2);
    CHECK(d.eigenvalues[0].value == doctest::Approx(4.0));
    CHECK(d.eigenvalues[1].value == doctest::Approx(9.0));

    CHECK_THROWS_AS(discrete_eigs_below(catalog::right_shift(), 1.0), ValidationError);
}

TEST_CASE("discrete_eigs_below equals the prefix filter on diagonal operators") {
    random::Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> len(0, 8);
        std::uniform_real_distribution<double> val(0.0, 3.0);
        std::vector<Complex> prefix(static_cast<std::size_t>(len(rng)));
        for (auto& z : prefix) z = val(rng);
        const double tail = val(rng);
        const auto p = StructuredOperator::diagonal(prefix, tail);
        const auto expect = oracle::diagonal_values_below(prefix, tail, tail, 1e-8);
        const auto got = discrete_eigs_below(p, tail, 1e-8, 32);
        CHECK(got.stabilized);
        REQUIRE(got.eigenvalues.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) {
            CHECK(std::abs(got.eigenvalues[i].value - expect[i].first) < 1e-8);
            CHECK(got.eigenvalues[i].multiplicity == expect[i].second);
        }
    }
}

TEST_CASE("operator norm and minimum modulus") {
    CHECK(operator_norm(catalog::right_shift()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm(catalog::diagonal_head_shift()) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(operator_norm(StructuredOperator::zero()) == 0.0);
    CHECK(operator_norm(StructuredOperator::diagonal({5.0}, 1.0), 32) == doctest::Approx(5.0));

    CHECK(min_modulus(catalog::right_shift()) == doctest::Approx(1.0));
    CHECK(min_modulus(catalog::compressed_shift()) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(min_modulus(StructuredOperator::zero()) == 0.0);
    CHECK(min_modulus(adjoint(catalog::right_shift()), 1e-8, 64) == doctest::Approx(0.0));
}

TEST_CASE("ess-min never exceeds the interior singular values of truncations by more than rounding") {
    for (const auto& name : catalog::bundled_names()) {
        const auto t = catalog::bundled(name);
        const double me = ess_min_modulus(t);
        const double mm = min_modulus(t, 1e-8, 64);
        CHECK(mm <= me + 1e-6);
    }
}

TEST_CASE("truncation index counting") {
    const auto r = catalog::right_shift();
    CHECK(truncation_index(r, 0.0, 128) == -1);
    CHECK(truncation_index(compose(r, r), 0.0, 128) == -2);
    CHECK(truncation_index(adjoint(r), 0.0, 128) == 1);
    CHECK(truncation_index(r, 2.0, 128) == 0);
    CHECK(truncation_index(r, Complex(0.3, -0.2), 128) == -1);
}
