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

#include <cmath>
#include <map>
#include <string>

#include "anops/catalog.hpp"
#include "anops/classify.hpp"
#include "anops/errors.hpp"
#include "oracles.hpp"

using namespace anops;

namespace {

Options quick() {
    Options o;
    o.trunc = 64;
    o.resolution = 256;
    return o;
}

struct Expected {
    Verdict sa, normal, hypo, para, an, am;
    double alpha;  // < 0: absent
};

}  // namespace

TEST_CASE("bundled operators classify as documented") {
    const Verdict Y = Verdict::yes, N = Verdict::no;
    const std::map<std::string, Expected> table = {
        {"right_shift", {N, N, Y, Y, Y, N, 1.0}},
        {"example36", {N, N, Y, Y, Y, N, 1.0}},
        {"t1", {N, N, Y, Y, Y, N, 2.0}},
        {"t2", {N, N, Y, Y, Y, N, 3.0}},
        {"unitary_diag", {Y, Y, Y, Y, Y, Y, 1.0}},
        {"selfadjoint_band", {Y, Y, Y, Y, N, N, -1.0}},
    };
    for (const auto& [name, e] : table) {
        CAPTURE(name);
        const auto rep = classify(catalog::bundled(name), quick());
        CHECK(rep.is_self_adjoint == e.sa);
        CHECK(rep.is_normal == e.normal);
        CHECK(rep.is_hyponormal == e.hypo);
        CHECK(rep.is_paranormal == e.para);
        CHECK(rep.is_AN == e.an);
        CHECK(rep.is_AM_normal == e.am);
        CHECK(rep.alpha.has_value() == (e.alpha >= 0));
        if (rep.alpha) CHECK(*rep.alpha == doctest::Approx(e.alpha).epsilon(1e-10));
        CHECK_FALSE(rep.any_undetermined());
    }
}

TEST_CASE("verdict strings round trip") {
    for (Verdict v : {Verdict::no, Verdict::undetermined, Verdict::yes})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(verdict_from_string("maybe"), ParseError);
}

TEST_CASE("hyponormal and paranormal falsifiers") {
    // Weighted shift with weights 2, 1, 1, ...: ||T e0||^2 = 4 > ||T^2 e0|| = 2.
    const StructuredOperator drop(StructuredOperator::BandMap{{1, DiagonalDescriptor({2.0}, 1.0)}});
    CHECK(check_hyponormal(drop, quick()).verdict == Verdict::no);
    const auto p = check_paranormal(drop, quick());
    CHECK(p.verdict == Verdict::no);
    bool has_lambda = false;
    for (const auto& w : p.witnesses) has_lambda |= w.quantity == "failing_lambda";
    CHECK(has_lambda);

    const auto backward = adjoint(catalog::right_shift());
    CHECK(check_hyponormal(backward, quick()).verdict == Verdict::no);
    CHECK(check_paranormal(backward, quick()).verdict == Verdict::no);
    CHECK(check_paranormal(StructuredOperator::zero(), quick()).verdict == Verdict::yes);

    CHECK_THROWS_AS(check_positive(catalog::right_shift(), quick()), NotHermitian);
}

TEST_CASE("normal AN characterization on random diagonal operators") {
    random::Rng rng(2024);
    const Options opt = quick();
    for (int trial = 0; trial < 60; ++trial) {
        const StructuredOperator t = random::diagonal(rng);
        std::vector<Complex> prefix;
        Complex tail = 0.0;
        if (auto it = t.bands().find(0); it != t.bands().end()) {
            prefix = it->second.prefix();
            tail = it->second.tail();
        }
        const double r = std::abs(tail);
        bool near = false;
        for (auto z : prefix) near |= std::abs(std::abs(z) - r) < 1e-6;
        if (near) continue;
        CAPTURE(trial);

        const auto an = check_AN(t, opt);
        REQUIRE(an.verdict == Verdict::yes);
        CHECK(*an.alpha == doctest::Approx(r).epsilon(1e-9));

        const auto rec = check_AN_normal_equivalence(t, opt);
        REQUIRE(rec.applicable);
        CHECK(rec.agree);
        CHECK(rec.disc == Verdict::yes);
        const auto inside = oracle::diagonal_points(prefix, [&](Complex z) { return std::abs(z) < r; });
        REQUIRE(rec.interior_points.size() == inside.size());
        for (std::size_t i = 0; i < inside.size(); ++i)
            CHECK(std::abs(rec.interior_points[i].value - inside[i]) < 1e-9);

        const auto am = check_AM_normal(t, opt);
        CHECK(am.verdict == Verdict::yes);
        const auto outside = oracle::diagonal_points(prefix, [&](Complex z) { return std::abs(z) > r; });
        REQUIRE(am.annulus_points.size() == outside.size());
        for (std::size_t i = 0; i < outside.size(); ++i)
            CHECK(std::abs(am.annulus_points[i].value - outside[i]) < 1e-9);
    }
}

TEST_CASE("normal equivalence refuses non-normal input") {
    const auto rec = check_AN_normal_equivalence(catalog::right_shift(), quick());
    CHECK_FALSE(rec.applicable);
    CHECK_FALSE(check_AM_normal(catalog::right_shift(), quick()).applicable);
}

TEST_CASE("self-adjoint AN classification") {
    const auto t = StructuredOperator::diagonal({0.5, -1.0, 3.0}, 1.0);
    const auto rec = check_AN_selfadjoint(t, quick());
    REQUIRE(rec.applicable);
    CHECK(rec.verdict == Verdict::yes);
    CHECK(*rec.alpha == doctest::Approx(1.0));
    REQUIRE(rec.interior_points.size() == 1);
    CHECK(rec.interior_points[0] == doctest::Approx(0.5));
    REQUIRE(rec.boundary_points.size() == 2);
    CHECK(rec.boundary_points[0] == doctest::Approx(-1.0));
    CHECK(rec.boundary_points[1] == doctest::Approx(1.0));

    CHECK(check_AN_selfadjoint(catalog::selfadjoint_band(), quick()).verdict == Verdict::no);
    CHECK_FALSE(check_AN_selfadjoint(catalog::right_shift(), quick()).applicable);
}

TEST_CASE("Putnam inequality on goldens") {
    const auto r = putnam_check(catalog::right_shift(), 256, quick());
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(1.0).epsilon(0.02));
    CHECK(r.holds);
    const auto u = putnam_check(catalog::unitary_diag(), 256, quick());
    CHECK(u.lhs == 0.0);
    CHECK(u.holds);
}

TEST_CASE("Weyl criterion and paranormal pair") {
    const auto r = weyl_normality_criterion(catalog::right_shift(), quick());
    CHECK(r.premises_hold);
    CHECK_FALSE(r.ess_equals_weyl);
    REQUIRE(r.component_windings.size() == 1);
    CHECK(r.component_windings[0].second == 1);
    CHECK_FALSE(r.contradiction);

    const auto u = weyl_normality_criterion(StructuredOperator::diagonal({2.0}, Complex(0.0, 1.0)), quick());
    CHECK(u.premises_hold);
    CHECK(u.ess_equals_weyl);
    CHECK(u.normal == Verdict::yes);

    const auto p = paranormal_pair_normality(catalog::right_shift(), quick());
    CHECK(p.paranormal == Verdict::yes);
    CHECK(p.adjoint_paranormal == Verdict::no);
    CHECK_FALSE(p.premises_hold);
    CHECK(p.kernel_dim == 0);
    CHECK(p.adjoint_kernel_dim == 1);
    CHECK_FALSE(p.kernels_equal);

    const auto q = paranormal_pair_normality(StructuredOperator::diagonal({0.0, 2.0}, 1.0), quick());
    CHECK(q.premises_hold);
    CHECK(q.normal == Verdict::yes);
    CHECK(q.kernels_equal);
    CHECK(q.kernel_dim == 1);
    CHECK_FALSE(q.contradiction);
}

TEST_CASE("cluster_points merges nearby values") {
    const auto c = cluster_points({{1, 0}, {1 + 1e-12, 0}, {0, 2}, {0.5, 0}}, 1e-9);
    REQUIRE(c.size() == 3);
    CHECK(c[0].value == Complex(0.5, 0));
    CHECK(c[1].multiplicity == 2);
    CHECK(c[2].value == Complex(0, 2));
}
