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
#include <numbers>

#include "anops/catalog.hpp"
#include "anops/summary.hpp"

using namespace anops;

namespace {

Options quick() {
    Options o;
    o.trunc = 64;
    o.resolution = 256;
    return o;
}

}  // namespace

TEST_CASE("right shift summary") {
    const auto s = spectral_summary(catalog::right_shift(), quick());
    REQUIRE(s.ess_is_circle);
    CHECK(*s.ess_is_circle == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(s.weyl_extra.size() == 1);
    CHECK(s.weyl_extra[0].index == -1);
    CHECK(std::abs(s.weyl_extra[0].representative) < 0.1);
    CHECK(s.eigenvalues.empty());
    CHECK(s.ess_min_modulus == 1.0);
    CHECK(s.norm_upper == doctest::Approx(1.0));
    CHECK(std::abs(s.area - std::numbers::pi) <= s.area_error);
}

TEST_CASE("identity and diagonal summaries") {
    const auto id = spectral_summary(catalog::unitary_diag(), quick());
    REQUIRE(id.ess_point);
    CHECK(*id.ess_point == Complex(1.0, 0.0));
    CHECK(id.area == 0.0);

    const auto d = spectral_summary(StructuredOperator::diagonal({0.3, Complex(0, 2), 0.3}, 1.0), quick());
    REQUIRE(d.eigenvalues.size() == 2);
    CHECK(std::abs(d.eigenvalues[0].value - 0.3) < 1e-10);
    CHECK(d.eigenvalues[0].multiplicity == 2);
    CHECK(std::abs(d.eigenvalues[1].value - Complex(0, 2)) < 1e-10);
    CHECK(d.eigenvalues_stabilized);
    REQUIRE(d.min_modulus);
    CHECK(*d.min_modulus == doctest::Approx(0.3));
}

TEST_CASE("compressed shift lists the |T| eigenvalue 1/2") {
    const auto s = spectral_summary(catalog::compressed_shift(), quick());
    REQUIRE(s.modulus_eigenvalues.size() == 1);
    CHECK(s.modulus_eigenvalues[0].value == doctest::Approx(0.5));
    CHECK(s.modulus_eigenvalues[0].multiplicity == 2);
    CHECK(s.eigenvalues.empty());  // 1/2 sits inside the index -1 disc
}

TEST_CASE("summary invariants on random operators") {
    random::Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        const auto t = random::banded(rng, 2, 3, i % 2);
        const auto s = spectral_summary(t, quick());
        CAPTURE(i);
        if (s.min_modulus) CHECK(*s.min_modulus <= s.ess_min_modulus + 1e-12);
        CHECK(s.ess_min_modulus <= s.norm_upper + 1e-12);
        CHECK(s.area >= 0.0);
        for (const auto& e : s.eigenvalues) CHECK(e.multiplicity >= 1);
        for (const auto& w : s.weyl_extra) CHECK(w.index != 0);
    }
}
