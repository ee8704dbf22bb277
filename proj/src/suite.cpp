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

#include "anops/suite.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "anops/catalog.hpp"
#include "anops/decomposition.hpp"
#include "anops/errors.hpp"

namespace anops {

namespace {

struct Golden {
    Verdict sa, normal, hypo, para, an;
    double alpha;  // < 0: no level
    bool decompose;
};

const std::map<std::string, Golden>& golden_table() {
    const Verdict Y = Verdict::yes, N = Verdict::no;
    static const std::map<std::string, Golden> table = {
        {"right_shift", {N, N, Y, Y, Y, 1.0, true}},
        {"example36", {N, N, Y, Y, Y, 1.0, true}},
        {"t1", {N, N, Y, Y, Y, 2.0, true}},
        {"t2", {N, N, Y, Y, Y, 3.0, true}},
        {"unitary_diag", {Y, Y, Y, Y, Y, 1.0, true}},
        {"selfadjoint_band", {Y, Y, Y, Y, N, -1.0, false}},
    };
    return table;
}

std::string label(const std::string& kind, int i) { return kind + "#" + std::to_string(i); }

// Bundled operators followed by seeded random ones of the given kinds.
std::vector<std::pair<std::string, StructuredOperator>> population(const SuiteOptions& opt, bool hyponormal_only) {
    std::vector<std::pair<std::string, StructuredOperator>> out;
    for (const auto& name : catalog::bundled_names()) out.emplace_back(name, catalog::bundled(name));
    random::Rng rng(opt.seed);
    for (int i = 0; i < opt.random_cases; ++i) out.emplace_back(label("hyponormal_band", i), random::hyponormal_band(rng));
    if (!hyponormal_only) {
        for (int i = 0; i < opt.random_cases; ++i) out.emplace_back(label("finite_rank", i), random::finite_rank(rng));
        for (int i = 0; i < opt.random_cases; ++i) out.emplace_back(label("diagonal", i), random::diagonal(rng));
    }
    return out;
}

}  // namespace

SuiteResult golden_suite(const SuiteOptions& opt) {
    SuiteResult r;
    r.name = "golden";
    Options o = opt.checks;
    o.trunc = 64;
    for (const auto& [name, g] : golden_table()) {
        ++r.cases;
        const StructuredOperator t = catalog::bundled(name);
        const ClassificationReport c = classify(t, o);
        auto expect = [&](const char* what, Verdict got, Verdict want) {
            if (got != want)
                r.violations.push_back(name + ": " + what + " = " + to_string(got) + ", expected " + to_string(want));
        };
        expect("is_self_adjoint", c.is_self_adjoint, g.sa);
        expect("is_normal", c.is_normal, g.normal);
        expect("is_hyponormal", c.is_hyponormal, g.hypo);
        expect("is_paranormal", c.is_paranormal, g.para);
        expect("is_AN", c.is_AN, g.an);
        if ((g.alpha >= 0) != c.alpha.has_value() || (c.alpha && std::abs(*c.alpha - g.alpha) > 1e-9))
            r.violations.push_back(name + ": alpha mismatch");
        if (!g.decompose) continue;
        ++r.applicable;
        try {
            BlockDecomposition dec = structure_decompose(t, 64, 1e-8);
            if (opt.inject_corruption && name == "example36" && dec.A.size() > 0) dec.A(0, 0) += 0.1;
            const VerificationRecord v = verify_decomposition(dec, t, 64, 1e-8);
            for (const auto& res : v.residuals)
                if (!res.passed()) {
                    std::ostringstream m;
                    m << name << ": decomposition invariant " << res.name << " residual " << res.value
                      << " exceeds " << res.threshold;
                    r.violations.push_back(m.str());
                }
        } catch (const Error& e) {
            r.violations.push_back(name + ": decomposition failed: " + e.what());
        }
    }
    return r;
}

SuiteResult compact_hyponormal_suite(const SuiteOptions& opt) {
    SuiteResult r;
    r.name = "compact_hyponormal";
    random::Rng rng(opt.seed ^ 0x5eedULL);
    Options strict = opt.checks;
    strict.tol = 1e-10;
    const int count = 4 * opt.random_cases;
    for (int i = 0; i < count; ++i) {
        const StructuredOperator t = random::finite_rank(rng);
        ++r.cases;
        if (check_hyponormal(t, strict).verdict != Verdict::yes) continue;
        ++r.applicable;
        if (check_normal(t, 1e-8).verdict != Verdict::yes)
            r.violations.push_back(label("finite_rank", i) + ": hyponormal but not normal");
    }
    return r;
}

SuiteResult putnam_suite(const SuiteOptions& opt) {
    SuiteResult r;
    r.name = "putnam";
    for (const auto& [name, t] : population(opt, true)) {
        ++r.cases;
        if (check_hyponormal(t, opt.checks).verdict != Verdict::yes) continue;
        ++r.applicable;
        const PutnamRecord p = putnam_check(t, opt.checks.resolution, opt.checks);
        if (p.lhs > p.rhs + p.grid_error + 1e-6) {
            std::ostringstream m;
            m << name << ": commutator norm " << p.lhs << " exceeds area bound " << p.rhs << " + " << p.grid_error;
            r.violations.push_back(m.str());
        }
    }
    return r;
}

SuiteResult weyl_suite(const SuiteOptions& opt) {
    SuiteResult r;
    r.name = "weyl";
    for (const auto& [name, t] : population(opt, false)) {
        ++r.cases;
        const WeylRecord w = weyl_normality_criterion(t, opt.checks);
        if (!(w.premises_hold && w.ess_equals_weyl)) continue;
        ++r.applicable;
        if (w.contradiction) r.violations.push_back(name + ": hyponormal AN with sigma_ess = omega but not normal");
    }
    return r;
}

SuiteResult paranormal_pair_suite(const SuiteOptions& opt) {
    SuiteResult r;
    r.name = "paranormal_pair";
    for (const auto& [name, t] : population(opt, false)) {
        ++r.cases;
        const ParanormalPairRecord p = paranormal_pair_normality(t, opt.checks);
        if (p.premises_hold || p.kernel_premises_hold) ++r.applicable;
        if (p.contradiction) r.violations.push_back(name + ": T and T* paranormal, T AN, but not normal");
        if (p.kernel_contradiction)
            r.violations.push_back(name + ": T paranormal AN with N(T) = N(T*), but not normal");
    }
    return r;
}

std::vector<SuiteResult> run_verify_suite(const SuiteOptions& opt) {
    return {golden_suite(opt), compact_hyponormal_suite(opt), putnam_suite(opt), weyl_suite(opt),
            paranormal_pair_suite(opt)};
}

}  // namespace anops
