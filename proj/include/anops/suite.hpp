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

#include <cstdint>
#include <string>
#include <vector>

#include "anops/classify.hpp"

namespace anops {

struct SuiteResult {
    std::string name;
    int cases = 0;      // operators examined
    int applicable = 0; // operators meeting the premises
    std::vector<std::string> violations;

    bool passed() const noexcept { return violations.empty(); }
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    int random_cases = 50;
    /// Checks use a small truncation; the random operators have short heads.
    Options checks = [] {
        Options o;
        o.trunc = 32;
        o.resolution = 256;
        return o;
    }();
    /// Perturb one block of a golden decomposition before verifying it.
    bool inject_corruption = false;
};

/// Bundled operators against their documented verdicts, plus decomposition
/// round trips on the hyponormal AN ones.
SuiteResult golden_suite(const SuiteOptions& opt);
/// Finite-rank hyponormal operators are normal.
SuiteResult compact_hyponormal_suite(const SuiteOptions& opt);
/// ||T*T - TT*|| <= Area(sigma(T)) / pi for hyponormal T.
SuiteResult putnam_suite(const SuiteOptions& opt);
/// Hyponormal AN with sigma_ess = omega implies normal.
SuiteResult weyl_suite(const SuiteOptions& opt);
/// T, T* paranormal and T AN implies normal; likewise T paranormal AN with
/// N(T) = N(T*).
SuiteResult paranormal_pair_suite(const SuiteOptions& opt);

std::vector<SuiteResult> run_verify_suite(const SuiteOptions& opt);

}  // namespace anops
