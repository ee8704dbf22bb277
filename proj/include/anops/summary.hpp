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

#include <optional>
#include <vector>

#include "anops/classify.hpp"
#include "anops/operator.hpp"
#include "anops/symbol.hpp"

namespace anops {

/// A bounded region where the Fredholm index is nonzero.
struct WeylComponent {
    Complex representative;
    int index = 0;  // ind(T - lambda) = -winding
    double area = 0.0;
};

struct SpectralSummary {
    std::vector<double> ess_theta;
    std::vector<Complex> ess_curve;
    std::optional<double> ess_is_circle;
    /// Set when the symbol is constant: sigma_ess is this single point.
    std::optional<Complex> ess_point;
    std::vector<WeylComponent> weyl_extra;
    /// pi_00(T): eigenvalues off sigma_ess in index-zero regions, stable
    /// between truncation sizes.
    std::vector<PointCluster> eigenvalues;
    /// Discrete eigenvalues of |T| below m_e(T).
    std::vector<EigenCluster> modulus_eigenvalues;
    std::optional<double> min_modulus;  // absent when not stabilized
    double ess_min_modulus = 0.0;
    double norm_upper = 0.0;
    double area = 0.0;
    double area_error = 0.0;
    bool eigenvalues_stabilized = true;
};

SpectralSummary spectral_summary(const StructuredOperator& t, const Options& opt);

}  // namespace anops
