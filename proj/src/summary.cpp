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

#include "anops/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anops/errors.hpp"
#include "anops/numerics.hpp"

namespace anops {

namespace {

double distance_to_polyline(const std::vector<Complex>& pts, Complex z) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Complex a = pts[i], b = pts[(i + 1) % m];
        const Complex d = b - a;
        const double len2 = std::norm(d);
        double s = len2 > 0.0 ? std::real((z - a) * std::conj(d)) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        best = std::min(best, std::abs(z - (a + s * d)));
    }
    return best;
}

}  // namespace

SpectralSummary spectral_summary(const StructuredOperator& t, const Options& opt) {
    SpectralSummary out;
    const LaurentSymbol s = symbol(t);
    const EssentialSpectrum es = essential_spectrum(t, opt.samples, opt.circle_tol);
    out.ess_theta = es.theta;
    out.ess_curve = es.points;
    out.ess_is_circle = es.circle_radius;
    if (es.is_point) out.ess_point = es.points.front();

    if (!s.is_constant()) {
        for (const auto& c : bounded_components(winding_raster(s, opt.resolution))) {
            int w = c.winding;
            try {
                w = winding(s, c.representative);
            } catch (const PointOnCurve&) {
            }
            if (w != 0) out.weyl_extra.push_back({c.representative, -w, c.area});
        }
    }

    out.ess_min_modulus = ess_min_modulus(t, opt.samples);
    try {
        out.norm_upper = operator_norm(t, opt.trunc);
    } catch (const NotStabilized&) {
        out.norm_upper = norm_bound(t);
    }
    try {
        out.min_modulus = std::min(min_modulus(t, opt.tol, opt.trunc), out.ess_min_modulus);
    } catch (const NotStabilized&) {
    }

    const StructuredOperator gram = compose(adjoint(t), t);
    const double me2 = out.ess_min_modulus * out.ess_min_modulus;
    for (const auto& c : discrete_eigs_below(gram, me2, opt.tol, opt.trunc).at_larger)
        out.modulus_eigenvalues.push_back({std::sqrt(std::max(c.value, 0.0)), c.multiplicity});

    const AreaEstimate area = spectral_area(t, opt.resolution);
    out.area = area.area;
    out.area_error = area.error_bound;

    // Eigenvalues away from the curve and from nonzero-index holes.
    const double scale = std::max(1.0, out.norm_upper);
    const double gap = 1e-6 * scale;
    auto isolated = [&](Complex z) {
        if (distance_to_polyline(es.points, z) <= gap) return false;
        try {
            return winding(s, z) == 0;
        } catch (const PointOnCurve&) {
            return false;
        }
    };
    const auto st = stable_truncation_eigenvalues(t, opt.trunc, gap, isolated);
    out.eigenvalues = st.values;
    out.eigenvalues_stabilized = st.stabilized;
    return out;
}

}  // namespace anops
