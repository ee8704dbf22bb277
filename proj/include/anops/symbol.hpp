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

#include <map>
#include <optional>
#include <vector>

#include "anops/operator.hpp"

namespace anops {

/// Laurent polynomial a(z) = sum_k coeffs[k] z^k built from the band tails.
class LaurentSymbol {
public:
    LaurentSymbol() = default;
    explicit LaurentSymbol(std::map<int, Complex> coeffs);

    const std::map<int, Complex>& coeffs() const noexcept { return coeffs_; }
    Complex operator()(Complex z) const noexcept;
    Complex at_angle(double theta) const noexcept;
    bool is_constant() const noexcept;
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// |a|^2 as the Laurent polynomial conj(a) * a (the symbol of T*T).
    LaurentSymbol modulus_squared() const;
    /// sum |c_k|, an upper bound for max |a| on the circle.
    double coefficient_l1() const noexcept;

    friend LaurentSymbol operator*(const LaurentSymbol& a, const LaurentSymbol& b);
    friend bool operator==(const LaurentSymbol&, const LaurentSymbol&) = default;

private:
    std::map<int, Complex> coeffs_;
};

LaurentSymbol symbol(const StructuredOperator& t);

/// a(e^{2 pi i j / m}) for j = 0..m-1.  Requires m >= 16.
std::vector<Complex> symbol_curve(const LaurentSymbol& s, int m);

/// Winding number of a - lambda around 0.  Starts at `m` samples and doubles
/// until every consecutive argument step is below pi/2 and the sampled
/// polygon stays farther from lambda than its own segment length.  Throws
/// PointOnCurve when lambda is within `on_curve_tol` of the curve or the
/// 2^20 sample cap is hit.
int winding(const LaurentSymbol& s, Complex lambda, int m = 256, double on_curve_tol = 1e-10);

/// ind(T - lambda) = -winding(symbol(T), lambda).  Throws EssentialPoint on
/// the curve.
int fredholm_index(const StructuredOperator& t, Complex lambda);

struct EssentialSpectrum {
    std::vector<double> theta;
    std::vector<Complex> points;
    /// Mean modulus alpha when max | |a(z_j)| - alpha | <= circle_tol * max(alpha, 1).
    std::optional<double> circle_radius;
    /// The measured max | |a(z_j)| - mean |.
    double circle_deviation = 0.0;
    /// Symbol is constant: sigma_ess is the single point points.front().
    bool is_point = false;
};

EssentialSpectrum essential_spectrum(const StructuredOperator& t, int samples = 1024,
                                     double circle_tol = 1e-9);

/// min over the circle of |a|: inf sigma_ess(|T|).
double ess_min_modulus(const StructuredOperator& t, int samples = 1024);
/// max over the circle of |a|: the essential norm.
double ess_max_modulus(const StructuredOperator& t, int samples = 1024);

/// Min / max over the circle of a real-valued Laurent polynomial (the
/// imaginary part is discarded); sampled then golden-section refined.
double symbol_min_real(const LaurentSymbol& s, int samples = 1024);
double symbol_max_real(const LaurentSymbol& s, int samples = 1024);

/// Winding numbers of the symbol curve on a resolution x resolution grid of
/// cell centres covering the curve's bounding box inflated by one cell.
struct WindingRaster {
    double x0 = 0.0, y0 = 0.0;  // lower-left corner
    double cell = 0.0;          // square cell edge
    int resolution = 0;
    std::vector<int> winding;   // row-major, row = y index
    double perimeter = 0.0;

    int at(int ix, int iy) const { return winding[static_cast<std::size_t>(iy) * resolution + ix]; }
    Complex centre(int ix, int iy) const { return {x0 + (ix + 0.5) * cell, y0 + (iy + 0.5) * cell}; }
};

WindingRaster winding_raster(const LaurentSymbol& s, int resolution = 512);

/// A connected set of raster cells sharing one winding number and not
/// touching the raster border.
struct RasterComponent {
    int winding = 0;
    std::size_t cells = 0;
    double area = 0.0;
    Complex representative;  // cell centre deepest inside the component
};

std::vector<RasterComponent> bounded_components(const WindingRaster& raster);

struct AreaEstimate {
    double area = 0.0;
    /// perimeter x cell diagonal
    double error_bound = 0.0;
    int resolution = 0;
};

/// Area of {lambda : winding(a, lambda) != 0}, i.e. sigma_ess together with
/// the nonzero-index holes.
AreaEstimate spectral_area(const StructuredOperator& t, int resolution = 512);

}  // namespace anops
