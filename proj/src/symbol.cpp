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

#include "anops/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "anops/errors.hpp"

namespace anops {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxSamples = 1 << 20;

double angle(int j, int m) { return kTwoPi * static_cast<double>(j) / static_cast<double>(m); }

template <class F>
double golden_minimize(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return std::min(fc, fd);
}

template <class F>
double circle_minimum(F&& f, int samples) {
    samples = std::max(samples, 16);
    double best = f(0.0);
    int arg = 0;
    for (int j = 1; j < samples; ++j) {
        const double v = f(angle(j, samples));
        if (v < best) {
            best = v;
            arg = j;
        }
    }
    const double step = kTwoPi / samples;
    const double th = angle(arg, samples);
    return std::min(best, golden_minimize(f, th - step, th + step));
}

}  // namespace

LaurentSymbol::LaurentSymbol(std::map<int, Complex> coeffs) {
    for (const auto& [k, c] : coeffs)
        if (c != Complex{}) coeffs_.emplace(k, c);
}

Complex LaurentSymbol::operator()(Complex z) const noexcept {
    Complex s{};
    for (const auto& [k, c] : coeffs_) s += c * std::pow(z, k);
    return s;
}

Complex LaurentSymbol::at_angle(double theta) const noexcept {
    Complex s{};
    for (const auto& [k, c] : coeffs_) s += k == 0 ? c : c * std::polar(1.0, k * theta);
    return s;
}

bool LaurentSymbol::is_constant() const noexcept {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

LaurentSymbol LaurentSymbol::modulus_squared() const {
    std::map<int, Complex> conj;
    for (const auto& [k, c] : coeffs_) conj.emplace(-k, std::conj(c));
    return LaurentSymbol(std::move(conj)) * *this;
}

double LaurentSymbol::coefficient_l1() const noexcept {
    double s = 0.0;
    for (const auto& [k, c] : coeffs_) s += std::abs(c);
    return s;
}

LaurentSymbol operator*(const LaurentSymbol& a, const LaurentSymbol& b) {
    std::map<int, Complex> out;
    for (const auto& [ka, ca] : a.coeffs_)
        for (const auto& [kb, cb] : b.coeffs_) out[ka + kb] += ca * cb;
    return LaurentSymbol(std::move(out));
}

LaurentSymbol symbol(const StructuredOperator& t) {
    std::map<int, Complex> coeffs;
    for (const auto& [k, d] : t.bands()) coeffs.emplace(k, d.tail());
    return LaurentSymbol(std::move(coeffs));
}

std::vector<Complex> symbol_curve(const LaurentSymbol& s, int m) {
    if (m < 16) throw std::invalid_argument("symbol_curve needs at least 16 samples");
    std::vector<Complex> pts(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) pts[static_cast<std::size_t>(j)] = s.at_angle(angle(j, m));
    return pts;
}

int winding(const LaurentSymbol& s, Complex lambda, int m, double on_curve_tol) {
    const double scale = std::max(1.0, s.coefficient_l1());
    m = std::max(m, 16);
    std::vector<Complex> vals;
    while (true) {
        vals.resize(static_cast<std::size_t>(m));
        double min_dist = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) {
            vals[static_cast<std::size_t>(j)] = s.at_angle(angle(j, m)) - lambda;
            min_dist = std::min(min_dist, std::abs(vals[static_cast<std::size_t>(j)]));
        }
        if (min_dist <= on_curve_tol * scale)
            throw PointOnCurve("point lies on the symbol curve");

        double total = 0.0, max_arg = 0.0, max_step = 0.0;
        for (int j = 0; j < m; ++j) {
            const Complex p = vals[static_cast<std::size_t>(j)];
            const Complex q = vals[static_cast<std::size_t>((j + 1) % m)];
            const double d = std::arg(q / p);
            total += d;
            max_arg = std::max(max_arg, std::abs(d));
            max_step = std::max(max_step, std::abs(q - p));
        }
        if (max_arg < std::numbers::pi / 2.0 && min_dist > 0.5 * max_step)
            return static_cast<int>(std::lround(total / kTwoPi));
        if (m >= kMaxSamples)
            throw PointOnCurve("winding did not resolve within the sample cap; point is at the curve");
        m *= 2;
    }
}

int fredholm_index(const StructuredOperator& t, Complex lambda) {
    try {
        return -winding(symbol(t), lambda);
    } catch (const PointOnCurve& e) {
        throw EssentialPoint(e.what());
    }
}

EssentialSpectrum essential_spectrum(const StructuredOperator& t, int samples, double circle_tol) {
    samples = std::max(samples, 16);
    const LaurentSymbol a = symbol(t);
    EssentialSpectrum es;
    es.points = symbol_curve(a, samples);
    es.theta.resize(es.points.size());
    for (int j = 0; j < samples; ++j) es.theta[static_cast<std::size_t>(j)] = angle(j, samples);
    es.is_point = a.is_constant();

    // |a| via sqrt(|a|^2 symbol) keeps monomial symbols exact.
    const LaurentSymbol b = a.modulus_squared();
    std::vector<double> mods(es.points.size());
    double mean = 0.0;
    for (std::size_t j = 0; j < mods.size(); ++j) {
        mods[j] = std::sqrt(std::max(0.0, b.at_angle(es.theta[j]).real()));
        mean += mods[j];
    }
    mean /= static_cast<double>(mods.size());
    double dev = 0.0;
    for (double v : mods) dev = std::max(dev, std::abs(v - mean));
    es.circle_deviation = dev;
    if (dev <= circle_tol * std::max(mean, 1.0)) es.circle_radius = mean;
    return es;
}

double symbol_min_real(const LaurentSymbol& s, int samples) {
    return circle_minimum([&](double th) { return s.at_angle(th).real(); }, samples);
}

double symbol_max_real(const LaurentSymbol& s, int samples) {
    return -circle_minimum([&](double th) { return -s.at_angle(th).real(); }, samples);
}

double ess_min_modulus(const StructuredOperator& t, int samples) {
    return std::sqrt(std::max(0.0, symbol_min_real(symbol(t).modulus_squared(), samples)));
}

double ess_max_modulus(const StructuredOperator& t, int samples) {
    return std::sqrt(std::max(0.0, symbol_max_real(symbol(t).modulus_squared(), samples)));
}

WindingRaster winding_raster(const LaurentSymbol& s, int resolution) {
    resolution = std::max(resolution, 8);
    WindingRaster r;
    r.resolution = resolution;

    std::vector<Complex> pts = symbol_curve(s, 4096);
    auto bbox = [&](double& minx, double& maxx, double& miny, double& maxy) {
        minx = miny = std::numeric_limits<double>::infinity();
        maxx = maxy = -std::numeric_limits<double>::infinity();
        for (auto p : pts) {
            minx = std::min(minx, p.real());
            maxx = std::max(maxx, p.real());
            miny = std::min(miny, p.imag());
            maxy = std::max(maxy, p.imag());
        }
    };
    double minx, maxx, miny, maxy;
    bbox(minx, maxx, miny, maxy);
    double size = std::max(maxx - minx, maxy - miny);
    if (size <= 0.0) size = 1e-6 * std::max(1.0, std::abs(pts.front()));
    r.cell = size / (resolution - 2);
    r.x0 = 0.5 * (minx + maxx) - 0.5 * resolution * r.cell;
    r.y0 = 0.5 * (miny + maxy) - 0.5 * resolution * r.cell;

    auto perimeter = [&] {
        double l = 0.0;
        for (std::size_t j = 0; j < pts.size(); ++j) l += std::abs(pts[(j + 1) % pts.size()] - pts[j]);
        return l;
    };
    double len = perimeter();
    // Segments well below a cell so the polygon tracks the curve.
    const auto want = static_cast<long>(std::ceil(4.0 * len / r.cell));
    if (want > static_cast<long>(pts.size())) {
        int m = static_cast<int>(pts.size());
        while (m < want && m < kMaxSamples) m *= 2;
        pts = symbol_curve(s, m);
        len = perimeter();
    }
    r.perimeter = len;

    r.winding.assign(static_cast<std::size_t>(resolution) * resolution, 0);
    std::vector<std::pair<double, int>> crossings;
    const std::size_t m = pts.size();
    for (int iy = 0; iy < resolution; ++iy) {
        const double y = r.y0 + (iy + 0.5) * r.cell;
        crossings.clear();
        for (std::size_t j = 0; j < m; ++j) {
            const Complex p = pts[j], q = pts[(j + 1) % m];
            int dir = 0;
            if (p.imag() <= y && y < q.imag()) dir = 1;
            else if (q.imag() <= y && y < p.imag()) dir = -1;
            if (dir == 0) continue;
            const double x = p.real() + (y - p.imag()) * (q.real() - p.real()) / (q.imag() - p.imag());
            crossings.emplace_back(x, dir);
        }
        if (crossings.empty()) continue;
        std::sort(crossings.begin(), crossings.end());
        // Sweep right to left: winding at x = signed crossings to the right.
        int acc = 0;
        auto it = crossings.rbegin();
        for (int ix = resolution - 1; ix >= 0; --ix) {
            const double x = r.x0 + (ix + 0.5) * r.cell;
            while (it != crossings.rend() && it->first > x) {
                acc += it->second;
                ++it;
            }
            r.winding[static_cast<std::size_t>(iy) * resolution + ix] = acc;
        }
    }
    return r;
}

std::vector<RasterComponent> bounded_components(const WindingRaster& raster) {
    const int n = raster.resolution;
    const auto idx = [n](int x, int y) { return static_cast<std::size_t>(y) * n + x; };
    std::vector<int> label(raster.winding.size(), -1);
    std::vector<RasterComponent> out;
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};

    int next = 0;
    for (int y0 = 0; y0 < n; ++y0) {
        for (int x0 = 0; x0 < n; ++x0) {
            if (label[idx(x0, y0)] >= 0) continue;
            const int w = raster.at(x0, y0);
            std::vector<std::pair<int, int>> cells;
            std::deque<std::pair<int, int>> queue{{x0, y0}};
            label[idx(x0, y0)] = next;
            bool touches_border = false;
            while (!queue.empty()) {
                auto [x, y] = queue.front();
                queue.pop_front();
                cells.emplace_back(x, y);
                if (x == 0 || y == 0 || x == n - 1 || y == n - 1) touches_border = true;
                for (int d = 0; d < 4; ++d) {
                    const int u = x + dx[d], v = y + dy[d];
                    if (u < 0 || v < 0 || u >= n || v >= n) continue;
                    if (label[idx(u, v)] >= 0 || raster.at(u, v) != w) continue;
                    label[idx(u, v)] = next;
                    queue.emplace_back(u, v);
                }
            }
            const int id = next++;
            if (touches_border) continue;

            // Deepest cell: BFS inward from the component boundary.
            std::vector<int> depth(cells.size(), -1);
            std::map<std::size_t, std::size_t> pos;
            for (std::size_t c = 0; c < cells.size(); ++c) pos[idx(cells[c].first, cells[c].second)] = c;
            std::deque<std::size_t> q2;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                auto [x, y] = cells[c];
                for (int d = 0; d < 4; ++d) {
                    const int u = x + dx[d], v = y + dy[d];
                    if (label[idx(u, v)] != id) {
                        depth[c] = 0;
                        q2.push_back(c);
                        break;
                    }
                }
            }
            std::size_t deepest = q2.empty() ? 0 : q2.front();
            while (!q2.empty()) {
                const std::size_t c = q2.front();
                q2.pop_front();
                if (depth[c] > depth[deepest]) deepest = c;
                auto [x, y] = cells[c];
                for (int d = 0; d < 4; ++d) {
                    const int u = x + dx[d], v = y + dy[d];
                    if (label[idx(u, v)] != id) continue;
                    const std::size_t o = pos[idx(u, v)];
                    if (depth[o] >= 0) continue;
                    depth[o] = depth[c] + 1;
                    q2.push_back(o);
                }
            }
            RasterComponent comp;
            comp.winding = w;
            comp.cells = cells.size();
            comp.area = static_cast<double>(cells.size()) * raster.cell * raster.cell;
            comp.representative = raster.centre(cells[deepest].first, cells[deepest].second);
            out.push_back(comp);
        }
    }
    return out;
}

AreaEstimate spectral_area(const StructuredOperator& t, int resolution) {
    const LaurentSymbol a = symbol(t);
    AreaEstimate est;
    est.resolution = resolution;
    if (a.is_constant()) return est;
    const WindingRaster r = winding_raster(a, resolution);
    std::size_t count = 0;
    for (int w : r.winding)
        if (w != 0) ++count;
    est.area = static_cast<double>(count) * r.cell * r.cell;
    est.error_bound = r.perimeter * r.cell * std::numbers::sqrt2;
    return est;
}

}  // namespace anops
