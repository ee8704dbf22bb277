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

#include "anops/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "anops/errors.hpp"
#include "anops/symbol.hpp"

namespace anops {

namespace {

constexpr double kPi = 3.14159265358979323846;

double match_tolerance(const StructuredOperator& t) { return 1e-6 * std::max(1.0, norm_bound(t)); }

// Samples a real-valued symbol and reports (mean, max deviation from it).
std::pair<Complex, double> symbol_spread(const LaurentSymbol& s, int samples) {
    if (s.is_zero()) return {0.0, 0.0};
    const auto pts = symbol_curve(s, std::max(samples, 16));
    Complex mean = std::accumulate(pts.begin(), pts.end(), Complex{0.0}) / static_cast<double>(pts.size());
    double dev = 0.0;
    for (const auto& p : pts) dev = std::max(dev, std::abs(p - mean));
    return {mean, dev};
}

double safe_norm(const StructuredOperator& t, std::size_t n) {
    try {
        return operator_norm(t, n);
    } catch (const NotStabilized&) {
        return norm_bound(t);
    }
}

bool same_clusters(const std::vector<PointCluster>& a, const std::vector<PointCluster>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j) {
            if (used[j] || b[j].multiplicity != x.multiplicity) continue;
            if (std::abs(b[j].value - x.value) <= tol) used[j] = found = true;
        }
        if (!found) return false;
    }
    return true;
}

bool same_real_clusters(const std::vector<EigenCluster>& a, const std::vector<EigenCluster>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].multiplicity != b[i].multiplicity || std::abs(a[i].value - b[i].value) > tol) return false;
    return true;
}

}  // namespace

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::no: return "no";
        case Verdict::yes: return "yes";
        default: return "undetermined";
    }
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "no") return Verdict::no;
    if (s == "yes") return Verdict::yes;
    if (s == "undetermined") return Verdict::undetermined;
    throw ParseError("unknown verdict '" + s + "'");
}

bool ClassificationReport::any_undetermined() const noexcept {
    for (Verdict v : {is_self_adjoint, is_normal, is_hyponormal, is_paranormal, is_AN, is_AM_normal})
        if (v == Verdict::undetermined) return true;
    return false;
}

std::vector<PointCluster> cluster_points(const std::vector<Complex>& values, double gap) {
    const std::size_t n = values.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    // Sort by real part so each point only scans a window of neighbours.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a].real() < values[b].real(); });
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n && values[order[b]].real() - values[order[a]].real() <= gap; ++b)
            if (std::abs(values[order[a]] - values[order[b]]) <= gap) parent[find(order[a])] = find(order[b]);

    std::map<std::size_t, std::pair<Complex, int>> acc;
    for (std::size_t i = 0; i < n; ++i) {
        auto& slot = acc[find(i)];
        slot.first += values[i];
        ++slot.second;
    }
    std::vector<PointCluster> out;
    for (const auto& [root, v] : acc) out.push_back({v.first / static_cast<double>(v.second), v.second});
    std::sort(out.begin(), out.end(), [](const PointCluster& a, const PointCluster& b) {
        const double ma = std::abs(a.value), mb = std::abs(b.value);
        if (std::abs(ma - mb) > 1e-12) return ma < mb;
        return std::arg(a.value) < std::arg(b.value);
    });
    return out;
}

StableEigenvalues stable_truncation_eigenvalues(const StructuredOperator& t, std::size_t n, double match_tol,
                                                const std::function<bool(Complex)>& keep) {
    n = working_size(t, n);
    if (2 * n > 4096) n = 2048;
    auto at = [&](std::size_t k) {
        std::vector<Complex> kept;
        for (const Complex& z : general_eigenvalues(truncate(t, k)))
            if (keep(z)) kept.push_back(z);
        return cluster_points(kept, match_tol);
    };
    const auto a = at(n);
    StableEigenvalues out;
    out.values = at(2 * n);
    out.stabilized = same_clusters(a, out.values, match_tol);
    return out;
}

CheckResult check_self_adjoint(const StructuredOperator& t, double tol) {
    const double d = max_entry_difference(t, adjoint(t));
    return {d <= tol ? Verdict::yes : Verdict::no, {{"self_adjoint", "max_entry_difference", d}}};
}

CheckResult check_normal(const StructuredOperator& t, double tol) {
    const StructuredOperator c = self_commutator(t);
    const double d = max_entry_difference(c, StructuredOperator::zero());
    return {d <= tol ? Verdict::yes : Verdict::no, {{"normal", "max_commutator_entry", d}}};
}

CheckResult check_positive(const StructuredOperator& d, const Options& opt) {
    const double scale = std::max(1.0, norm_bound(d));
    if (max_entry_difference(d, adjoint(d)) > 1e-10 * scale)
        throw NotHermitian("positivity test needs a self-adjoint operator");

    CheckResult r;
    const LaurentSymbol s = symbol(d);
    const double smin = s.is_zero() ? 0.0 : symbol_min_real(s, opt.samples);
    r.witnesses.push_back({"positive", "symbol_min", smin});
    if (smin < -opt.tol) {
        r.verdict = Verdict::no;
        return r;
    }

    // Shift so the compression is positive; eigenvalues below c - tol are
    // eigenvalues of d below -tol.
    const double c = scale + 1.0;
    const StructuredOperator p = add(d, StructuredOperator::shift(0, c));
    const DiscreteEigenReport rep = discrete_eigs_below(p, c, opt.tol, opt.trunc);
    if (rep.at_larger.empty()) {
        r.verdict = Verdict::yes;
        return r;
    }
    const double lowest = rep.at_larger.front().value - c;
    r.witnesses.push_back({"positive", "min_compression_eigenvalue", lowest});
    // A compression eigenvalue is a Rayleigh quotient, so a clear negative
    // value refutes positivity even if the list is still moving.
    r.verdict = rep.stabilized || lowest < -100.0 * opt.tol ? Verdict::no : Verdict::undetermined;
    return r;
}

CheckResult check_hyponormal(const StructuredOperator& t, const Options& opt) {
    CheckResult r = check_positive(self_commutator(t), opt);
    for (auto& w : r.witnesses) w.check = "hyponormal";
    return r;
}

std::vector<double> default_paranormal_grid(const StructuredOperator& t, const Options& opt) {
    if (!opt.paranormal_grid.empty()) return opt.paranormal_grid;
    const double nt = safe_norm(t, opt.trunc);
    if (nt == 0.0) return {};
    double m = 0.0;
    try {
        m = min_modulus(t, opt.tol, opt.trunc);
    } catch (const NotStabilized&) {
    }
    const double lo = std::max(m * m, 1e-6 * nt * nt) / 10.0;
    const double hi = 10.0 * nt * nt;
    const int k = std::max(opt.grid_points, 2);
    std::vector<double> grid(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) grid[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, double(i) / (k - 1));
    return grid;
}

CheckResult check_paranormal(const StructuredOperator& t, const Options& opt) {
    const auto grid = default_paranormal_grid(t, opt);
    CheckResult r;
    r.verdict = Verdict::yes;
    if (grid.empty()) {
        r.witnesses.push_back({"paranormal", "norm", 0.0});
        return r;
    }
    r.witnesses.push_back({"paranormal", "grid_min", grid.front()});
    r.witnesses.push_back({"paranormal", "grid_max", grid.back()});

    const StructuredOperator ts = adjoint(t);
    const StructuredOperator g1 = compose(ts, t);
    const StructuredOperator t2 = compose(t, t);
    const StructuredOperator g2 = compose(adjoint(t2), t2);
    // Positivity is scale invariant; divide by lambda^2 to keep entries O(1).
    for (double lam : grid) {
        const StructuredOperator d =
            add(scale(1.0 / (lam * lam), g2), add(scale(-2.0 / lam, g1), StructuredOperator::identity()));
        const CheckResult pr = check_positive(d, opt);
        if (pr.verdict == Verdict::yes) continue;
        r.witnesses.push_back({"paranormal", "failing_lambda", lam});
        for (const auto& w : pr.witnesses) r.witnesses.push_back({"paranormal", w.quantity, w.value * lam * lam});
        if (pr.verdict == Verdict::no) {
            r.verdict = Verdict::no;
            return r;
        }
        r.verdict = Verdict::undetermined;
    }
    return r;
}

LevelResult check_AN_positive(const StructuredOperator& p, const Options& opt) {
    LevelResult r;
    const auto [mean, dev] = symbol_spread(symbol(p), opt.samples);
    const double level = mean.real();
    r.witnesses.push_back({"AN", "symbol_deviation", dev});
    if (dev > opt.circle_tol * std::max(1.0, std::abs(level))) {
        // sigma_ess is the whole range of the symbol, not a single point.
        r.verdict = Verdict::no;
        return r;
    }
    if (level < -opt.tol) throw ValidationError("AN level test needs a positive operator");
    const double alpha2 = std::max(level, 0.0);
    const DiscreteEigenReport rep = discrete_eigs_below(p, alpha2, opt.tol, opt.trunc);
    r.witnesses.push_back({"AN", "eigenvalues_below_level", static_cast<double>(rep.at_larger.size())});
    if (!rep.stabilized) {
        r.verdict = Verdict::undetermined;
        return r;
    }
    r.verdict = Verdict::yes;
    r.alpha = alpha2;
    return r;
}

LevelResult check_AN(const StructuredOperator& t, const Options& opt) {
    LevelResult r = check_AN_positive(compose(adjoint(t), t), opt);
    if (r.alpha) r.alpha = std::sqrt(*r.alpha);
    return r;
}

NormalANRecord check_AN_normal_equivalence(const StructuredOperator& t, const Options& opt) {
    NormalANRecord rec;
    if (check_normal(t, opt.tol).verdict != Verdict::yes) return rec;
    rec.applicable = true;

    const LevelResult an = check_AN(t, opt);
    rec.an = an.verdict;
    rec.alpha = an.alpha;
    rec.witnesses = an.witnesses;

    const EssentialSpectrum es = essential_spectrum(t, opt.samples, opt.circle_tol);
    if (!es.circle_radius) {
        rec.witnesses.push_back({"AN_normal", "circle_deviation", es.circle_deviation});
        rec.disc = rec.circles = Verdict::no;
    } else {
        const double a = *es.circle_radius;
        rec.witnesses.push_back({"AN_normal", "circle_radius", a});
        if (!rec.alpha) rec.alpha = a;
        const auto inside = stable_truncation_eigenvalues(t, opt.trunc, match_tolerance(t),
                                                          [&](Complex z) { return std::abs(z) < a - opt.tol; });
        rec.interior_points = inside.values;
        rec.disc = inside.stabilized ? Verdict::yes : Verdict::undetermined;
        std::vector<double> mods;
        for (const auto& c : inside.values) mods.push_back(std::abs(c.value));
        std::sort(mods.begin(), mods.end());
        for (const auto& c : cluster_values(mods, match_tolerance(t))) rec.radii.push_back(c.value);
        rec.radii.push_back(a);
        rec.circles = rec.disc;
    }
    rec.agree = rec.an == rec.disc && rec.disc == rec.circles;
    return rec;
}

SelfAdjointANRecord check_AN_selfadjoint(const StructuredOperator& t, const Options& opt) {
    SelfAdjointANRecord rec;
    if (check_self_adjoint(t, opt.tol).verdict != Verdict::yes) return rec;
    rec.applicable = true;
    const auto [mean, dev] = symbol_spread(symbol(t), opt.samples);
    rec.witnesses.push_back({"AN_selfadjoint", "symbol_deviation", dev});
    // A real continuous symbol hits {-alpha, alpha} only when it is constant.
    if (dev > opt.circle_tol * std::max(1.0, std::abs(mean))) {
        rec.verdict = Verdict::no;
        return rec;
    }
    const double a = std::abs(mean.real());
    rec.alpha = a;

    std::size_t n = working_size(t, opt.trunc);
    if (2 * n > 4096) n = 2048;
    const Matrix big = truncate(t, 2 * n);
    const double mt = match_tolerance(t);
    auto split = [&](const Eigen::VectorXd& ev, std::vector<double>& in, std::vector<double>& on) {
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            if (std::abs(ev(i)) < a - opt.tol) in.push_back(ev(i));
            else if (std::abs(std::abs(ev(i)) - a) <= std::max(opt.tol, mt)) on.push_back(ev(i));
        }
    };
    std::vector<double> in_a, on_a, in_b, on_b;
    const auto k = static_cast<Eigen::Index>(n);
    split(hermitian_eigenvalues(big.topLeftCorner(k, k)), in_a, on_a);
    split(hermitian_eigenvalues(big), in_b, on_b);
    const auto ca = cluster_values(in_a, mt), cb = cluster_values(in_b, mt);
    for (const auto& c : cb) rec.interior_points.push_back(c.value);
    for (const auto& c : cluster_values(on_b, mt)) rec.boundary_points.push_back(c.value);
    rec.verdict = same_real_clusters(ca, cb, mt) ? Verdict::yes : Verdict::undetermined;
    return rec;
}

AMRecord check_AM_normal(const StructuredOperator& t, const Options& opt) {
    AMRecord rec;
    if (check_normal(t, opt.tol).verdict != Verdict::yes) return rec;
    rec.applicable = true;
    const EssentialSpectrum es = essential_spectrum(t, opt.samples, opt.circle_tol);
    if (!es.circle_radius) {
        rec.witnesses.push_back({"AM_normal", "circle_deviation", es.circle_deviation});
        rec.verdict = Verdict::no;
        return rec;
    }
    const double b = *es.circle_radius;
    rec.beta = b;
    const auto outside = stable_truncation_eigenvalues(t, opt.trunc, match_tolerance(t),
                                                       [&](Complex z) { return std::abs(z) > b + opt.tol; });
    rec.annulus_points = outside.values;
    rec.witnesses.push_back({"AM_normal", "annulus_count", static_cast<double>(outside.values.size())});
    rec.verdict = outside.stabilized ? Verdict::yes : Verdict::undetermined;
    return rec;
}

PutnamRecord putnam_check(const StructuredOperator& t, int resolution, const Options& opt) {
    PutnamRecord rec;
    rec.lhs = safe_norm(self_commutator(t), opt.trunc);
    const AreaEstimate area = spectral_area(t, resolution);
    rec.rhs = area.area / kPi;
    rec.grid_error = area.error_bound / kPi;
    rec.holds = rec.lhs <= rec.rhs + rec.grid_error + opt.tol;
    return rec;
}

WeylRecord weyl_normality_criterion(const StructuredOperator& t, const Options& opt) {
    WeylRecord rec;
    rec.premises_hold =
        check_hyponormal(t, opt).verdict == Verdict::yes && check_AN(t, opt).verdict == Verdict::yes;
    const LaurentSymbol s = symbol(t);
    rec.ess_equals_weyl = true;
    if (!s.is_constant()) {
        for (const auto& comp : bounded_components(winding_raster(s, opt.resolution))) {
            int w = comp.winding;
            try {
                w = winding(s, comp.representative);
            } catch (const PointOnCurve&) {
            }
            rec.component_windings.emplace_back(comp.representative, w);
            if (w != 0) rec.ess_equals_weyl = false;
        }
    }
    rec.normal = check_normal(t, opt.tol).verdict;
    rec.contradiction = rec.premises_hold && rec.ess_equals_weyl && rec.normal != Verdict::yes;
    return rec;
}

ParanormalPairRecord paranormal_pair_normality(const StructuredOperator& t, const Options& opt) {
    ParanormalPairRecord rec;
    const StructuredOperator ts = adjoint(t);
    rec.an = check_AN(t, opt).verdict;
    rec.paranormal = check_paranormal(t, opt).verdict;
    rec.adjoint_paranormal = check_paranormal(ts, opt).verdict;
    rec.normal = check_normal(t, opt.tol).verdict;
    rec.premises_hold =
        rec.an == Verdict::yes && rec.paranormal == Verdict::yes && rec.adjoint_paranormal == Verdict::yes;
    rec.contradiction = rec.premises_hold && rec.normal != Verdict::yes;

    // Kernels from the exact images of the first n columns.
    const std::size_t n = std::min<std::size_t>(working_size(t, std::min<std::size_t>(opt.trunc, 128)), 512);
    auto kernel = [&](const StructuredOperator& a) {
        std::size_t rows = n + static_cast<std::size_t>(std::max(a.lower_bandwidth(), 0));
        for (const auto& term : a.rank_terms()) rows = std::max(rows, term.left.size());
        return null_space(truncate(a, rows, n), 1e-6);
    };
    const Matrix k1 = kernel(t), k2 = kernel(ts);
    rec.kernel_dim = static_cast<int>(k1.cols());
    rec.adjoint_kernel_dim = static_cast<int>(k2.cols());
    rec.kernels_equal = k1.cols() == k2.cols() &&
                        (k1.cols() == 0 || (k1 * k1.adjoint() - k2 * k2.adjoint()).cwiseAbs().maxCoeff() <= 1e-6);
    rec.kernel_premises_hold = rec.an == Verdict::yes && rec.paranormal == Verdict::yes && rec.kernels_equal;
    rec.kernel_contradiction = rec.kernel_premises_hold && rec.normal != Verdict::yes;
    return rec;
}

ClassificationReport classify(const StructuredOperator& t, const Options& opt) {
    ClassificationReport rep;
    rep.tolerances = opt;
    auto take = [&](const CheckResult& r) {
        rep.witnesses.insert(rep.witnesses.end(), r.witnesses.begin(), r.witnesses.end());
        return r.verdict;
    };
    rep.is_self_adjoint = take(check_self_adjoint(t, opt.tol));
    rep.is_normal = take(check_normal(t, opt.tol));

    // normal => hyponormal => paranormal
    if (rep.is_normal == Verdict::yes) {
        rep.is_hyponormal = Verdict::yes;
        rep.witnesses.push_back({"hyponormal", "implied_by_normal", 1.0});
    } else {
        rep.is_hyponormal = take(check_hyponormal(t, opt));
    }
    if (rep.is_hyponormal == Verdict::yes) {
        rep.is_paranormal = Verdict::yes;
        rep.witnesses.push_back({"paranormal", "implied_by_hyponormal", 1.0});
    } else {
        rep.is_paranormal = take(check_paranormal(t, opt));
    }

    const LevelResult an = check_AN(t, opt);
    rep.witnesses.insert(rep.witnesses.end(), an.witnesses.begin(), an.witnesses.end());
    rep.is_AN = an.verdict;
    rep.alpha = an.alpha;

    if (rep.is_normal == Verdict::yes) {
        const AMRecord am = check_AM_normal(t, opt);
        rep.witnesses.insert(rep.witnesses.end(), am.witnesses.begin(), am.witnesses.end());
        rep.is_AM_normal = am.verdict;
        rep.beta = am.beta;
    } else {
        rep.is_AM_normal = Verdict::no;
    }
    return rep;
}

}  // namespace anops
