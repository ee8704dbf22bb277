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

// One line per acceptance criterion.  Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "anops/catalog.hpp"
#include "anops/classify.hpp"
#include "anops/decomposition.hpp"
#include "anops/errors.hpp"
#include "anops/numerics.hpp"
#include "anops/operator.hpp"
#include "anops/summary.hpp"
#include "anops/symbol.hpp"
#include "oracles.hpp"

using namespace anops;

namespace {

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
    std::printf("criterion %d %s  %s: %s\n", id, pass ? "PASS" : "FAIL", title, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* v(Verdict x) { return to_string(x); }

double witness(const std::vector<Witness>& ws, const std::string& check, const std::string& quantity) {
    for (const auto& w : ws)
        if (w.check == check && w.quantity == quantity) return w.value;
    return std::nan("");
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Options fast() {
    Options o;
    o.trunc = 32;
    o.resolution = 256;
    return o;
}

void right_shift() {
    const Options def;
    const auto t0 = std::chrono::steady_clock::now();
    const StructuredOperator r = catalog::right_shift();
    const ClassificationReport c = classify(r, def);
    const SpectralSummary s = spectral_summary(r, def);
    const double secs = seconds_since(t0);

    const double dev = witness(c.witnesses, "AN", "symbol_deviation");
    double curve = 0.0;
    for (auto z : s.ess_curve) curve = std::max(curve, std::abs(std::abs(z) - 1.0));
    const double alpha = c.alpha.value_or(-1.0);
    const bool pass = c.is_AN == Verdict::yes && std::abs(alpha - 1.0) < 1e-12 && dev < 1e-12 &&
                      c.is_hyponormal == Verdict::yes && c.is_normal == Verdict::no && !s.ess_curve.empty() &&
                      curve < 1e-12 && s.ess_min_modulus == 1.0 && secs < 5.0;
    report(1, "right shift", pass,
           fmt("AN=%s alpha=%.15g symbol deviation %.2e, hyponormal=%s, normal=%s, unit circle deviation %.2e, "
               "m_e=%.17g, %.2f s",
               v(c.is_AN), alpha, dev, v(c.is_hyponormal), v(c.is_normal), curve, s.ess_min_modulus, secs));
}

void compressed_shift() {
    const Options def;
    const StructuredOperator t = catalog::compressed_shift();
    const StructuredOperator tt = compose(adjoint(t), t);
    // Target as stated: I - diag(1/2, 1/2, 0, ...).
    const double literal = max_entry_difference(tt, StructuredOperator::diagonal({0.5, 0.5}, 1.0));
    // T*T as displayed alongside the operator: diag(1/4, 1/4, 1, ...).
    const double displayed = max_entry_difference(tt, StructuredOperator::diagonal({0.25, 0.25}, 1.0));

    const DiscreteEigenReport e = discrete_eigs_below(tt, 1.0);
    const bool eigs_ok = e.stabilized && e.eigenvalues.size() == 1 &&
                         std::abs(e.eigenvalues[0].value - 0.25) < 1e-12 && e.eigenvalues[0].multiplicity == 2;

    const ClassificationReport c = classify(t, def);
    const bool verdicts_ok =
        c.is_hyponormal == Verdict::yes && c.is_AN == Verdict::yes && c.is_normal == Verdict::no;

    bool pattern_ok = false;
    double worst = std::nan("");
    std::string why;
    try {
        const BlockDecomposition d = structure_decompose(t, 64, 1e-8);
        const VerificationRecord rec = verify_decomposition(d, t, 64, 1e-8);
        worst = 0.0;
        for (const auto& res : rec.residuals) worst = std::max(worst, res.value);
        Matrix s1(d.S1.rows(), d.S1.cols());
        s1.setZero();
        for (Eigen::Index j = 0; j + 1 < s1.rows() && j < s1.cols(); ++j) s1(j + 1, j) = 1.0;
        Matrix a(d.A.rows(), d.A.cols());
        a.setZero();
        if (a.rows() > 0 && a.cols() > 1) a(0, 1) = 0.5;
        Matrix s2 = Matrix::Zero(2, 2);
        s2(0, 0) = 0.5;
        pattern_ok = d.h0_dim() == 0 && d.h1_dim == 62 && d.h2_blocks.size() == 1 && d.h2_blocks[0].dim == 2 &&
                     std::abs(d.h2_blocks[0].delta - 0.5) < 1e-9 && d.S2.rows() == 2 &&
                     max_abs(d.S1 - s1) < 1e-9 && max_abs(d.A - a) < 1e-9 && max_abs(d.S2 - s2) < 1e-9;
    } catch (const Error& ex) {
        why = std::string(" (") + ex.what() + ")";
    }
    const bool pass = literal <= 1e-12 && eigs_ok && verdicts_ok && pattern_ok && worst < 1e-6;
    report(2, "compressed shift", pass,
           fmt("T*T vs I - diag(1/2,1/2) residual %.3g; vs displayed diag(1/4,1/4,1,...) residual %.3g; "
               "eigs below 1 %s; hyponormal=%s AN=%s normal=%s; block pattern %s, max residual %.2e%s",
               literal, displayed, eigs_ok ? "{(0.25, 2)}" : "wrong", v(c.is_hyponormal), v(c.is_AN),
               v(c.is_normal), pattern_ok ? "matches" : "differs", worst, why.c_str()));
}

void head_block_shifts() {
    const Options def;
    const StructuredOperator t1 = catalog::nilpotent_head_shift();
    const StructuredOperator t2 = catalog::diagonal_head_shift();
    const ClassificationReport c1 = classify(t1, def), c2 = classify(t2, def);
    auto good = [](const ClassificationReport& c) {
        return c.is_hyponormal == Verdict::yes && c.is_AN == Verdict::yes && c.is_normal == Verdict::no;
    };
    double gram = std::nan(""), square = std::nan("");
    std::string why;
    try {
        const BlockDecomposition d2 = structure_decompose(t2, 64, 1e-8);
        if (d2.S2.rows() == 2) {
            const Matrix g = d2.A.adjoint() * d2.A + d2.S2.adjoint() * d2.S2;
            Matrix want = Matrix::Zero(2, 2);
            want(0, 0) = 1.0;
            want(1, 1) = 4.0;
            gram = max_abs(g - want);
        }
        const BlockDecomposition d1 = structure_decompose(t1, 64, 1e-8);
        if (d1.S2.rows() > 0) square = (d1.S2 * d1.S2).norm();
    } catch (const Error& ex) {
        why = std::string(" (") + ex.what() + ")";
    }
    const bool pass = good(c1) && good(c2) && gram < 1e-9 && square < 1e-9;
    report(3, "head block shifts", pass,
           fmt("T1 hyponormal=%s AN=%s normal=%s; T2 hyponormal=%s AN=%s normal=%s; "
               "T2 H2 Gram vs diag(1,4) %.2e; T1 ||S2^2|| %.2e%s",
               v(c1.is_hyponormal), v(c1.is_AN), v(c1.is_normal), v(c2.is_hyponormal), v(c2.is_AN),
               v(c2.is_normal), gram, square, why.c_str()));
}

void putnam() {
    const Options def;
    std::vector<StructuredOperator> ops;
    int bundled = 0;
    for (const auto& name : catalog::bundled_names()) {
        StructuredOperator t = catalog::bundled(name);
        if (check_hyponormal(t, def).verdict == Verdict::yes) {
            ops.push_back(std::move(t));
            ++bundled;
        }
    }
    random::Rng rng(4);
    int missed = 0;
    for (int i = 0; i < 50; ++i) {
        StructuredOperator t = random::hyponormal_band(rng);
        // Hyponormal by construction; a no here is itself a failure.
        if (check_hyponormal(t, def).verdict != Verdict::yes) ++missed;
        ops.push_back(std::move(t));
    }
    int violations = 0;
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& t : ops) {
        const PutnamRecord p = putnam_check(t, 512, def);
        const double gap = p.rhs + p.grid_error + 1e-6 - p.lhs;
        slack = std::min(slack, gap);
        if (gap < 0) ++violations;
    }
    const PutnamRecord r = putnam_check(catalog::right_shift(), 512, def);
    const bool shift_ok = std::abs(r.lhs - 1.0) <= 0.02 && std::abs(r.rhs - 1.0) <= 0.02;
    report(4, "commutator area bound", violations == 0 && missed == 0 && shift_ok,
           fmt("%zu operators (%d bundled, 50 random; %d not confirmed hyponormal), %d violations, "
               "min slack %.3g; shift lhs %.6f rhs %.6f",
               ops.size(), bundled, missed, violations, slack, r.lhs, r.rhs));
}

void compact_hyponormal() {
    Options strict;
    strict.tol = 1e-10;
    random::Rng rng(5);
    int applicable = 0, violations = 0;
    for (int i = 0; i < 200; ++i) {
        const StructuredOperator t = random::finite_rank(rng);
        if (check_hyponormal(t, strict).verdict != Verdict::yes) continue;
        ++applicable;
        if (check_normal(t, 1e-8).verdict != Verdict::yes) ++violations;
    }
    report(5, "compact hyponormal is normal", violations == 0,
           fmt("200 finite-rank operators, %d hyponormal, %d not normal", applicable, violations));
}

bool same_points(const std::vector<PointCluster>& got, const std::vector<Complex>& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i)
        if (got[i].multiplicity != 1 || std::abs(got[i].value - want[i]) > 1e-9) return false;
    return true;
}

void diagonal_oracle() {
    const Options opt = fast();
    random::Rng rng(6);
    int mismatches = 0, first = -1;
    for (int i = 0; i < 500; ++i) {
        const StructuredOperator t = random::diagonal(rng);
        std::vector<Complex> prefix;
        Complex tail = 0.0;
        if (auto it = t.bands().find(0); it != t.bands().end()) {
            prefix = it->second.prefix();
            tail = it->second.tail();
        }
        const double r = std::abs(tail);
        const auto inside = oracle::diagonal_points(prefix, [&](Complex z) { return std::abs(z) < r; });
        const auto outside = oracle::diagonal_points(prefix, [&](Complex z) { return std::abs(z) > r; });
        std::vector<double> radii;
        for (auto z : inside) radii.push_back(std::abs(z));
        radii.push_back(r);

        const LevelResult an = check_AN(t, opt);
        const NormalANRecord eq = check_AN_normal_equivalence(t, opt);
        const AMRecord am = check_AM_normal(t, opt);

        bool ok = an.verdict == Verdict::yes && an.alpha && std::abs(*an.alpha - r) < 1e-9;
        ok = ok && eq.applicable && eq.an == Verdict::yes && eq.disc == Verdict::yes &&
             eq.circles == Verdict::yes && eq.agree && same_points(eq.interior_points, inside) &&
             eq.radii.size() == radii.size();
        for (std::size_t k = 0; ok && k < radii.size(); ++k) ok = std::abs(eq.radii[k] - radii[k]) < 1e-9;
        ok = ok && am.applicable && am.verdict == Verdict::yes && am.beta && std::abs(*am.beta - r) < 1e-9 &&
             same_points(am.annulus_points, outside);
        if (!ok) {
            ++mismatches;
            if (first < 0) first = i;
        }
    }
    report(6, "diagonal oracle", mismatches == 0,
           fmt("500 diagonal operators, %d mismatches%s", mismatches,
               first < 0 ? "" : fmt(" (first at #%d)", first).c_str()));
}

// Winding of a closed polygon around p by summed argument increments.
int polygon_winding(const std::vector<Complex>& curve, Complex p) {
    double total = 0.0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        const Complex a = curve[k] - p, b = curve[(k + 1) % curve.size()] - p;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

void index_cross_check() {
    int tested = 0, nonzero = 0, mismatches = 0;
    auto check = [&](const StructuredOperator& t, Complex lambda, int expected) {
        const int fi = fredholm_index(t, lambda);
        const int ti = truncation_index(t, lambda, 512);
        ++tested;
        if (fi != 0) ++nonzero;
        if (fi != ti || fi != expected) ++mismatches;
    };
    const StructuredOperator r = catalog::right_shift();
    check(r, 0.0, -1);
    check(compose(r, r), 0.0, -2);
    check(adjoint(r), 0.0, 1);

    random::Rng rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < 20; ++s) {
        const StructuredOperator t = random::banded(rng, 2, 0, 0);
        const std::vector<Complex> curve = symbol_curve(symbol(t), 4096);
        double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300, big = 1.0;
        for (auto z : curve) {
            minx = std::min(minx, z.real());
            maxx = std::max(maxx, z.real());
            miny = std::min(miny, z.imag());
            maxy = std::max(maxy, z.imag());
            big = std::max(big, std::abs(z));
        }
        const double margin = 0.1 * big, pad = 0.2 * big;
        // Prefer points the curve winds around; fill up with outside points.
        std::vector<std::pair<Complex, int>> inner, outer;
        for (int k = 0; k < 400 && inner.size() < 5; ++k) {
            const Complex p(minx - pad + unit(rng) * (maxx - minx + 2 * pad),
                            miny - pad + unit(rng) * (maxy - miny + 2 * pad));
            double dist = 1e300;
            for (auto z : curve) dist = std::min(dist, std::abs(z - p));
            if (dist < margin) continue;
            const int w = polygon_winding(curve, p);
            (w != 0 ? inner : outer).emplace_back(p, w);
        }
        inner.insert(inner.end(), outer.begin(), outer.end());
        inner.resize(std::min<std::size_t>(inner.size(), 5));
        for (const auto& [p, w] : inner) check(t, p, -w);
    }
    report(7, "index cross-validation", mismatches == 0 && tested == 103,
           fmt("%d points (%d with nonzero index), %d disagreements", tested, nonzero, mismatches));
}

void numerics_floor() {
    std::mt19937_64 rng(8);
    double eig_err = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Eigen::MatrixXcd m = oracle::random_hermitian3(rng);
        const auto roots = oracle::hermitian3_char_roots(m);
        const EigenSystem es = hermitian_eig(m);
        for (int k = 0; k < 3; ++k) eig_err = std::max(eig_err, std::abs(es.values(k) - roots[static_cast<std::size_t>(k)]));
    }
    std::normal_distribution<double> g;
    double polar_err = 0.0;
    for (int i = 0; i < 50; ++i) {
        Matrix m(16, 16);
        for (Eigen::Index a = 0; a < 16; ++a)
            for (Eigen::Index b = 0; b < 16; ++b) m(a, b) = Complex(g(rng), g(rng));
        const Polar p = svd_polar(m);
        polar_err = std::max(polar_err, (p.isometry * p.positive - m).norm() / m.norm());
    }
    report(8, "numerics floor", eig_err < 1e-10 && polar_err < 1e-9,
           fmt("3x3 eigenvalue error %.2e over 100 matrices; 16x16 polar relative residual %.2e over 50",
               eig_err, polar_err));
}

void implication_suite() {
    const Options opt = fast();
    std::vector<StructuredOperator> ops;
    for (const auto& name : catalog::bundled_names()) ops.push_back(catalog::bundled(name));
    random::Rng rng(9);
    for (int i = 0; i < 40; ++i) {
        ops.push_back(random::hyponormal_band(rng));
        ops.push_back(adjoint(random::hyponormal_band(rng)));
        ops.push_back(random::finite_rank(rng));
        ops.push_back(random::diagonal(rng));
        ops.push_back(random::banded(rng));
    }
    int pair = 0, kernel = 0, pair_bad = 0, kernel_bad = 0;
    for (const auto& t : ops) {
        const ParanormalPairRecord p = paranormal_pair_normality(t, opt);
        pair += p.premises_hold;
        kernel += p.kernel_premises_hold;
        pair_bad += p.contradiction;
        kernel_bad += p.kernel_contradiction;
    }
    report(9, "paranormal AN implications", pair_bad == 0 && kernel_bad == 0 && pair > 0 && kernel > 0,
           fmt("%zu operators; T,T* paranormal and AN: %d, %d not normal; paranormal AN with N(T)=N(T*): %d, "
               "%d not normal",
               ops.size(), pair, pair_bad, kernel, kernel_bad));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::function<void()>> criteria = {right_shift, compressed_shift, head_block_shifts,
                                                         putnam,      compact_hyponormal, diagonal_oracle,
                                                         index_cross_check, numerics_floor, implication_suite};
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("criterion FAIL  unexpected exception: %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%d of 9 criteria failed, %.1f s\n", failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
