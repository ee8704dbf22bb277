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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anops/numerics.hpp"
#include "anops/operator.hpp"

namespace anops {

/// Ordered so that no < undetermined < yes.
enum class Verdict { no = 0, undetermined = 1, yes = 2 };

const char* to_string(Verdict v) noexcept;
Verdict verdict_from_string(const std::string& s);

/// Knobs shared by every check.  Defaults follow the documented contract.
struct Options {
    double tol = 1e-8;
    std::size_t trunc = 256;
    int samples = 1024;
    int resolution = 512;
    double circle_tol = 1e-9;
    /// Paranormality test points; empty means 32 log-spaced values in
    /// [m(T)^2 / 10, 10 ||T||^2].
    std::vector<double> paranormal_grid;
    int grid_points = 32;
};

struct Witness {
    std::string check;
    std::string quantity;
    double value = 0.0;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckResult {
    Verdict verdict = Verdict::undetermined;
    std::vector<Witness> witnesses;
};

struct LevelResult {
    Verdict verdict = Verdict::undetermined;
    std::optional<double> alpha;
    std::vector<Witness> witnesses;
};

/// A complex eigenvalue cluster.
struct PointCluster {
    Complex value;
    int multiplicity = 1;
};

/// Clusters complex values closer than `gap` (single linkage), sorted by
/// modulus then argument.
std::vector<PointCluster> cluster_points(const std::vector<Complex>& values, double gap);

/// Eigenvalues of the n and 2n truncations lying in `keep`, clustered; the
/// lists are compared cluster by cluster.
struct StableEigenvalues {
    std::vector<PointCluster> values;
    bool stabilized = false;
};

StableEigenvalues stable_truncation_eigenvalues(const StructuredOperator& t, std::size_t n, double match_tol,
                                                const std::function<bool(Complex)>& keep);

CheckResult check_self_adjoint(const StructuredOperator& t, double tol);
CheckResult check_normal(const StructuredOperator& t, double tol);
/// Positivity of a self-adjoint operator: symbol >= -tol on the circle and
/// no compression eigenvalue below -tol.
CheckResult check_positive(const StructuredOperator& d, const Options& opt);
CheckResult check_hyponormal(const StructuredOperator& t, const Options& opt);
/// Ando's criterion on a finite grid of lambda > 0: a sound falsifier, a
/// heuristic verifier.  Witnesses record the grid extent and the
/// first failing lambda.
CheckResult check_paranormal(const StructuredOperator& t, const Options& opt);
std::vector<double> default_paranormal_grid(const StructuredOperator& t, const Options& opt);

LevelResult check_AN_positive(const StructuredOperator& p, const Options& opt);
/// T is AN iff T*T is; alpha is the square root of the T*T level.
LevelResult check_AN(const StructuredOperator& t, const Options& opt);

struct NormalANRecord {
    bool applicable = false;
    Verdict an = Verdict::undetermined;        // via T*T
    Verdict disc = Verdict::undetermined;      // sigma_ess on a circle, finitely many points inside
    Verdict circles = Verdict::undetermined;   // finitely many radii r_i <= alpha
    bool agree = false;
    std::optional<double> alpha;
    std::vector<PointCluster> interior_points;
    std::vector<double> radii;
    std::vector<Witness> witnesses;
};
NormalANRecord check_AN_normal_equivalence(const StructuredOperator& t, const Options& opt);

struct SelfAdjointANRecord {
    bool applicable = false;
    Verdict verdict = Verdict::undetermined;
    std::optional<double> alpha;
    std::vector<double> interior_points;   // in (-alpha, alpha)
    std::vector<double> boundary_points;   // on {-alpha, alpha}
    std::vector<Witness> witnesses;
};
SelfAdjointANRecord check_AN_selfadjoint(const StructuredOperator& t, const Options& opt);

struct AMRecord {
    bool applicable = false;
    Verdict verdict = Verdict::undetermined;
    std::optional<double> beta;
    std::vector<PointCluster> annulus_points;  // beta < |lambda| <= ||T||
    std::vector<Witness> witnesses;
};
AMRecord check_AM_normal(const StructuredOperator& t, const Options& opt);

struct PutnamRecord {
    double lhs = 0.0;          // ||T*T - TT*||
    double rhs = 0.0;          // Area / pi
    double grid_error = 0.0;   // area error bound / pi
    bool holds = false;
};
PutnamRecord putnam_check(const StructuredOperator& t, int resolution, const Options& opt);

struct WeylRecord {
    bool premises_hold = false;     // hyponormal and AN
    bool ess_equals_weyl = false;   // every bounded hole has winding 0
    std::vector<std::pair<Complex, int>> component_windings;
    Verdict normal = Verdict::undetermined;
    bool contradiction = false;
};
WeylRecord weyl_normality_criterion(const StructuredOperator& t, const Options& opt);

struct ParanormalPairRecord {
    Verdict paranormal = Verdict::undetermined;
    Verdict adjoint_paranormal = Verdict::undetermined;
    Verdict an = Verdict::undetermined;
    bool premises_hold = false;
    Verdict normal = Verdict::undetermined;
    bool contradiction = false;
    // N(T) = N(T*) variant.
    bool kernels_equal = false;
    int kernel_dim = 0;
    int adjoint_kernel_dim = 0;
    bool kernel_premises_hold = false;
    bool kernel_contradiction = false;
};
ParanormalPairRecord paranormal_pair_normality(const StructuredOperator& t, const Options& opt);

struct ClassificationReport {
    Verdict is_self_adjoint = Verdict::undetermined;
    Verdict is_normal = Verdict::undetermined;
    Verdict is_hyponormal = Verdict::undetermined;
    Verdict is_paranormal = Verdict::undetermined;
    Verdict is_AN = Verdict::undetermined;
    Verdict is_AM_normal = Verdict::undetermined;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::vector<Witness> witnesses;
    Options tolerances;

    bool any_undetermined() const noexcept;
};

/// Runs every check and enforces normal => hyponormal => paranormal.
ClassificationReport classify(const StructuredOperator& t, const Options& opt);

}  // namespace anops
