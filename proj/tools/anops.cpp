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

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "anops/catalog.hpp"
#include "anops/classify.hpp"
#include "anops/decomposition.hpp"
#include "anops/errors.hpp"
#include "anops/io.hpp"
#include "anops/suite.hpp"
#include "anops/summary.hpp"

using namespace anops;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kUndetermined = 2;

struct Flags {
    std::string spec_path;
    std::optional<std::size_t> trunc;
    std::optional<double> tol;
    std::optional<int> samples;
    std::optional<int> resolution;
    std::string format = "text";
    std::string output;
    std::uint64_t seed = 1;
};

// SOURCE_DATE_EPOCH pins the clock for reproducible reports.
std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(fixed));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Options resolve(const Flags& f, const SpecParams& p, std::size_t default_trunc) {
    Options o;
    o.trunc = f.trunc.value_or(p.trunc.value_or(default_trunc));
    o.tol = f.tol.value_or(p.tol.value_or(o.tol));
    o.samples = f.samples.value_or(p.samples.value_or(o.samples));
    o.resolution = f.resolution.value_or(p.resolution.value_or(o.resolution));
    return o;
}

Provenance provenance(const std::string& command, const Flags& f, const OperatorSpec& spec, const Options& o) {
    Provenance p;
    p.tool_version = ANOPS_VERSION;
    p.command = command;
    p.parameters = {{"spec", spec.name},     {"trunc", o.trunc},           {"tol", o.tol},
                    {"samples", o.samples},  {"resolution", o.resolution}, {"seed", f.seed},
                    {"circle_tol", o.circle_tol}};
    p.started = timestamp();
    return p;
}

void add_common(CLI::App* cmd, Flags& f, bool with_spec) {
    if (with_spec) cmd->add_option("spec", f.spec_path, "operator spec file (JSON)")->required();
    cmd->add_option("--trunc", f.trunc, "truncation size")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", f.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", f.samples, "symbol samples on the circle")->check(CLI::Range(16, 1 << 22));
    cmd->add_option("--resolution", f.resolution, "winding raster resolution")->check(CLI::Range(8, 8192));
    cmd->add_option("--format", f.format, "stdout format")->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("-o,--output", f.output, "also write the structured report to this file");
    cmd->add_option("--seed", f.seed, "random seed (recorded; drives randomized suites)");
}

int emit(const ReportBundle& r, const Flags& f) {
    const Json j = to_json(r);
    if (f.format == "structured") std::cout << j.dump(2) << "\n";
    else render_text(std::cout, r);
    if (!f.output.empty()) {
        std::ofstream out(f.output);
        if (!out) throw Error("cannot write '" + f.output + "'");
        out << j.dump(2) << "\n";
    }
    return kOk;
}

int cmd_classify(const Flags& f) {
    const OperatorSpec spec = parse_spec(f.spec_path);
    const Options o = resolve(f, spec.params, 256);
    ReportBundle r;
    r.provenance = provenance("classify", f, spec, o);
    r.classification = classify(spec.op, o);
    r.spectral = spectral_summary(spec.op, o);
    r.provenance.finished = timestamp();
    emit(r, f);
    return r.classification.any_undetermined() ? kUndetermined : kOk;
}

int cmd_spectrum(const Flags& f, const std::string& csv) {
    const OperatorSpec spec = parse_spec(f.spec_path);
    const Options o = resolve(f, spec.params, 256);
    const SpectralSummary s = spectral_summary(spec.op, o);
    if (!csv.empty()) {
        if (csv == "-") {
            write_curve_csv(std::cout, s.ess_theta, s.ess_curve);
            return s.eigenvalues_stabilized ? kOk : kUndetermined;
        }
        std::ofstream out(csv);
        if (!out) throw Error("cannot write '" + csv + "'");
        write_curve_csv(out, s.ess_theta, s.ess_curve);
    }
    ReportBundle r;
    r.provenance = provenance("spectrum", f, spec, o);
    r.classification.tolerances = o;
    r.spectral = s;
    r.provenance.finished = timestamp();
    if (f.format == "structured") {
        Json j = to_json(r);
        j["classification"] = nullptr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "spectrum of " << spec.name << "\n";
        render_spectrum_text(std::cout, s);
    }
    if (!f.output.empty()) {
        std::ofstream out(f.output);
        if (!out) throw Error("cannot write '" + f.output + "'");
        Json j = to_json(r);
        j["classification"] = nullptr;
        out << j.dump(2) << "\n";
    }
    return s.eigenvalues_stabilized ? kOk : kUndetermined;
}

int cmd_decompose(const Flags& f) {
    const OperatorSpec spec = parse_spec(f.spec_path);
    const Options o = resolve(f, spec.params, 128);
    ReportBundle r;
    r.provenance = provenance("decompose", f, spec, o);
    r.classification = classify(spec.op, o);
    r.spectral = spectral_summary(spec.op, o);
    try {
        DecompositionReport d;
        d.blocks = structure_decompose(spec.op, o.trunc, o.tol);
        d.verification = verify_decomposition(d.blocks, spec.op, o.trunc, o.tol);
        d.normality = normality_from_blocks(d.blocks, o.tol, &spec.op);
        d.inclusion = spectrum_inclusion_check(spec.op, d.blocks, o.tol);
        r.decomposition = std::move(d);
    } catch (const NotHyponormal& e) {
        std::cerr << "anops: " << e.what() << "\n";
        for (const auto& w : r.classification.witnesses)
            if (w.check == "hyponormal") std::cerr << "  witness " << w.quantity << " = " << w.value << "\n";
        return kError;
    } catch (const NotAN& e) {
        std::cerr << "anops: " << e.what() << "\n";
        for (const auto& w : r.classification.witnesses)
            if (w.check == "AN") std::cerr << "  witness " << w.quantity << " = " << w.value << "\n";
        return kError;
    }
    r.provenance.finished = timestamp();
    emit(r, f);
    if (!r.decomposition->verification.passed()) {
        std::cerr << "anops: decomposition residuals exceed tolerance\n";
        return kError;
    }
    return r.classification.any_undetermined() ? kUndetermined : kOk;
}

int cmd_verify_suite(const Flags& f, int cases, bool corrupt) {
    SuiteOptions s;
    s.seed = f.seed;
    s.random_cases = cases;
    s.inject_corruption = corrupt;
    if (f.trunc) s.checks.trunc = *f.trunc;
    if (f.tol) s.checks.tol = *f.tol;
    if (f.samples) s.checks.samples = *f.samples;
    if (f.resolution) s.checks.resolution = *f.resolution;

    const auto results = run_verify_suite(s);
    bool ok = true;
    Json j = Json::array();
    for (const auto& r : results) {
        ok = ok && r.passed();
        j.push_back({{"suite", r.name},
                     {"cases", r.cases},
                     {"applicable", r.applicable},
                     {"passed", r.passed()},
                     {"violations", r.violations}});
    }
    const Json doc = {{"seed", f.seed}, {"random_cases", cases}, {"suites", j}, {"passed", ok}};
    if (f.format == "structured") {
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.applicable
                      << " meeting premises, " << r.violations.size() << " violations\n";
            for (const auto& v : r.violations) std::cout << "  " << v << "\n";
        }
    }
    if (!f.output.empty()) {
        std::ofstream out(f.output);
        if (!out) throw Error("cannot write '" + f.output + "'");
        out << doc.dump(2) << "\n";
    }
    return ok ? kOk : kError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anops: spectral classification of banded operators on l2(N)"};
    app.set_version_flag("--version", std::string(ANOPS_VERSION));
    app.require_subcommand(1);

    Flags f;
    auto* classify_cmd = app.add_subcommand("classify", "classify an operator and summarize its spectrum");
    add_common(classify_cmd, f, true);

    std::string csv;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "essential spectrum curve, eigenvalues, area, m(T), m_e(T), ||T||");
    add_common(spectrum_cmd, f, true);
    spectrum_cmd->add_option("--csv", csv, "write the symbol curve as CSV ('-' for stdout)");

    auto* decompose_cmd = app.add_subcommand("decompose", "block decomposition of a hyponormal AN operator");
    add_common(decompose_cmd, f, true);

    int cases = 50;
    bool corrupt = false;
    auto* suite_cmd = app.add_subcommand("verify-suite", "run golden and randomized property suites");
    add_common(suite_cmd, f, false);
    suite_cmd->add_option("--cases", cases, "random operators per family")->check(CLI::Range(0, 100000));
    suite_cmd->add_flag("--inject-corruption", corrupt, "perturb a golden decomposition (the suite must fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    try {
        if (*classify_cmd) return cmd_classify(f);
        if (*spectrum_cmd) return cmd_spectrum(f, csv);
        if (*decompose_cmd) return cmd_decompose(f);
        if (*suite_cmd) return cmd_verify_suite(f, cases, corrupt);
    } catch (const ParseError& e) {
        std::cerr << "anops: parse error: " << e.what() << "\n";
        return kError;
    } catch (const ValidationError& e) {
        std::cerr << "anops: invalid spec: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "anops: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
