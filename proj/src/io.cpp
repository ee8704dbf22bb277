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

#include "anops/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "anops/errors.hpp"

namespace anops {

namespace {

// ---- line tracking -------------------------------------------------------

// Input iterator that counts consumed newlines.
class LineCounter {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    LineCounter(const char* p, int* line, bool* last_nl) : p_(p), line_(line), last_nl_(last_nl) {}
    reference operator*() const { return *p_; }
    LineCounter& operator++() {
        *last_nl_ = *p_ == '\n';
        if (*last_nl_) ++*line_;
        ++p_;
        return *this;
    }
    LineCounter operator++(int) {
        LineCounter tmp = *this;
        ++*this;
        return tmp;
    }
    bool operator==(const LineCounter& o) const { return p_ == o.p_; }
    bool operator!=(const LineCounter& o) const { return p_ != o.p_; }

private:
    const char* p_;
    int* line_;
    bool* last_nl_;
};

// Records the line where each value (by field path) starts.
class LineSax : public nlohmann::json_sax<Json> {
public:
    LineSax(const int* line, const bool* last_nl) : line_(line), last_nl_(last_nl) {}

    std::map<std::string, int> lines;

    bool null() override { return scalar(false); }
    bool boolean(bool) override { return scalar(false); }
    bool number_integer(number_integer_t) override { return scalar(true); }
    bool number_unsigned(number_unsigned_t) override { return scalar(true); }
    bool number_float(number_float_t, const string_t&) override { return scalar(true); }
    bool string(string_t&) override { return scalar(false); }
    bool binary(binary_t&) override { return scalar(false); }
    bool start_object(std::size_t) override {
        record(*line_);
        stack_.push_back({false, 0, {}});
        return true;
    }
    bool key(string_t& k) override {
        stack_.back().key = k;
        record(*line_);
        return true;
    }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override {
        record(*line_);
        stack_.push_back({true, 0, {}});
        return true;
    }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
    };

    std::string path() const {
        std::string p;
        for (const auto& f : stack_) {
            if (f.array) p += "[" + std::to_string(f.index) + "]";
            else p += (p.empty() ? "" : ".") + f.key;
        }
        return p;
    }
    void record(int line) { lines.emplace(path(), line); }
    void advance() {
        if (!stack_.empty() && stack_.back().array) ++stack_.back().index;
    }
    bool scalar(bool lookahead) {
        // Numbers are terminated by one extra character read ahead.
        record(*line_ - (lookahead && *last_nl_ ? 1 : 0));
        advance();
        return true;
    }
    bool close() {
        stack_.pop_back();
        advance();
        return true;
    }

    const int* line_;
    const bool* last_nl_;
    std::vector<Frame> stack_;
};

class SpecReader {
public:
    explicit SpecReader(const std::string& text) : text_(text) {
        try {
            doc_ = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what(), line_at(e.byte), {});
        } catch (const Json::out_of_range& e) {
            // number overflow
            throw ValidationError(std::string("non-finite number: ") + e.what());
        }
        int line = 1;
        bool last_nl = false;
        LineSax sax(&line, &last_nl);
        Json::sax_parse(LineCounter(text.data(), &line, &last_nl),
                        LineCounter(text.data() + text.size(), &line, &last_nl), &sax);
        lines_ = std::move(sax.lines);
    }

    const Json& doc() const { return doc_; }

    int line_of(std::string path) const {
        while (true) {
            if (auto it = lines_.find(path); it != lines_.end()) return it->second;
            const auto cut = path.find_last_of(".[");
            if (cut == std::string::npos || path.empty()) return 0;
            path.resize(cut);
        }
    }

    [[noreturn]] void fail(const std::string& path, const std::string& what) const {
        const int line = line_of(path);
        throw ParseError("line " + std::to_string(line) + ", field '" + path + "': " + what, line, path);
    }
    [[noreturn]] void invalid(const std::string& path, const std::string& what) const {
        throw ValidationError("line " + std::to_string(line_of(path)) + ", field '" + path + "': " + what);
    }

    void only_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) const {
        if (!obj.is_object()) fail(path, "expected an object");
        for (const auto& [k, v] : obj.items()) {
            bool ok = false;
            for (const char* a : allowed) ok |= k == a;
            if (!ok) fail(join(path, k), "unknown field");
        }
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    Complex complex(const Json& j, const std::string& path) const {
        if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
            fail(path, "expected a complex number [re, im]");
        const Complex z(j[0].get<double>(), j[1].get<double>());
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) invalid(path, "non-finite value");
        return z;
    }

    std::vector<Complex> complex_list(const Json& j, const std::string& path) const {
        if (!j.is_array()) fail(path, "expected a list of [re, im] pairs");
        std::vector<Complex> out;
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex(j[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

private:
    int line_at(std::size_t byte) const {
        const std::size_t end = std::min(byte, text_.size());
        return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
    }

    const std::string& text_;
    Json doc_;
    std::map<std::string, int> lines_;
};

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_list_json(const std::vector<Complex>& v) {
    Json a = Json::array();
    for (const auto& z : v) a.push_back(complex_json(z));
    return a;
}

Complex complex_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> optional_from(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

}  // namespace

// ---- spec files ----------------------------------------------------------

OperatorSpec parse_spec_text(const std::string& text) {
    const SpecReader r(text);
    const Json& d = r.doc();
    r.only_keys(d, "", {"name", "bands", "rank_terms", "params"});

    OperatorSpec spec;
    if (!d.contains("name") || !d["name"].is_string()) r.fail("name", "expected a string");
    spec.name = d["name"].get<std::string>();

    if (!d.contains("bands") || !d["bands"].is_array()) r.fail("bands", "expected a list of bands");
    StructuredOperator::BandMap bands;
    for (std::size_t i = 0; i < d["bands"].size(); ++i) {
        const std::string p = "bands[" + std::to_string(i) + "]";
        const Json& b = d["bands"][i];
        r.only_keys(b, p, {"offset", "prefix", "tail"});
        if (!b.contains("offset") || !b["offset"].is_number_integer()) r.fail(p + ".offset", "expected an integer");
        const int offset = b["offset"].get<int>();
        if (!b.contains("tail")) r.fail(p + ".tail", "missing");
        const Complex tail = r.complex(b["tail"], p + ".tail");
        std::vector<Complex> prefix;
        if (b.contains("prefix")) prefix = r.complex_list(b["prefix"], p + ".prefix");
        if (bands.count(offset)) r.invalid(p + ".offset", "duplicate offset " + std::to_string(offset));
        if (!prefix.empty() && prefix.back() == tail)
            r.invalid(p + ".prefix", "last prefix entry equals the tail (not canonical)");
        if (prefix.empty() && tail == Complex{}) r.invalid(p, "zero band (not canonical)");
        bands.emplace(offset, DiagonalDescriptor(std::move(prefix), tail));
    }

    std::vector<FiniteRankTerm> terms;
    if (d.contains("rank_terms")) {
        if (!d["rank_terms"].is_array()) r.fail("rank_terms", "expected a list");
        for (std::size_t i = 0; i < d["rank_terms"].size(); ++i) {
            const std::string p = "rank_terms[" + std::to_string(i) + "]";
            const Json& t = d["rank_terms"][i];
            r.only_keys(t, p, {"left", "right"});
            FiniteVector vecs[2];
            const char* names[2] = {"left", "right"};
            for (int k = 0; k < 2; ++k) {
                const std::string q = p + "." + names[k];
                if (!t.contains(names[k])) r.fail(q, "missing");
                auto v = r.complex_list(t[names[k]], q);
                if (v.empty() || v.back() == Complex{}) r.invalid(q, "empty vector or trailing zero (not canonical)");
                vecs[k] = FiniteVector(std::move(v));
            }
            terms.push_back({vecs[0], vecs[1]});
        }
    }

    if (d.contains("params")) {
        const Json& pr = d["params"];
        r.only_keys(pr, "params", {"trunc", "tol", "samples", "resolution"});
        if (pr.contains("trunc")) {
            if (!pr["trunc"].is_number_integer() || pr["trunc"].get<long long>() < 1)
                r.fail("params.trunc", "expected a positive integer");
            spec.params.trunc = pr["trunc"].get<std::size_t>();
        }
        if (pr.contains("tol")) {
            if (!pr["tol"].is_number() || !(pr["tol"].get<double>() > 0.0)) r.fail("params.tol", "expected a positive number");
            spec.params.tol = pr["tol"].get<double>();
        }
        if (pr.contains("samples")) {
            if (!pr["samples"].is_number_integer() || pr["samples"].get<long long>() < 16)
                r.fail("params.samples", "expected an integer >= 16");
            spec.params.samples = pr["samples"].get<int>();
        }
        if (pr.contains("resolution")) {
            if (!pr["resolution"].is_number_integer() || pr["resolution"].get<long long>() < 8)
                r.fail("params.resolution", "expected an integer >= 8");
            spec.params.resolution = pr["resolution"].get<int>();
        }
    }

    spec.op = StructuredOperator(std::move(bands), std::move(terms));
    if (spec.op.rank_terms().size() != d.value("rank_terms", Json::array()).size())
        r.invalid("rank_terms", "zero rank-one term (not canonical)");
    return spec;
}

OperatorSpec parse_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

Json spec_to_json(const OperatorSpec& spec) {
    Json j;
    j["name"] = spec.name;
    j["bands"] = Json::array();
    for (const auto& [k, d] : spec.op.bands())
        j["bands"].push_back({{"offset", k}, {"prefix", complex_list_json(d.prefix())}, {"tail", complex_json(d.tail())}});
    j["rank_terms"] = Json::array();
    for (const auto& t : spec.op.rank_terms())
        j["rank_terms"].push_back(
            {{"left", complex_list_json(t.left.entries())}, {"right", complex_list_json(t.right.entries())}});
    Json p = Json::object();
    if (spec.params.trunc) p["trunc"] = *spec.params.trunc;
    if (spec.params.tol) p["tol"] = *spec.params.tol;
    if (spec.params.samples) p["samples"] = *spec.params.samples;
    if (spec.params.resolution) p["resolution"] = *spec.params.resolution;
    if (!p.empty()) j["params"] = p;
    return j;
}

// ---- reports -------------------------------------------------------------

Json matrix_to_json(const Matrix& m) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(complex_json(m(i, k)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const Json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const Json& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows * cols) throw ParseError("matrix data has the wrong length", 0, "data");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from(data[static_cast<std::size_t>(i * cols + k)]);
    return m;
}

namespace {

Json options_json(const Options& o) {
    return {{"tol", o.tol},
            {"trunc", o.trunc},
            {"samples", o.samples},
            {"resolution", o.resolution},
            {"circle_tol", o.circle_tol},
            {"paranormal_grid", o.paranormal_grid},
            {"grid_points", o.grid_points}};
}

Options options_from(const Json& j) {
    Options o;
    o.tol = j.at("tol").get<double>();
    o.trunc = j.at("trunc").get<std::size_t>();
    o.samples = j.at("samples").get<int>();
    o.resolution = j.at("resolution").get<int>();
    o.circle_tol = j.at("circle_tol").get<double>();
    o.paranormal_grid = j.at("paranormal_grid").get<std::vector<double>>();
    o.grid_points = j.at("grid_points").get<int>();
    return o;
}

Json classification_json(const ClassificationReport& c) {
    Json w = Json::array();
    for (const auto& x : c.witnesses) w.push_back({{"check", x.check}, {"quantity", x.quantity}, {"value", x.value}});
    return {{"is_self_adjoint", to_string(c.is_self_adjoint)},
            {"is_normal", to_string(c.is_normal)},
            {"is_hyponormal", to_string(c.is_hyponormal)},
            {"is_paranormal", to_string(c.is_paranormal)},
            {"is_AN", to_string(c.is_AN)},
            {"is_AM_normal", to_string(c.is_AM_normal)},
            {"alpha", optional_json(c.alpha)},
            {"beta", optional_json(c.beta)},
            {"witnesses", w},
            {"tolerances", options_json(c.tolerances)}};
}

ClassificationReport classification_from(const Json& j) {
    ClassificationReport c;
    c.is_self_adjoint = verdict_from_string(j.at("is_self_adjoint").get<std::string>());
    c.is_normal = verdict_from_string(j.at("is_normal").get<std::string>());
    c.is_hyponormal = verdict_from_string(j.at("is_hyponormal").get<std::string>());
    c.is_paranormal = verdict_from_string(j.at("is_paranormal").get<std::string>());
    c.is_AN = verdict_from_string(j.at("is_AN").get<std::string>());
    c.is_AM_normal = verdict_from_string(j.at("is_AM_normal").get<std::string>());
    c.alpha = optional_from<double>(j.at("alpha"));
    c.beta = optional_from<double>(j.at("beta"));
    for (const auto& w : j.at("witnesses"))
        c.witnesses.push_back({w.at("check").get<std::string>(), w.at("quantity").get<std::string>(),
                               w.at("value").get<double>()});
    c.tolerances = options_from(j.at("tolerances"));
    return c;
}

Json spectral_json(const SpectralSummary& s) {
    Json weyl = Json::array();
    for (const auto& c : s.weyl_extra)
        weyl.push_back({{"representative", complex_json(c.representative)}, {"index", c.index}, {"area", c.area}});
    Json eig = Json::array();
    for (const auto& c : s.eigenvalues) eig.push_back({{"value", complex_json(c.value)}, {"multiplicity", c.multiplicity}});
    Json meig = Json::array();
    for (const auto& c : s.modulus_eigenvalues) meig.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
    return {{"ess_theta", s.ess_theta},
            {"ess_curve", complex_list_json(s.ess_curve)},
            {"ess_is_circle", optional_json(s.ess_is_circle)},
            {"ess_point", s.ess_point ? complex_json(*s.ess_point) : Json(nullptr)},
            {"weyl_extra", weyl},
            {"eigenvalues", eig},
            {"eigenvalues_stabilized", s.eigenvalues_stabilized},
            {"modulus_eigenvalues", meig},
            {"min_modulus", optional_json(s.min_modulus)},
            {"ess_min_modulus", s.ess_min_modulus},
            {"norm_upper", s.norm_upper},
            {"area", s.area},
            {"area_error", s.area_error}};
}

SpectralSummary spectral_from(const Json& j) {
    SpectralSummary s;
    s.ess_theta = j.at("ess_theta").get<std::vector<double>>();
    for (const auto& z : j.at("ess_curve")) s.ess_curve.push_back(complex_from(z));
    s.ess_is_circle = optional_from<double>(j.at("ess_is_circle"));
    if (!j.at("ess_point").is_null()) s.ess_point = complex_from(j.at("ess_point"));
    for (const auto& c : j.at("weyl_extra"))
        s.weyl_extra.push_back({complex_from(c.at("representative")), c.at("index").get<int>(), c.at("area").get<double>()});
    for (const auto& c : j.at("eigenvalues"))
        s.eigenvalues.push_back({complex_from(c.at("value")), c.at("multiplicity").get<int>()});
    s.eigenvalues_stabilized = j.at("eigenvalues_stabilized").get<bool>();
    for (const auto& c : j.at("modulus_eigenvalues"))
        s.modulus_eigenvalues.push_back({c.at("value").get<double>(), c.at("multiplicity").get<int>()});
    s.min_modulus = optional_from<double>(j.at("min_modulus"));
    s.ess_min_modulus = j.at("ess_min_modulus").get<double>();
    s.norm_upper = j.at("norm_upper").get<double>();
    s.area = j.at("area").get<double>();
    s.area_error = j.at("area_error").get<double>();
    return s;
}

Json decomposition_json(const DecompositionReport& r) {
    const BlockDecomposition& d = r.blocks;
    Json h0 = Json::array();
    for (const auto& b : d.h0_blocks) h0.push_back({{"lambda", b.lambda}, {"dim", b.dim}, {"U", matrix_to_json(b.U)}});
    Json h2 = Json::array();
    for (const auto& b : d.h2_blocks) h2.push_back({{"delta", b.delta}, {"dim", b.dim}});
    Json res = Json::array();
    for (const auto& x : r.verification.residuals)
        res.push_back({{"name", x.name}, {"value", x.value}, {"threshold", x.threshold}, {"passed", x.passed()}});
    return {{"n", d.n},
            {"extra_rows", d.extra_rows},
            {"alpha", d.alpha},
            {"h0_blocks", h0},
            {"h1_dim", d.h1_dim},
            {"S1", matrix_to_json(d.S1)},
            {"A", matrix_to_json(d.A)},
            {"h2_blocks", h2},
            {"S2", matrix_to_json(d.S2)},
            {"basis", matrix_to_json(d.basis)},
            {"case_label", d.case_label},
            {"assign_tol", d.assign_tol},
            {"residuals", res},
            {"normality",
             {{"verdict", to_string(r.normality.verdict)},
              {"interior_defect", r.normality.interior_defect},
              {"corank", r.normality.corank},
              {"cross_check", to_string(r.normality.cross_check)},
              {"consistent", r.normality.consistent}}},
            {"spectrum_inclusion",
             {{"eigenvalues", complex_list_json(r.inclusion.eigenvalues)},
              {"violators", complex_list_json(r.inclusion.violators)},
              {"max_excess", r.inclusion.max_excess},
              {"holds", r.inclusion.holds}}}};
}

DecompositionReport decomposition_from(const Json& j) {
    DecompositionReport r;
    BlockDecomposition& d = r.blocks;
    d.n = j.at("n").get<std::size_t>();
    d.extra_rows = j.at("extra_rows").get<int>();
    d.alpha = j.at("alpha").get<double>();
    for (const auto& b : j.at("h0_blocks"))
        d.h0_blocks.push_back({b.at("lambda").get<double>(), b.at("dim").get<int>(), matrix_from_json(b.at("U"))});
    d.h1_dim = j.at("h1_dim").get<int>();
    d.S1 = matrix_from_json(j.at("S1"));
    d.A = matrix_from_json(j.at("A"));
    for (const auto& b : j.at("h2_blocks")) d.h2_blocks.push_back({b.at("delta").get<double>(), b.at("dim").get<int>()});
    d.S2 = matrix_from_json(j.at("S2"));
    d.basis = matrix_from_json(j.at("basis"));
    d.case_label = j.at("case_label").get<std::string>();
    d.assign_tol = j.at("assign_tol").get<double>();
    for (const auto& x : j.at("residuals"))
        r.verification.residuals.push_back(
            {x.at("name").get<std::string>(), x.at("value").get<double>(), x.at("threshold").get<double>()});
    const Json& nm = j.at("normality");
    r.normality.verdict = verdict_from_string(nm.at("verdict").get<std::string>());
    r.normality.interior_defect = nm.at("interior_defect").get<double>();
    r.normality.corank = nm.at("corank").get<int>();
    r.normality.cross_check = verdict_from_string(nm.at("cross_check").get<std::string>());
    r.normality.consistent = nm.at("consistent").get<bool>();
    const Json& inc = j.at("spectrum_inclusion");
    for (const auto& z : inc.at("eigenvalues")) r.inclusion.eigenvalues.push_back(complex_from(z));
    for (const auto& z : inc.at("violators")) r.inclusion.violators.push_back(complex_from(z));
    r.inclusion.max_excess = inc.at("max_excess").get<double>();
    r.inclusion.holds = inc.at("holds").get<bool>();
    return r;
}

}  // namespace

Json to_json(const ReportBundle& r) {
    Json j;
    j["classification"] = classification_json(r.classification);
    j["spectral"] = spectral_json(r.spectral);
    j["decomposition"] = r.decomposition ? decomposition_json(*r.decomposition) : Json(nullptr);
    j["provenance"] = {{"tool_version", r.provenance.tool_version},
                       {"command", r.provenance.command},
                       {"parameters", r.provenance.parameters},
                       {"timestamps", {{"started", r.provenance.started}, {"finished", r.provenance.finished}}}};
    return j;
}

ReportBundle report_from_json(const Json& j) {
    try {
        ReportBundle r;
        r.classification = classification_from(j.at("classification"));
        r.spectral = spectral_from(j.at("spectral"));
        if (!j.at("decomposition").is_null()) r.decomposition = decomposition_from(j.at("decomposition"));
        const Json& p = j.at("provenance");
        r.provenance.tool_version = p.at("tool_version").get<std::string>();
        r.provenance.command = p.at("command").get<std::string>();
        r.provenance.parameters = p.at("parameters");
        r.provenance.started = p.at("timestamps").at("started").get<std::string>();
        r.provenance.finished = p.at("timestamps").at("finished").get<std::string>();
        return r;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

// ---- text ----------------------------------------------------------------

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt(Complex z) {
    if (z.imag() == 0.0) return fmt(z.real());
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
    return buf;
}

void print_matrix(std::ostream& os, const std::string& name, const Matrix& m, Eigen::Index limit = 8) {
    os << "  " << name << " (" << m.rows() << "x" << m.cols() << ")";
    if (m.size() == 0) {
        os << " empty\n";
        return;
    }
    const Eigen::Index r = std::min(m.rows(), limit), c = std::min(m.cols(), limit);
    os << (r < m.rows() || c < m.cols() ? ", leading " + std::to_string(r) + "x" + std::to_string(c) : "") << "\n";
    for (Eigen::Index i = 0; i < r; ++i) {
        os << "    ";
        for (Eigen::Index k = 0; k < c; ++k) {
            Complex z = m(i, k);
            if (std::abs(z.real()) < 1e-13) z.real(0.0);
            if (std::abs(z.imag()) < 1e-13) z.imag(0.0);
            os << std::setw(12) << fmt(z) << ' ';
        }
        os << "\n";
    }
}

}  // namespace

void render_spectrum_text(std::ostream& os, const SpectralSummary& s) {
    if (s.ess_point) os << "  essential spectrum: single point " << fmt(*s.ess_point) << "\n";
    else if (s.ess_is_circle) os << "  essential spectrum: circle of radius " << fmt(*s.ess_is_circle) << "\n";
    else os << "  essential spectrum: symbol curve, " << s.ess_curve.size() << " samples\n";
    for (const auto& w : s.weyl_extra)
        os << "  index " << w.index << " region near " << fmt(w.representative) << ", area " << fmt(w.area) << "\n";
    os << "  isolated eigenvalues:";
    if (s.eigenvalues.empty()) os << " none";
    for (const auto& e : s.eigenvalues) os << ' ' << fmt(e.value) << " (x" << e.multiplicity << ")";
    if (!s.eigenvalues_stabilized) os << " [not stabilized]";
    os << "\n  |T| eigenvalues below m_e:";
    if (s.modulus_eigenvalues.empty()) os << " none";
    for (const auto& e : s.modulus_eigenvalues) os << ' ' << fmt(e.value) << " (x" << e.multiplicity << ")";
    os << "\n  m(T) = " << (s.min_modulus ? fmt(*s.min_modulus) : std::string("not stabilized"))
       << ", m_e(T) = " << fmt(s.ess_min_modulus) << ", ||T|| = " << fmt(s.norm_upper) << "\n";
    os << "  area = " << fmt(s.area) << " +/- " << fmt(s.area_error) << "\n";
}

void render_text(std::ostream& os, const ReportBundle& r) {
    const auto& c = r.classification;
    os << "classification (tol " << fmt(c.tolerances.tol) << ", trunc " << c.tolerances.trunc << ")\n";
    os << "  self-adjoint  " << to_string(c.is_self_adjoint) << "\n";
    os << "  normal        " << to_string(c.is_normal) << "\n";
    os << "  hyponormal    " << to_string(c.is_hyponormal) << "\n";
    os << "  paranormal    " << to_string(c.is_paranormal) << "\n";
    os << "  AN            " << to_string(c.is_AN);
    if (c.alpha) os << "  alpha = " << fmt(*c.alpha);
    os << "\n  AM (normal)   " << to_string(c.is_AM_normal);
    if (c.beta) os << "  beta = " << fmt(*c.beta);
    os << "\n";

    os << "spectrum\n";
    render_spectrum_text(os, r.spectral);

    if (r.decomposition) {
        const auto& d = r.decomposition->blocks;
        os << "decomposition (n = " << d.n << ", case " << d.case_label << ")\n";
        os << "  alpha = " << fmt(d.alpha) << ", dim H0 = " << d.h0_dim() << ", dim H1 = " << d.h1_dim
           << ", dim H2 = " << d.h2_dim() << "\n";
        for (const auto& b : d.h0_blocks) {
            os << "  H0 block lambda = " << fmt(b.lambda) << ", dim " << b.dim << "\n";
            print_matrix(os, "U", b.U, 4);
        }
        for (const auto& b : d.h2_blocks) os << "  H2 block delta = " << fmt(b.delta) << ", dim " << b.dim << "\n";
        print_matrix(os, "S1", d.S1, 6);
        print_matrix(os, "A", d.A, 6);
        print_matrix(os, "S2", d.S2, 8);
        os << "  residuals\n";
        for (const auto& x : r.decomposition->verification.residuals)
            os << "    " << std::left << std::setw(22) << x.name << std::right << std::setw(14) << fmt(x.value)
               << "  <= " << fmt(x.threshold) << (x.passed() ? "  ok" : "  FAIL") << "\n";
        const auto& nm = r.decomposition->normality;
        os << "  normal from blocks: " << to_string(nm.verdict) << " (interior defect " << fmt(nm.interior_defect)
           << ", co-rank " << nm.corank << ")\n";
        os << "  spectrum inclusion: " << (r.decomposition->inclusion.holds ? "holds" : "violated") << "\n";
    }
}

void write_curve_csv(std::ostream& os, const std::vector<double>& theta, const std::vector<Complex>& points) {
    os << "theta,re,im\n";
    char buf[128];
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12f,%.12f,%.12f\n", theta[i], points[i].real(), points[i].imag());
        os << buf;
    }
}

}  // namespace anops
