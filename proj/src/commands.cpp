#include "hardy/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace hardy {

namespace {

std::string outer_message(const OuterCheck& check) {
    std::ostringstream os;
    os << "outer factor is not outer: " << check.inside_roots.size() << " numerator root(s) inside the disk";
    return os.str();
}

Json roots_json(const std::vector<cplx>& roots) {
    Json arr = Json::array();
    for (const cplx& r : roots) arr.push_back(complex_to_json(r));
    return arr;
}

Json verdict_json(const ExtremalityVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["m"] = v.m;
    j["M"] = v.M;
    j["rank"] = v.rank;
    j["two_m"] = v.two_m();
    j["condition_a"] = v.condition_a;
    j["backend"] = v.backend == RankBackend::exact_rational ? "exact" : "svd";
    j["singular_values"] = v.singular_values;
    j["kernel_dimension"] = v.kernel_basis.size();
    Json rows = Json::array();
    const Eigen::MatrixXd& A = v.matrix.assembled;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < A.cols(); ++k) row.push_back(A(i, k));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    return j;
}

Json delta_json(const DeltaResult& d) {
    Json j;
    if (std::isfinite(d.delta)) j["value"] = d.delta;
    else j["value"] = "inf";
    j["extreme"] = d.extreme;
    j["c_k_minus_2"] = complex_to_json(d.c_k_minus_2);
    j["c_k"] = complex_to_json(d.c_k);
    return j;
}

void print_residual_table(std::ostream& err, const MembershipReport& r) {
    char line[160];
    err << "NotInSpace: hole residuals (tolerance " << format_double(r.tolerance) << " x scale "
        << format_double(r.scale) << ")\n";
    std::snprintf(line, sizeof line, "  %6s  %-24s  %s\n", "k", "|f^(k)|", "status");
    err << line;
    for (const auto& h : r.holes) {
        const bool bad = h.residual > r.tolerance * r.scale;
        std::snprintf(line, sizeof line, "  %6ld  %-24.17g  %s\n", h.k, h.residual, bad ? "FAIL" : "ok");
        err << line;
    }
}

std::optional<double> env_number(const char* name) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw DocumentError(std::string("environment ") + name, "expected a positive number");
    return v;
}

Json error_document(const char* kind, const std::string& message) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "error";
    j["error"] = kind;
    j["message"] = message;
    return j;
}

}  // namespace

NotOuterError::NotOuterError(const OuterCheck& check) : std::invalid_argument(outer_message(check)), check_(check) {}

ToleranceOverrides overrides_from_environment() {
    ToleranceOverrides o;
    o.rank = env_number("HARDY_TOL_RANK");
    o.quad = env_number("HARDY_TOL_QUAD");
    return o;
}

Tolerances resolve_tolerances(const ToleranceOverrides& problem, const ToleranceOverrides& environment,
                              const ToleranceOverrides& flags) {
    Tolerances tol;
    problem.apply(tol);
    environment.apply(tol);
    flags.apply(tol);
    return tol;
}

int exit_code_for(VerdictStatus s) noexcept {
    switch (s) {
        case VerdictStatus::extreme: return exit_code::extreme;
        case VerdictStatus::non_extreme: return exit_code::non_extreme;
        case VerdictStatus::borderline: return exit_code::borderline;
    }
    return exit_code::input_error;
}

Analysis analyze_problem(const ProblemDocument& problem, const Tolerances& tol, bool with_witness) {
    const OuterCheck outer = check_outer(problem.f.outer, tol.root);
    if (!outer.is_outer()) throw NotOuterError(outer);

    const Normalized normalized = normalize(problem.f, tol.quadrature());
    const FactoredFunction& f = normalized.function;
    const MembershipReport membership = check_membership(f, problem.space, tol.membership, tol.pole_margin);
    require_membership(membership);

    const ExtremalityVerdict verdict = decide_extreme(f, problem.space, tol);
    Analysis out;
    out.status = verdict.status;
    out.rank = verdict.rank;
    out.two_m = verdict.two_m();
    out.min_singular_value = verdict.singular_values.empty() ? 0.0 : verdict.singular_values.back();
    if (problem.space.M() == 1 && verdict.m <= 1) out.delta = single_hole_delta(problem.f, problem.space.holes()[0], tol);

    const ExposednessResult exposed = check_exposed(f, problem.space, verdict, tol);

    Json& r = out.report;
    r["format_version"] = kFormatVersion;
    r["kind"] = "report";
    r["problem"] = problem_to_json(problem.space, problem.f);
    r["normalized_scale"] = normalized.norm;
    r["membership"] = membership_to_json(membership);
    r["verdict"] = verdict_json(verdict);
    r["delta"] = out.delta ? delta_json(*out.delta) : Json(nullptr);
    Json e;
    e["status"] = to_string(exposed.status);
    e["circle_roots_of_F"] = roots_json(exposed.circle_roots_of_F);
    r["exposedness"] = e;

    Json witness = nullptr;
    if (with_witness && verdict.status == VerdictStatus::non_extreme) {
        witness = Json::object();
        try {
            const PerturbationWitness w = verdict.condition_a ? make_witness(f, problem.space, verdict, tol)
                                                              : make_degree_overflow_witness(f, problem.space, tol);
            witness["certificate"] = witness_to_json(w);
            witness["report"] = witness_report_to_json(verify_witness(f, problem.space, w, tol));
        } catch (const DegenerateKernel& ex) {
            witness["error"] = ex.what();
        }
    }
    r["witness"] = witness;
    return out;
}

int cmd_analyze(const std::string& path, const ToleranceOverrides& environment, const ToleranceOverrides& flags,
                std::ostream& out, std::ostream& err) {
    try {
        const ProblemDocument problem = parse_problem(load_json(path));
        const Tolerances tol = resolve_tolerances(problem.options, environment, flags);
        const Analysis a = analyze_problem(problem, tol);
        write_json(out, a.report);
        return exit_code_for(a.status);
    } catch (const DocumentError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const NotInSpaceError& e) {
        print_residual_table(err, e.report());
        Json j = error_document("NotInSpace", e.what());
        j["hole"] = e.hole();
        j["membership"] = membership_to_json(e.report());
        write_json(out, j);
    } catch (const NotOuterError& e) {
        err << "error: " << e.what() << "\n";
        Json j = error_document("NotOuter", e.what());
        j["inside_roots"] = roots_json(e.check().inside_roots);
        write_json(out, j);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_code::input_error;
}

int cmd_certify(const std::string& problem_path, const std::string& witness_path,
                const ToleranceOverrides& environment, std::ostream& out, std::ostream& err) {
    ProblemDocument problem;
    PerturbationWitness witness;
    Tolerances tol;
    try {
        problem = parse_problem(load_json(problem_path));
        tol = resolve_tolerances(problem.options, environment, {});
        Json doc = load_json(witness_path);
        if (doc.is_object() && doc.value("kind", "") == "report") {
            const Json w = doc.contains("witness") ? doc.at("witness") : Json(nullptr);
            if (!w.is_object() || !w.contains("certificate"))
                throw DocumentError(witness_path + ":/witness", "report carries no witness");
            doc = w.at("certificate");
        }
        try {
            witness = parse_witness(doc);
        } catch (const DocumentError& e) {
            throw DocumentError(witness_path + ":" + e.where(), e.what());
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }

    WitnessReport report;
    try {
        report = verify_witness(problem.f, problem.space, witness, tol);
    } catch (const std::exception& e) {
        report.shape_ok = false;
        report.failures.push_back(e.what());
    }
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = "witness_report";
    const Json body = witness_report_to_json(report);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    write_json(out, j);
    for (const std::string& f : report.failures) err << "failed: " << f << "\n";
    return report.verifies() ? exit_code::verified : exit_code::not_verified;
}

std::vector<double> SweepAxis::values() const {
    std::vector<double> out;
    const double span = (stop - start) / step;
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
        double v = start + static_cast<double>(i) * step;
        if (std::abs(v - stop) <= 1e-9 * std::abs(step)) v = stop;
        out.push_back(v);
    }
    return out;
}

SweepAxis parse_range(const std::string& name, const std::string& range) {
    const std::string where = "--range " + range;
    SweepAxis axis;
    axis.name = name;
    double parts[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t colon = i < 2 ? range.find(':', pos) : std::string::npos;
        if (i < 2 && colon == std::string::npos) throw DocumentError(where, "expected a:b:step");
        const std::string token = range.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos);
        char* end = nullptr;
        parts[i] = std::strtod(token.c_str(), &end);
        if (token.empty() || *end != '\0' || !std::isfinite(parts[i])) throw DocumentError(where, "bad number \"" + token + "\"");
        pos = colon + 1;
    }
    axis.start = parts[0];
    axis.stop = parts[1];
    axis.step = parts[2];
    if (axis.stop < axis.start) throw DocumentError(where, "range end precedes start");
    if (!(axis.step > 0.0)) throw DocumentError(where, "step must be positive");
    if ((axis.stop - axis.start) / axis.step > 1e7) throw DocumentError(where, "too many grid points");
    return axis;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

namespace {

struct SweepRow {
    std::string status;
    std::string rank;
    std::string two_m;
    std::string delta;
    std::string min_sv;
    std::string note;
};

SweepRow sweep_row(const Json& base, const std::vector<Json::json_pointer>& pointers, const std::vector<double>& point,
                   const ToleranceOverrides& environment, const ToleranceOverrides& flags) {
    SweepRow row;
    try {
        Json doc = base;
        for (std::size_t i = 0; i < pointers.size(); ++i) doc[pointers[i]] = point[i];
        const ProblemDocument problem = parse_problem(doc);
        const Tolerances tol = resolve_tolerances(problem.options, environment, flags);
        const Analysis a = analyze_problem(problem, tol, false);
        row.status = to_string(a.status);
        row.rank = std::to_string(a.rank);
        row.two_m = std::to_string(a.two_m);
        if (a.delta) row.delta = format_double(a.delta->delta);
        row.min_sv = format_double(a.min_singular_value);
    } catch (const NotInSpaceError& e) {
        row.status = "skip";
        row.note = "NotInSpace(" + std::to_string(e.hole()) + ")";
    } catch (const NotOuterError&) {
        row.status = "skip";
        row.note = "NotOuter";
    } catch (const std::exception& e) {
        row.status = "error";
        row.note = e.what();
    }
    return row;
}

}  // namespace

int cmd_sweep(const std::string& template_path, const SweepOptions& options, const ToleranceOverrides& environment,
              const ToleranceOverrides& flags, std::ostream& csv, std::ostream& err) {
    Json base;
    std::vector<Json::json_pointer> pointers;
    std::vector<std::vector<double>> axis_values;
    try {
        base = load_json(template_path);
        if (!base.is_object() || !base.contains("parameters") || !base.at("parameters").is_object())
            throw DocumentError(template_path + ":/parameters", "template must declare a parameters object");
        const Json params = base.at("parameters");
        base.erase("parameters");
        if (options.axes.empty()) throw DocumentError("--param", "at least one swept parameter is required");
        if (options.axes.size() != params.size())
            throw DocumentError("--param", "every declared parameter must be swept exactly once");
        for (const SweepAxis& axis : options.axes) {
            if (!params.contains(axis.name))
                throw DocumentError("--param " + axis.name, "not declared in the template");
            const Json& p = params.at(axis.name);
            if (!p.is_string()) throw DocumentError("/parameters/" + axis.name, "expected a JSON pointer string");
            Json::json_pointer ptr;
            try {
                ptr = Json::json_pointer(p.get<std::string>());
            } catch (const Json::exception&) {
                throw DocumentError("/parameters/" + axis.name, "malformed JSON pointer");
            }
            if (!base.contains(ptr) || !base.at(ptr).is_number())
                throw DocumentError(p.get<std::string>(), "parameter must address a number in the template");
            for (const auto& q : pointers)
                if (q == ptr) throw DocumentError("--param " + axis.name, "two parameters address the same value");
            pointers.push_back(ptr);
            axis_values.push_back(axis.values());
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }

    std::size_t total = 1;
    for (const auto& v : axis_values) total *= v.size();
    std::vector<std::vector<double>> points(total);
    for (std::size_t index = 0; index < total; ++index) {
        std::size_t rest = index;
        std::vector<double> point(axis_values.size());
        for (std::size_t a = axis_values.size(); a-- > 0;) {
            point[a] = axis_values[a][rest % axis_values[a].size()];
            rest /= axis_values[a].size();
        }
        points[index] = std::move(point);
    }

    std::vector<SweepRow> rows(total);
    const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, total));
    auto work = [&](std::size_t worker) {
        for (std::size_t i = worker; i < total; i += jobs) rows[i] = sweep_row(base, pointers, points[i], environment, flags);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    for (const SweepAxis& axis : options.axes) csv << csv_field(axis.name) << ",";
    csv << "status,rank,two_m,delta,min_singular_value,note\r\n";
    for (std::size_t i = 0; i < total; ++i) {
        for (double v : points[i]) csv << format_double(v) << ",";
        const SweepRow& r = rows[i];
        csv << r.status << "," << r.rank << "," << r.two_m << "," << r.delta << "," << r.min_sv << ","
            << csv_field(r.note) << "\r\n";
    }
    return 0;
}

int cmd_gen(const std::string& spec_path, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    SampleRequest req;
    try {
        Json spec = load_json(spec_path);
        if (!spec.is_object()) throw DocumentError(spec_path, "spec must be a JSON object");
        // Reuse the problem parser for holes, zeros and denominator.
        Json as_problem;
        as_problem["holes"] = spec.contains("holes") ? spec.at("holes") : Json::array();
        as_problem["inner_zeros"] = spec.contains("inner_zeros") ? spec.at("inner_zeros") : Json::array();
        as_problem["outer_numerator"] = Json::array({1.0});
        as_problem["outer_denominator"] = spec.contains("outer_denominator") ? spec.at("outer_denominator") : Json::array();
        const ProblemDocument parsed = parse_problem(as_problem);
        req.space = parsed.space;
        req.zeros = parsed.f.inner.zeros;
        req.denominator_parameters = parsed.f.outer.denominator_parameters;
        if (!spec.contains("numerator_degree") || !spec.at("numerator_degree").is_number_unsigned())
            throw DocumentError("/numerator_degree", "expected a nonnegative integer");
        req.numerator_degree = spec.at("numerator_degree").get<std::size_t>();
        if (spec.contains("max_retries")) {
            if (!spec.at("max_retries").is_number_unsigned() || spec.at("max_retries").get<long>() < 1)
                throw DocumentError("/max_retries", "expected a positive integer");
            req.max_retries = spec.at("max_retries").get<int>();
        }
        if (spec.contains("root_clearance")) {
            const Json& c = spec.at("root_clearance");
            if (!c.is_number() || c.get<double>() < 0.0) throw DocumentError("/root_clearance", "expected a nonnegative number");
            req.root_clearance = c.get<double>();
        }
        req.seed = seed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }

    try {
        const FactoredFunction f = sample_member(req);
        write_json(out, problem_to_json(req.space, f));
        return 0;
    } catch (const MaxRetriesExceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::max_retries;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }
}

}  // namespace hardy
