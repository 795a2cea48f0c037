#include "hardy/documents.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hardy {

DocumentError::DocumentError(std::string where, const std::string& what)
    : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

void ToleranceOverrides::apply(Tolerances& tol) const {
    if (rank) tol.rank = *rank;
    if (quad) tol.quad = *quad;
    if (membership) tol.membership = *membership;
    if (root) tol.root = *root;
    if (delta) tol.delta = *delta;
    if (grid) tol.grid_initial = *grid;
    if (backend) tol.backend = *backend;
}

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw DocumentError(where, std::string("missing field \"") + key + "\"");
    return obj.at(key);
}

double number_at(const Json& j, const std::string& where) {
    if (!j.is_number()) throw DocumentError(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw DocumentError(where, "expected a finite number");
    return v;
}

std::vector<cplx> complex_list(const Json& j, const std::string& where) {
    if (!j.is_array()) throw DocumentError(where, "expected an array of [re, im] pairs");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from_json(j[i], where + "/" + std::to_string(i)));
    return out;
}

Json complex_list_json(const std::vector<cplx>& zs) {
    Json arr = Json::array();
    for (const cplx& z : zs) arr.push_back(complex_to_json(z));
    return arr;
}

void check_version(const Json& doc, const char* kind) {
    if (!doc.is_object()) throw DocumentError("/", "document must be a JSON object");
    if (doc.contains("format_version")) {
        const Json& v = doc.at("format_version");
        if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
            throw DocumentError("/format_version", "unsupported format version");
    }
    if (doc.contains("kind") && doc.at("kind") != kind)
        throw DocumentError("/kind", std::string("expected kind \"") + kind + "\"");
}

RankBackend backend_from_string(const std::string& s, const std::string& where) {
    if (s == "svd" || s == "floating_svd") return RankBackend::floating_svd;
    if (s == "exact" || s == "exact_rational") return RankBackend::exact_rational;
    throw DocumentError(where, "backend must be \"svd\" or \"exact\"");
}

void write_number(std::ostream& os, double v) {
    if (!std::isfinite(v)) {
        os << "null";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

void write_value(std::ostream& os, const Json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << Json(it.key()).dump() << ": ";
                write_value(os, it.value(), depth + 1);
            }
            os << "\n" << close_pad << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
            if (flat) {
                os << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    write_value(os, j[i], depth + 1);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                write_value(os, j[i], depth + 1);
            }
            os << "\n" << close_pad << "]";
            return;
        }
        case Json::value_t::number_float: write_number(os, j.get<double>()); return;
        default: os << j.dump(); return;
    }
}

}  // namespace

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return {number_at(j, where), 0.0};
    if (!j.is_array() || j.size() != 2) throw DocumentError(where, "expected a complex number as [re, im]");
    return {number_at(j[0], where + "/0"), number_at(j[1], where + "/1")};
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError(path, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DocumentError(path + " (byte " + std::to_string(e.byte) + ")", "malformed JSON");
    }
}

ProblemDocument parse_problem(const Json& doc) {
    check_version(doc, "problem");
    ProblemDocument out;

    const Json& holes = require(doc, "holes", "/");
    if (!holes.is_array()) throw DocumentError("/holes", "expected an array of positive integers");
    std::vector<long> ks;
    for (std::size_t i = 0; i < holes.size(); ++i) {
        if (!holes[i].is_number_integer()) throw DocumentError("/holes/" + std::to_string(i), "expected an integer");
        ks.push_back(holes[i].get<long>());
    }
    try {
        out.space = PuncturedSpace(std::move(ks));
    } catch (const std::invalid_argument& e) {
        throw DocumentError("/holes", e.what());
    }

    out.f.inner.zeros = doc.contains("inner_zeros") ? complex_list(doc.at("inner_zeros"), "/inner_zeros")
                                                    : std::vector<cplx>{};
    if (doc.contains("inner_constant")) out.f.inner.constant = complex_from_json(doc.at("inner_constant"), "/inner_constant");
    out.f.outer.numerator = complex_list(require(doc, "outer_numerator", "/"), "/outer_numerator");
    if (doc.contains("outer_denominator"))
        out.f.outer.denominator_parameters = complex_list(doc.at("outer_denominator"), "/outer_denominator");

    if (doc.contains("options")) {
        const Json& o = doc.at("options");
        if (!o.is_object()) throw DocumentError("/options", "expected an object");
        auto num = [&o](const char* key) -> std::optional<double> {
            if (!o.contains(key)) return std::nullopt;
            const double v = number_at(o.at(key), std::string("/options/") + key);
            if (!(v > 0.0)) throw DocumentError(std::string("/options/") + key, "tolerance must be positive");
            return v;
        };
        out.options.rank = num("tol_rank");
        out.options.quad = num("tol_quad");
        out.options.membership = num("tol_mem");
        out.options.root = num("tol_root");
        out.options.delta = num("tol_delta");
        if (o.contains("grid")) {
            if (!o.at("grid").is_number_unsigned()) throw DocumentError("/options/grid", "expected a positive integer");
            out.options.grid = o.at("grid").get<std::size_t>();
        }
        if (o.contains("backend")) {
            if (!o.at("backend").is_string()) throw DocumentError("/options/backend", "expected a string");
            out.options.backend = backend_from_string(o.at("backend").get<std::string>(), "/options/backend");
        }
    }

    try {
        out.f.inner.validate();
    } catch (const std::invalid_argument& e) {
        throw DocumentError("/inner_zeros", e.what());
    }
    try {
        out.f.outer.validate();
    } catch (const std::invalid_argument& e) {
        throw DocumentError("/outer_numerator", e.what());
    }
    return out;
}

Json problem_to_json(const PuncturedSpace& space, const FactoredFunction& f) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["kind"] = "problem";
    doc["holes"] = space.holes();
    doc["inner_zeros"] = complex_list_json(f.inner.zeros);
    if (f.inner.constant != cplx{1.0, 0.0}) doc["inner_constant"] = complex_to_json(f.inner.constant);
    doc["outer_numerator"] = complex_list_json(f.outer.numerator);
    doc["outer_denominator"] = complex_list_json(f.outer.denominator_parameters);
    return doc;
}

Json witness_to_json(const PerturbationWitness& w) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["kind"] = "witness";
    doc["N"] = w.p.N();
    doc["coefficient_vector"] = w.p.vector();
    doc["phi2_zeros"] = complex_list_json(w.phi2_zeros);
    doc["epsilon"] = w.epsilon;
    doc["recenter_c"] = w.recenter_c;
    doc["provenance"] = to_string(w.provenance);
    doc["kernel_dimension"] = w.kernel_dimension;
    return doc;
}

PerturbationWitness parse_witness(const Json& doc) {
    check_version(doc, "witness");
    PerturbationWitness w;
    const Json& N = require(doc, "N", "/");
    if (!N.is_number_unsigned()) throw DocumentError("/N", "expected a nonnegative integer");
    const Json& vec = require(doc, "coefficient_vector", "/");
    if (!vec.is_array()) throw DocumentError("/coefficient_vector", "expected an array of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < vec.size(); ++i) v.push_back(number_at(vec[i], "/coefficient_vector/" + std::to_string(i)));
    try {
        w.p = MSymmetricPolynomial(N.get<std::size_t>(), std::move(v));
    } catch (const std::invalid_argument& e) {
        throw DocumentError("/coefficient_vector", e.what());
    }
    if (doc.contains("phi2_zeros")) w.phi2_zeros = complex_list(doc.at("phi2_zeros"), "/phi2_zeros");
    w.epsilon = number_at(require(doc, "epsilon", "/"), "/epsilon");
    w.recenter_c = number_at(require(doc, "recenter_c", "/"), "/recenter_c");
    if (doc.contains("provenance")) {
        const Json& p = doc.at("provenance");
        if (p == "kernel_path") w.provenance = Provenance::kernel_path;
        else if (p == "degree_overflow_path") w.provenance = Provenance::degree_overflow_path;
        else throw DocumentError("/provenance", "expected \"kernel_path\" or \"degree_overflow_path\"");
    }
    if (doc.contains("kernel_dimension") && doc.at("kernel_dimension").is_number_unsigned())
        w.kernel_dimension = doc.at("kernel_dimension").get<std::size_t>();
    return w;
}

Json membership_to_json(const MembershipReport& r) {
    Json j;
    j["accepted"] = r.accepted;
    j["scale"] = r.scale;
    j["tolerance"] = r.tolerance;
    Json holes = Json::array();
    for (const auto& h : r.holes) {
        Json row;
        row["k"] = h.k;
        row["residual"] = h.residual;
        holes.push_back(row);
    }
    j["holes"] = holes;
    return j;
}

Json witness_report_to_json(const WitnessReport& r) {
    Json j;
    j["verifies"] = r.verifies();
    j["shape_ok"] = r.shape_ok;
    j["h_realness_residual"] = r.h_realness_residual;
    j["h_variation"] = r.h_variation;
    Json holes = Json::array();
    for (const auto& h : r.hole_residuals) {
        Json row;
        row["k"] = h.k;
        row["residual"] = h.residual;
        holes.push_back(row);
    }
    j["hole_residuals"] = holes;
    j["hole_scale"] = r.hole_scale;
    j["negative_residual"] = r.negative_residual;
    j["min_multiplier"] = r.min_multiplier;
    j["norm_f"] = r.norm_f;
    j["norm_plus"] = r.norm_plus;
    j["norm_minus"] = r.norm_minus;
    j["membership_plus"] = membership_to_json(r.membership_plus);
    j["membership_minus"] = membership_to_json(r.membership_minus);
    j["midpoint_residual"] = r.midpoint_residual;
    j["grid_n"] = r.grid_n;
    j["failures"] = r.failures;
    return j;
}

void write_json(std::ostream& os, const Json& j) {
    write_value(os, j, 0);
    os << "\n";
}

std::string dump_json(const Json& j) {
    std::ostringstream os;
    write_json(os, j);
    return os.str();
}

}  // namespace hardy
