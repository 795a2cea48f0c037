#ifndef HARDY_DOCUMENTS_HPP
#define HARDY_DOCUMENTS_HPP

#include <json.hpp>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hardy/certificates.hpp"
#include "hardy/extremality.hpp"
#include "hardy/model.hpp"
#include "hardy/tolerances.hpp"

namespace hardy {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Parse or schema failure; where() is a file/JSON-pointer location.
class DocumentError : public std::runtime_error {
   public:
    DocumentError(std::string where, const std::string& what);
    const std::string& where() const noexcept { return where_; }

   private:
    std::string where_;
};

/// Tolerance overrides from a problem file, the environment, or flags.
struct ToleranceOverrides {
    std::optional<double> rank;
    std::optional<double> quad;
    std::optional<double> membership;
    std::optional<double> root;
    std::optional<double> delta;
    std::optional<std::size_t> grid;
    std::optional<RankBackend> backend;

    void apply(Tolerances& tol) const;
};

struct ProblemDocument {
    PuncturedSpace space;
    FactoredFunction f;
    ToleranceOverrides options;
};

/*
 * Problem schema (format_version 1):
 *   { "format_version": 1, "kind": "problem",
 *     "holes": [k_1, ...],
 *     "inner_zeros": [[re, im], ...], "inner_constant": [re, im],   (optional)
 *     "outer_numerator": [[re, im], ...],                           (z^0 first)
 *     "outer_denominator": [[re, im], ...],  (b_i of 1 - conj(b_i) z, optional)
 *     "options": { "tol_rank": x, "tol_quad": x, "tol_mem": x, "tol_root": x,
 *                  "tol_delta": x, "grid": n, "backend": "svd" | "exact" } }
 * A plain number is accepted wherever a complex pair is expected.
 */
ProblemDocument parse_problem(const Json& doc);
Json problem_to_json(const PuncturedSpace& space, const FactoredFunction& f);

/// Reads and parses a JSON file; parse errors carry the byte offset.
Json load_json(const std::string& path);

Json witness_to_json(const PerturbationWitness& w);
PerturbationWitness parse_witness(const Json& doc);

Json membership_to_json(const MembershipReport& r);
Json witness_report_to_json(const WitnessReport& r);

/// Deterministic JSON text: insertion key order, doubles at 17 significant digits.
void write_json(std::ostream& os, const Json& j);
std::string dump_json(const Json& j);

Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j, const std::string& where);

}  // namespace hardy

#endif  // HARDY_DOCUMENTS_HPP
