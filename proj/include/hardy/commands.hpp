#ifndef HARDY_COMMANDS_HPP
#define HARDY_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hardy/documents.hpp"

namespace hardy {

namespace exit_code {
inline constexpr int extreme = 0;
inline constexpr int verified = 0;
inline constexpr int not_verified = 1;
inline constexpr int input_error = 2;
inline constexpr int max_retries = 3;
inline constexpr int non_extreme = 10;
inline constexpr int borderline = 11;
}  // namespace exit_code

/// The outer factor has a root strictly inside the disk.
class NotOuterError : public std::invalid_argument {
   public:
    explicit NotOuterError(const OuterCheck& check);
    const OuterCheck& check() const noexcept { return check_; }

   private:
    OuterCheck check_;
};

/// Reads HARDY_TOL_RANK and HARDY_TOL_QUAD; malformed values throw DocumentError.
ToleranceOverrides overrides_from_environment();

/// defaults < problem options < environment < flags.
Tolerances resolve_tolerances(const ToleranceOverrides& problem, const ToleranceOverrides& environment,
                              const ToleranceOverrides& flags);

struct Analysis {
    Json report;
    VerdictStatus status = VerdictStatus::extreme;
    std::size_t rank = 0;
    std::size_t two_m = 0;
    std::optional<DeltaResult> delta;
    double min_singular_value = 0.0;
};

/*
 * Full pipeline on one problem: outerness, normalization, membership,
 * verdict, single-hole delta, exposedness and (for non-extreme verdicts
 * when with_witness is set) a verified witness. Throws NotOuterError and
 * NotInSpaceError on input that is not a member.
 */
Analysis analyze_problem(const ProblemDocument& problem, const Tolerances& tol, bool with_witness = true);

int exit_code_for(VerdictStatus s) noexcept;

int cmd_analyze(const std::string& path, const ToleranceOverrides& environment, const ToleranceOverrides& flags,
                std::ostream& out, std::ostream& err);

/// The witness file may be a witness document or a full analysis report.
int cmd_certify(const std::string& problem_path, const std::string& witness_path,
                const ToleranceOverrides& environment, std::ostream& out, std::ostream& err);

struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    /// Inclusive grid start, start + step, ... up to stop.
    std::vector<double> values() const;
};

/// Parses "a:b:step"; throws DocumentError.
SweepAxis parse_range(const std::string& name, const std::string& range);

struct SweepOptions {
    std::vector<SweepAxis> axes;
    std::size_t jobs = 1;
};

/*
 * Template: a problem document plus "parameters": {name: JSON pointer}. Each
 * named pointer must address a number in the document. Rows run over the
 * cartesian product of the axes, first axis outermost.
 */
int cmd_sweep(const std::string& template_path, const SweepOptions& options, const ToleranceOverrides& environment,
              const ToleranceOverrides& flags, std::ostream& csv, std::ostream& err);

/*
 * Generator input: { "holes": [...], "inner_zeros": [...], "outer_denominator": [...],
 *         "numerator_degree": d, "max_retries": n, "root_clearance": x }
 */
int cmd_gen(const std::string& spec_path, std::uint64_t seed, std::ostream& out, std::ostream& err);

/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);
std::string format_double(double v);

}  // namespace hardy

#endif  // HARDY_COMMANDS_HPP
