#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "moritakit/models.hpp"

namespace moritakit {

using json = nlohmann::json;

/// One example file: a named model recipe plus optional ground truth.
struct ExampleSpec {
    std::string name;
    std::string kind;  // set-action | inner-matrix | direct-sum | explicit
    std::string group_name;  // empty when the table was given inline
    FiniteGroupPtr group;

    SetAction set_action;            // set-action
    std::vector<SetAction> blocks;   // direct-sum
    Index matrix_size = 0;           // inner-matrix
    std::vector<Matrix> unitaries;   // inner-matrix, explicit
    Index ambient_dim = 0;           // explicit
    std::vector<Matrix> basis;       // explicit
    Matrix unit;                     // explicit

    std::optional<bool> expected_free;
    std::optional<bool> expected_pass;
};

ExampleSpec example_from_json(const json& j);
json example_to_json(const ExampleSpec& spec);

/// Reads and validates an example file. ValidationError names the offending
/// field on parse or structural failure.
ExampleSpec load_example(const std::string& path);

/// A constructed model ready for certification.
struct BuiltModel {
    bool ok = false;
    std::string message;  // builder rejection reason when !ok
    CoveringCandidate covering;
    IdealFamily family;  // block ideals for direct sums, the improper family otherwise
    std::optional<bool> ground_truth_free;
};

BuiltModel build_model(const ExampleSpec& spec, const Tolerance& tol = {});

/// Per-example verification outcome. `detail` carries every certificate the
/// run produced; the typed fields are the ones the suite aggregates on.
struct ExampleResult {
    std::string name;
    std::string kind;
    bool builder_ok = false;
    std::string builder_message;
    bool verdict = false;
    bool has_expected = false;
    bool expected_pass = false;
    bool match = true;  // true when no expectation was stated
    double timing_ms = 0.0;
    json detail() const;
    void set_detail(json d);

    std::shared_ptr<json> detail_;  // full certificates, serialized as-is
};

struct RunOptions {
    Tolerance tol;
    unsigned long long seed = kDefaultSeed;
    int samples = 64;
    int jobs = 1;
};

/// Builds the model and runs the full certification pipeline.
ExampleResult run_verification(const ExampleSpec& spec, const RunOptions& opts = {});

/// Aggregate of a whole run; serializable and reloadable without loss.
struct Report {
    std::string artifact = "moritakit";
    std::string version;
    unsigned long long seed = kDefaultSeed;
    Tolerance tolerances;
    std::vector<ExampleResult> examples;  // sorted by name
    double total_timing_ms = 0.0;
};

json report_to_json(const Report& report);
Report report_from_json(const json& j);

/// Removes every timing field; used for determinism comparisons.
json strip_timing(json j);

/// Runs a list of examples (possibly concurrently); results are ordered by
/// name and independent of scheduling.
Report run_suite(const std::vector<ExampleSpec>& specs, const RunOptions& opts = {});

/// The canned model collection: trivial, cyclic, Klein, S3 (natural and
/// regular), branched counterexamples, inner matrix models, direct sums.
std::vector<ExampleSpec> builtin_examples();

/// Canned generator used by the CLI: canonical set or inner-matrix model
/// for the given group and size, with ground truth filled in.
ExampleSpec generate_example(const std::string& kind, const std::string& group_name, int size);

/// Exit-code semantics shared by the CLI: 0 = all expectations matched,
/// 1 = verification mismatch, 2 = input/validation error.
int suite_exit_code(const Report& report);

}  // namespace moritakit
