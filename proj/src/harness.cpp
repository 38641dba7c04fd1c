#include "moritakit/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "moritakit/morita.hpp"

namespace moritakit {

namespace {

// ---------------------------------------------------------------------------
// JSON scalar/matrix conventions: complex numbers as [re, im], matrices as
// row-major nested arrays.
// ---------------------------------------------------------------------------

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError(where + ": complex scalar must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ValidationError(where + ": matrix must be a nonempty array of rows");
    const Index rows = static_cast<Index>(j.size());
    if (!j[0].is_array() || j[0].empty())
        throw ValidationError(where + ": matrix rows must be nonempty arrays");
    const Index cols = static_cast<Index>(j[0].size());
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw ValidationError(where + ": ragged matrix rows");
        for (Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                        where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    ensure_finite(m, where.c_str());
    return m;
}

std::vector<std::vector<int>> table_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ValidationError(where + ": table must be a nonempty array");
    std::vector<std::vector<int>> table;
    for (const auto& row : j) {
        if (!row.is_array()) throw ValidationError(where + ": table rows must be arrays");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw ValidationError(where + ": table entries must be integers");
            r.push_back(v.get<int>());
        }
        table.push_back(std::move(r));
    }
    return table;
}

SetAction set_action_from_json(const json& j, const std::string& where) {
    SetAction sa;
    if (!j.contains("points") || !j["points"].is_number_integer())
        throw ValidationError(where + ".points: required integer");
    sa.points = j["points"].get<int>();
    if (!j.contains("perms") || !j["perms"].is_array())
        throw ValidationError(where + ".perms: required array of permutations");
    for (const auto& p : j["perms"]) {
        std::vector<int> perm;
        if (!p.is_array()) throw ValidationError(where + ".perms: each permutation must be an array");
        for (const auto& v : p) {
            if (!v.is_number_integer())
                throw ValidationError(where + ".perms: permutation entries must be integers");
            perm.push_back(v.get<int>());
        }
        sa.perms.push_back(std::move(perm));
    }
    return sa;
}

json set_action_to_json(const SetAction& sa) {
    json j;
    j["points"] = sa.points;
    j["perms"] = sa.perms;
    return j;
}

// ---------------------------------------------------------------------------
// Report-struct serializers.
// ---------------------------------------------------------------------------

json action_report_to_json(const ActionReport& r) {
    json j;
    j["identity_residual"] = r.identity_residual;
    j["homomorphism_residual"] = r.homomorphism_residual;
    j["multiplicativity_residual"] = r.multiplicativity_residual;
    j["unitality_residual"] = r.unitality_residual;
    j["involutivity_residual"] = r.involutivity_residual;
    j["degenerate_elements"] = r.degenerate_elements;
    j["pass"] = r.pass;
    return j;
}

json hilbert_report_to_json(const HilbertReport& r) {
    json j;
    j["psd_residual"] = r.psd_residual;
    j["nondegeneracy_margin"] = r.nondegeneracy_margin;
    j["symmetry_residual"] = r.symmetry_residual;
    j["right_linearity_residual"] = r.right_linearity_residual;
    j["invariance_residual"] = r.invariance_residual;
    j["samples"] = r.samples;
    j["pass"] = r.pass;
    return j;
}

json frame_to_json(const FrameWitness& f) {
    json j;
    j["feasible"] = f.feasible;
    j["residual"] = f.residual;
    j["terms"] = f.a_list.size();
    return j;
}

json context_report_to_json(const ContextReport& r) {
    json j;
    j["left_identity_residual"] = r.left_identity_residual;
    j["right_identity_residual"] = r.right_identity_residual;
    j["samples"] = r.samples;
    j["pass"] = r.pass;
    return j;
}

json equivalence_to_json(const EquivalenceCertificate& c) {
    json j;
    j["context"] = context_report_to_json(c.context);
    j["axiom_a_residual"] = c.axiom_a_residual;
    j["fullness_rank_base"] = c.fullness_rank_base;
    j["dim_base"] = c.dim_base;
    j["fullness_rank_crossed"] = c.fullness_rank_crossed;
    j["dim_crossed"] = c.dim_crossed;
    j["frame"] = frame_to_json(c.frame);
    j["module_frame"] = frame_to_json(c.module_frame);
    j["psd_residual_base"] = c.psd_residual_base;
    j["psd_residual_crossed"] = c.psd_residual_crossed;
    j["positive_decomposition_residual"] = c.positive_decomposition_residual;
    j["translate_frame_residual"] = c.translate_frame_residual;
    j["y_span_rank"] = c.y_span_rank;
    j["verdict"] = c.verdict;
    j["reasons"] = c.reasons;
    return j;
}

json unital_to_json(const UnitalCoveringCertificate& c) {
    json j;
    j["action"] = action_report_to_json(c.action);
    j["fixed_point_residual"] = c.fixed_point_residual;
    j["hilbert"] = hilbert_report_to_json(c.hilbert);
    j["module_frame"] = frame_to_json(c.module_frame);
    j["galois_frame"] = frame_to_json(c.galois_frame);
    j["frames_disagree"] = c.frames_disagree;
    j["certified"] = c.certified;
    return j;
}

json compactification_to_json(const CompactificationReport& r) {
    json j;
    j["ideal_essential"] = r.ideal_essential;
    j["trivial_compactification"] = r.trivial_compactification;
    j["nonessential_caveat"] = r.nonessential_caveat;
    j["unital"] = unital_to_json(r.unital);
    j["recomputed_dim"] = r.recomputed_dim;
    j["ideal_rank"] = r.ideal_rank;
    j["fullness_rank_base"] = r.fullness_rank_base;
    j["fullness_rank_crossed"] = r.fullness_rank_crossed;
    j["expected_crossed"] = r.expected_crossed;
    j["pass"] = r.pass;
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

json general_covering_to_json(const GeneralCoveringReport& r) {
    json j;
    j["union_rank"] = r.union_rank;
    j["base_dim"] = r.base_dim;
    j["union_spans_base"] = r.union_spans_base;
    json corners = json::array();
    for (const auto& c : r.corners) corners.push_back(compactification_to_json(c));
    j["corners"] = std::move(corners);
    j["pass"] = r.pass;
    return j;
}

json tolerance_to_json(const Tolerance& t) {
    json j;
    j["eps_eq"] = t.eps_eq;
    j["eps_psd"] = t.eps_psd;
    j["eps_rank"] = t.eps_rank;
    j["eps_solve"] = t.eps_solve;
    return j;
}

Tolerance tolerance_from_json(const json& j) {
    Tolerance t;
    t.eps_eq = j.at("eps_eq").get<double>();
    t.eps_psd = j.at("eps_psd").get<double>();
    t.eps_rank = j.at("eps_rank").get<double>();
    t.eps_solve = j.at("eps_solve").get<double>();
    return t;
}

unsigned long long mix_seed(unsigned long long seed, const std::string& name) {
    unsigned long long h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return seed ^ h;
}

// Crossed-product C*-contract sampling: representation residuals, the
// C*-identity, dimension count, and the involution-convention comparison.
json crossed_contract(const CoveringCandidate& cand, int samples, unsigned long long seed,
                      const Tolerance& tol) {
    const AlgebraAction& act = cand.action;
    const StarAlgebra& alg = *act.algebra;
    const Index d = alg.dim();
    const int ord = act.group->order();
    Rng rng(seed + 2);

    auto random_crossed = [&]() {
        CrossedElement x = crossed_zero(act);
        for (int g = 0; g < ord; ++g)
            x.components[static_cast<std::size_t>(g)] = alg.from_coordinates(rng.vector(d));
        return x;
    };

    double mul_res = 0.0, star_res = 0.0, cstar_res = 0.0, assoc_res = 0.0;
    double star_iso_res = 0.0, twisted_antihom = 0.0, untwisted_antihom = 0.0,
           untwisted_star_rep = 0.0;
    for (int s = 0; s < samples; ++s) {
        CrossedElement a = random_crossed();
        CrossedElement b = random_crossed();
        Matrix ra = regular_representation(a, tol);
        Matrix rb = regular_representation(b, tol);

        mul_res = std::max(mul_res,
                           frobenius(regular_representation(cp_mul(a, b), tol) - ra * rb));
        star_res = std::max(star_res,
                            frobenius(regular_representation(cp_star(a), tol) - Matrix(ra.adjoint())));
        double na = operator_norm(ra);
        double naa = operator_norm(regular_representation(cp_mul(cp_star(a), a), tol));
        cstar_res = std::max(cstar_res, std::abs(naa - na * na) / std::max(1.0, na * na));
        star_iso_res = std::max(star_iso_res,
                                std::abs(operator_norm(regular_representation(cp_star(a), tol)) - na));

        CrossedElement c = random_crossed();
        assoc_res = std::max(assoc_res, cp_distance(cp_mul(cp_mul(a, b), c), cp_mul(a, cp_mul(b, c))));

        twisted_antihom = std::max(
            twisted_antihom, cp_distance(cp_star(cp_mul(a, b)), cp_mul(cp_star(b), cp_star(a))));
        untwisted_antihom =
            std::max(untwisted_antihom, cp_distance(cp_star_untwisted(cp_mul(a, b)),
                                                    cp_mul(cp_star_untwisted(b), cp_star_untwisted(a))));
        untwisted_star_rep = std::max(
            untwisted_star_rep,
            frobenius(regular_representation(cp_star_untwisted(a), tol) - Matrix(ra.adjoint())));
    }

    // Dimension: the single-component elements over basis x group span the
    // crossed product.
    std::vector<Matrix> span;
    for (int g = 0; g < ord; ++g)
        for (Index i = 0; i < d; ++i)
            span.push_back(Matrix(
                cp_flatten(y_element(act, alg.basis()[static_cast<std::size_t>(i)], g))));
    Index dim = subspace_rank(span, tol);

    json j;
    j["dim"] = dim;
    j["expected_dim"] = static_cast<Index>(ord) * d;
    j["samples"] = samples;
    j["rho_mul_residual"] = mul_res;
    j["rho_star_residual"] = star_res;
    j["rho_star_isometry_residual"] = star_iso_res;
    j["cstar_identity_relative_residual"] = cstar_res;
    j["associativity_residual"] = assoc_res;
    j["involution"] = "twisted";
    j["twisted_antihomomorphism_residual"] = twisted_antihom;
    j["untwisted_antihomomorphism_residual"] = untwisted_antihom;
    j["untwisted_star_representation_residual"] = untwisted_star_rep;
    j["conventions_disagree"] =
        untwisted_antihom > 100 * tol.eps_eq || untwisted_star_rep > 100 * tol.eps_eq;
    return j;
}

}  // namespace

json ExampleResult::detail() const { return detail_ ? *detail_ : json::object(); }
void ExampleResult::set_detail(json d) { detail_ = std::make_shared<json>(std::move(d)); }

ExampleSpec example_from_json(const json& j) {
    ExampleSpec spec;
    if (!j.is_object()) throw ValidationError("example: top level must be an object");
    if (!j.contains("name") || !j["name"].is_string())
        throw ValidationError("example.name: required string");
    spec.name = j["name"].get<std::string>();
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ValidationError("example.kind: required string");
    spec.kind = j["kind"].get<std::string>();

    if (j.contains("group") && j["group"].is_string()) {
        spec.group_name = j["group"].get<std::string>();
        spec.group = std::make_shared<const FiniteGroup>(groups::by_name(spec.group_name));
    } else if (j.contains("group_table")) {
        try {
            spec.group = std::make_shared<const FiniteGroup>(
                group_from_table(table_from_json(j["group_table"], "example.group_table")));
        } catch (const ValidationError& e) {
            throw ValidationError("example.group_table: " + std::string(e.what()));
        }
    } else {
        throw ValidationError("example.group: required (name or group_table)");
    }

    if (spec.kind == "set-action") {
        spec.set_action = set_action_from_json(j, "example");
    } else if (spec.kind == "direct-sum") {
        if (!j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty())
            throw ValidationError("example.blocks: required nonempty array");
        for (const auto& b : j["blocks"])
            spec.blocks.push_back(set_action_from_json(b, "example.blocks"));
    } else if (spec.kind == "inner-matrix" || spec.kind == "explicit") {
        if (!j.contains("unitaries") || !j["unitaries"].is_array() || j["unitaries"].empty())
            throw ValidationError("example.unitaries: required nonempty array");
        for (std::size_t k = 0; k < j["unitaries"].size(); ++k) {
            Matrix u = matrix_from_json(j["unitaries"][k], "example.unitaries[" + std::to_string(k) + "]");
            if (u.rows() != u.cols())
                throw ValidationError("example.unitaries: matrices must be square");
            if (max_abs(u * u.adjoint() - Matrix::Identity(u.rows(), u.rows())) > 1e-9)
                throw ValidationError("example.unitaries[" + std::to_string(k) + "]: not unitary");
            spec.unitaries.push_back(std::move(u));
        }
        spec.matrix_size = spec.unitaries.front().rows();
        if (spec.kind == "explicit") {
            if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
                throw ValidationError("example.ambient_dim: required integer");
            spec.ambient_dim = j["ambient_dim"].get<Index>();
            if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].empty())
                throw ValidationError("example.basis: required nonempty array");
            for (std::size_t k = 0; k < j["basis"].size(); ++k)
                spec.basis.push_back(
                    matrix_from_json(j["basis"][k], "example.basis[" + std::to_string(k) + "]"));
            spec.unit = j.contains("unit")
                            ? matrix_from_json(j["unit"], "example.unit")
                            : Matrix(Matrix::Identity(spec.ambient_dim, spec.ambient_dim));
        }
    } else {
        throw ValidationError("example.kind: unknown kind '" + spec.kind + "'");
    }

    if (j.contains("expected")) {
        const json& e = j["expected"];
        if (!e.is_object()) throw ValidationError("example.expected: must be an object");
        if (e.contains("free")) {
            if (!e["free"].is_boolean()) throw ValidationError("example.expected.free: must be boolean");
            spec.expected_free = e["free"].get<bool>();
        }
        if (e.contains("expect_pass")) {
            if (!e["expect_pass"].is_boolean())
                throw ValidationError("example.expected.expect_pass: must be boolean");
            spec.expected_pass = e["expect_pass"].get<bool>();
        }
    }
    return spec;
}

json example_to_json(const ExampleSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["kind"] = spec.kind;
    if (!spec.group_name.empty())
        j["group"] = spec.group_name;
    else if (spec.group)
        j["group_table"] = spec.group->table;
    if (spec.kind == "set-action") {
        j["points"] = spec.set_action.points;
        j["perms"] = spec.set_action.perms;
    } else if (spec.kind == "direct-sum") {
        json blocks = json::array();
        for (const auto& b : spec.blocks) blocks.push_back(set_action_to_json(b));
        j["blocks"] = std::move(blocks);
    } else if (spec.kind == "inner-matrix" || spec.kind == "explicit") {
        json us = json::array();
        for (const auto& u : spec.unitaries) us.push_back(matrix_to_json(u));
        j["unitaries"] = std::move(us);
        if (spec.kind == "explicit") {
            j["ambient_dim"] = spec.ambient_dim;
            json basis = json::array();
            for (const auto& b : spec.basis) basis.push_back(matrix_to_json(b));
            j["basis"] = std::move(basis);
            j["unit"] = matrix_to_json(spec.unit);
        }
    }
    if (spec.expected_free || spec.expected_pass) {
        json e;
        if (spec.expected_free) e["free"] = *spec.expected_free;
        if (spec.expected_pass) e["expect_pass"] = *spec.expected_pass;
        j["expected"] = std::move(e);
    }
    return j;
}

ExampleSpec load_example(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open example file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("parse error in " + path + ": " + e.what());
    }
    return example_from_json(j);
}

BuiltModel build_model(const ExampleSpec& spec, const Tolerance& tol) {
    BuiltModel out;
    try {
        if (spec.kind == "set-action") {
            SetCovering sc = covering_from_set_action(spec.set_action, spec.group, tol);
            out.covering = std::move(sc.covering);
            out.ground_truth_free = sc.free;
            out.family.ideals.push_back(out.covering.base->basis());
        } else if (spec.kind == "direct-sum") {
            SetAction merged = spec.blocks.front();
            for (std::size_t b = 1; b < spec.blocks.size(); ++b)
                merged = direct_sum(merged, spec.blocks[b]);
            SetCovering sc = covering_from_set_action(merged, spec.group, tol);
            out.covering = std::move(sc.covering);
            out.ground_truth_free = sc.free;
            // One block ideal of the base per summand.
            Index offset = 0;
            for (const auto& block : spec.blocks) {
                std::vector<Matrix> ideal;
                for (const Matrix& b : out.covering.base->basis()) {
                    double inside = b.diagonal().segment(offset, block.points).cwiseAbs().sum();
                    if (inside > tol.eps_eq) ideal.push_back(b);
                }
                out.family.ideals.push_back(std::move(ideal));
                offset += block.points;
            }
        } else if (spec.kind == "inner-matrix") {
            InnerMatrixModel model = inner_matrix_model(spec.matrix_size, spec.group, spec.unitaries, tol);
            if (!model.accepted) {
                out.ok = false;
                out.message = model.reason;
                return out;
            }
            out.covering = std::move(model.covering);
            out.family.ideals.push_back(out.covering.base->basis());
        } else if (spec.kind == "explicit") {
            auto algebra = std::make_shared<StarAlgebra>(spec.ambient_dim, spec.basis,
                                                         spec.unit.size() == 0
                                                             ? Matrix(Matrix::Identity(spec.ambient_dim,
                                                                                       spec.ambient_dim))
                                                             : spec.unit);
            StructureReport sr = verify_star_algebra(*algebra, tol);
            if (!sr.pass) {
                out.ok = false;
                out.message = "explicit basis is not a star algebra";
                return out;
            }
            std::vector<Eigen::MatrixXcd> maps;
            for (const Matrix& u : spec.unitaries) {
                Eigen::MatrixXcd m(algebra->dim(), algebra->dim());
                for (Index k = 0; k < algebra->dim(); ++k) {
                    Matrix moved = u * algebra->basis()[static_cast<std::size_t>(k)] * u.adjoint();
                    m.col(k) = algebra->coordinates_of(moved, tol);
                }
                maps.push_back(std::move(m));
            }
            AlgebraAction action{spec.group, algebra, std::move(maps)};
            out.covering = make_covering(std::move(action), tol);
            out.family.ideals.push_back(out.covering.base->basis());
        } else {
            throw ValidationError("unknown kind: " + spec.kind);
        }

        // Degenerate actions cannot form coverings; reject structurally.
        ActionReport action_report = verify_action(out.covering.action, tol);
        if (!action_report.degenerate_elements.empty()) {
            out.ok = false;
            out.message = "degenerate action: element " +
                          std::to_string(action_report.degenerate_elements.front()) +
                          " acts as the identity";
            return out;
        }
        out.ok = true;
    } catch (const Error& e) {
        out.ok = false;
        out.message = e.what();
    }
    return out;
}

ExampleResult run_verification(const ExampleSpec& spec, const RunOptions& opts) {
    ExampleResult result;
    result.name = spec.name;
    result.kind = spec.kind;
    result.has_expected = spec.expected_pass.has_value();
    result.expected_pass = spec.expected_pass.value_or(false);

    const auto t0 = std::chrono::steady_clock::now();
    const unsigned long long seed = mix_seed(opts.seed, spec.name);

    BuiltModel model = build_model(spec, opts.tol);
    result.builder_ok = model.ok;
    json detail;
    if (!model.ok) {
        result.builder_message = model.message;
        result.verdict = false;
        result.match = false;
        detail["builder_error"] = model.message;
        result.set_detail(std::move(detail));
        return result;
    }

    const CoveringCandidate& cand = model.covering;
    detail["dims"] = {
        {"ambient", cand.action.algebra->ambient_dim()},
        {"algebra", cand.action.algebra->dim()},
        {"base", cand.base->dim()},
        {"group_order", cand.action.group->order()},
        {"crossed", static_cast<Index>(cand.action.group->order()) * cand.action.algebra->dim()},
    };
    if (model.ground_truth_free)
        detail["ground_truth"] = {{"free", *model.ground_truth_free}};

    EquivalenceCertificate cert;
    try {
        UnitalCoveringCertificate unital =
            certify_unital_covering(cand, opts.tol, opts.samples, seed);
        detail["unital_covering"] = unital_to_json(unital);

        MoritaContext ctx = make_morita_context(cand);
        cert = certify_strong_morita(ctx, opts.tol, opts.samples, seed);
        detail["equivalence"] = equivalence_to_json(cert);

        detail["crossed_contract"] = crossed_contract(cand, opts.samples, seed, opts.tol);

        GeneralCoveringReport general =
            verify_general_covering(cand, model.family, opts.tol, opts.samples, seed);
        detail["general_covering"] = general_covering_to_json(general);
    } catch (const Error& e) {
        // Numerical failure mid-certification: surface it as a structured
        // failure rather than aborting the whole suite.
        result.builder_ok = false;
        result.builder_message = std::string("certification error: ") + e.what();
        result.verdict = false;
        result.match = false;
        detail["certification_error"] = e.what();
        result.set_detail(std::move(detail));
        return result;
    }

    result.verdict = cert.verdict;
    if (result.has_expected) result.match = result.verdict == result.expected_pass;
    if (spec.expected_free && model.ground_truth_free)
        detail["ground_truth"]["free_matches_spec"] = *spec.expected_free == *model.ground_truth_free;

    const auto t1 = std::chrono::steady_clock::now();
    result.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.set_detail(std::move(detail));
    return result;
}

json report_to_json(const Report& report) {
    json j;
    j["artifact"] = report.artifact;
    j["version"] = report.version;
    j["seed"] = report.seed;
    j["tolerances"] = tolerance_to_json(report.tolerances);

    json examples = json::array();
    int matched = 0, mismatched = 0, builder_failures = 0, passes = 0;
    double worst_timing = 0.0;
    for (const auto& r : report.examples) {
        json e;
        e["name"] = r.name;
        e["kind"] = r.kind;
        e["builder_ok"] = r.builder_ok;
        if (!r.builder_message.empty()) e["builder_message"] = r.builder_message;
        e["verdict"] = r.verdict;
        e["has_expected"] = r.has_expected;
        if (r.has_expected) e["expected_pass"] = r.expected_pass;
        e["match"] = r.match;
        e["timing_ms"] = r.timing_ms;
        e["detail"] = r.detail();
        examples.push_back(std::move(e));

        if (!r.builder_ok) ++builder_failures;
        if (r.has_expected) (r.match ? matched : mismatched) += 1;
        if (r.verdict) ++passes;
        worst_timing = std::max(worst_timing, r.timing_ms);
    }
    j["examples"] = std::move(examples);
    j["summary"] = {
        {"examples", report.examples.size()},
        {"matched", matched},
        {"mismatched", mismatched},
        {"builder_failures", builder_failures},
        {"pass_verdicts", passes},
    };
    j["total_timing_ms"] = report.total_timing_ms;
    return j;
}

Report report_from_json(const json& j) {
    Report report;
    report.artifact = j.at("artifact").get<std::string>();
    report.version = j.at("version").get<std::string>();
    report.seed = j.at("seed").get<unsigned long long>();
    report.tolerances = tolerance_from_json(j.at("tolerances"));
    report.total_timing_ms = j.value("total_timing_ms", 0.0);
    for (const auto& e : j.at("examples")) {
        ExampleResult r;
        r.name = e.at("name").get<std::string>();
        r.kind = e.at("kind").get<std::string>();
        r.builder_ok = e.at("builder_ok").get<bool>();
        r.builder_message = e.value("builder_message", "");
        r.verdict = e.at("verdict").get<bool>();
        r.has_expected = e.at("has_expected").get<bool>();
        r.expected_pass = e.value("expected_pass", false);
        r.match = e.at("match").get<bool>();
        r.timing_ms = e.value("timing_ms", 0.0);
        r.set_detail(e.value("detail", json::object()));
        report.examples.push_back(std::move(r));
    }
    return report;
}

json strip_timing(json j) {
    if (j.is_object()) {
        j.erase("timing_ms");
        j.erase("total_timing_ms");
        for (auto& [key, value] : j.items()) value = strip_timing(value);
    } else if (j.is_array()) {
        for (auto& value : j) value = strip_timing(value);
    }
    return j;
}

Report run_suite(const std::vector<ExampleSpec>& specs, const RunOptions& opts) {
    if (specs.empty()) throw ValidationError("no examples");
    std::vector<ExampleSpec> sorted = specs;
    std::sort(sorted.begin(), sorted.end(),
              [](const ExampleSpec& a, const ExampleSpec& b) { return a.name < b.name; });

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ExampleResult> results(sorted.size());
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < sorted.size(); ++i)
            results[i] = run_verification(sorted[i], opts);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= sorted.size()) break;
                results[i] = run_verification(sorted[i], opts);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    const auto t1 = std::chrono::steady_clock::now();

    Report report;
    report.version = kVersion;
    report.seed = opts.seed;
    report.tolerances = opts.tol;
    report.examples = std::move(results);
    report.total_timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

int suite_exit_code(const Report& report) {
    bool builder_failure = false;
    bool mismatch = false;
    for (const auto& r : report.examples) {
        if (!r.builder_ok) builder_failure = true;
        if (r.has_expected && !r.match) mismatch = true;
    }
    if (builder_failure) return 2;
    return mismatch ? 1 : 0;
}

namespace {

ExampleSpec set_example(std::string name, const std::string& group, SetAction sa, bool free) {
    ExampleSpec spec;
    spec.name = std::move(name);
    spec.kind = "set-action";
    spec.group_name = group;
    spec.group = std::make_shared<const FiniteGroup>(groups::by_name(group));
    spec.set_action = std::move(sa);
    spec.expected_free = free;
    spec.expected_pass = free;
    return spec;
}

// Regular action by left translation.
SetAction regular_action(const FiniteGroup& g) {
    SetAction sa;
    sa.points = g.order();
    sa.perms.resize(static_cast<std::size_t>(g.order()));
    for (int a = 0; a < g.order(); ++a) {
        sa.perms[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(g.order()));
        for (int y = 0; y < g.order(); ++y)
            sa.perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(y)] = g.mul(a, y);
    }
    return sa;
}

SetAction cycle_action(int n) {
    // C_n shifting n points.
    SetAction sa;
    sa.points = n;
    for (int a = 0; a < n; ++a) {
        std::vector<int> p(static_cast<std::size_t>(n));
        for (int y = 0; y < n; ++y) p[static_cast<std::size_t>(y)] = (y + a) % n;
        sa.perms.push_back(std::move(p));
    }
    return sa;
}

SetAction with_fixed_points(SetAction sa, int extra) {
    for (auto& p : sa.perms)
        for (int k = 0; k < extra; ++k) p.push_back(sa.points + k);
    sa.points += extra;
    return sa;
}

}  // namespace

std::vector<ExampleSpec> builtin_examples() {
    std::vector<ExampleSpec> out;

    {
        SetAction sa;
        sa.points = 1;
        sa.perms = {{0}};
        out.push_back(set_example("c1-trivial", "C1", sa, true));
    }
    out.push_back(set_example("c2-swap", "C2", cycle_action(2), true));
    {
        SetAction sa = direct_sum(cycle_action(2), direct_sum(cycle_action(2), cycle_action(2)));
        out.push_back(set_example("c2-three-orbits", "C2", sa, true));
    }
    out.push_back(set_example("c2-branched", "C2", with_fixed_points(cycle_action(2), 1), false));
    out.push_back(set_example("c3-cycle", "C3", cycle_action(3), true));
    out.push_back(set_example("c3-branched", "C3", with_fixed_points(cycle_action(3), 1), false));
    out.push_back(set_example("c4-regular", "C4", cycle_action(4), true));
    out.push_back(set_example("c4-branched", "C4", with_fixed_points(cycle_action(4), 1), false));

    {
        FiniteGroup v4 = groups::klein_four();
        out.push_back(set_example("v4-regular", "V4", regular_action(v4), true));
        // a swaps {0,1}, b swaps {2,3}: faithful but every point has a
        // nontrivial stabilizer.
        SetAction sa;
        sa.points = 4;
        sa.perms = {{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}};
        out.push_back(set_example("v4-two-swaps", "V4", sa, false));
    }
    {
        FiniteGroup s3 = groups::symmetric3();
        out.push_back(set_example("s3-regular", "S3", regular_action(s3), true));
        // Natural action on 3 letters: transitive, faithful, stabilizers of
        // order 2.
        SetAction sa;
        sa.points = 3;
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perms) sa.perms.push_back({p[0], p[1], p[2]});
        out.push_back(set_example("s3-natural", "S3", sa, false));
    }
    {
        ExampleSpec spec;
        spec.name = "c2-two-blocks";
        spec.kind = "direct-sum";
        spec.group_name = "C2";
        spec.group = std::make_shared<const FiniteGroup>(groups::cyclic(2));
        spec.blocks = {cycle_action(2), cycle_action(2)};
        spec.expected_free = true;
        spec.expected_pass = true;
        out.push_back(std::move(spec));
    }
    {
        ExampleSpec spec;
        spec.name = "m2-inner-c2";
        spec.kind = "inner-matrix";
        spec.group_name = "C2";
        spec.group = std::make_shared<const FiniteGroup>(groups::cyclic(2));
        Matrix u(2, 2);
        u << 1.0, 0.0, 0.0, -1.0;
        spec.unitaries = {Matrix::Identity(2, 2), u};
        spec.matrix_size = 2;
        spec.expected_pass = true;
        out.push_back(std::move(spec));
    }
    {
        // Conjugation by diag(1, w) for C3 on 2x2 matrices: the spectral
        // grading misses one character, so the crossed pairing cannot be
        // full.
        ExampleSpec spec;
        spec.name = "m2-inner-c3";
        spec.kind = "inner-matrix";
        spec.group_name = "C3";
        spec.group = std::make_shared<const FiniteGroup>(groups::cyclic(3));
        const Complex w = std::polar(1.0, 2.0 * M_PI / 3.0);
        Matrix u1 = Matrix::Identity(2, 2);
        u1(1, 1) = w;
        Matrix u2 = Matrix::Identity(2, 2);
        u2(1, 1) = w * w;
        spec.unitaries = {Matrix::Identity(2, 2), u1, u2};
        spec.matrix_size = 2;
        spec.expected_pass = false;
        out.push_back(std::move(spec));
    }
    return out;
}

ExampleSpec generate_example(const std::string& kind, const std::string& group_name, int size) {
    FiniteGroup group = groups::by_name(group_name);
    const int ord = group.order();
    if (size < 1) throw ValidationError("generate: size must be positive");

    ExampleSpec spec;
    spec.kind = kind;
    spec.group_name = group_name;
    spec.group = std::make_shared<const FiniteGroup>(group);

    if (kind == "set-action") {
        if (size < ord)
            throw ValidationError("generate: set-action size must be at least the group order");
        SetAction reg = regular_action(group);
        int free_orbits = size / ord;
        int leftover = size % ord;
        SetAction merged = reg;
        for (int k = 1; k < free_orbits; ++k) merged = direct_sum(merged, reg);
        merged = with_fixed_points(merged, leftover);
        spec.set_action = merged;
        spec.name = group_name + "-set" + std::to_string(size);
        spec.expected_free = leftover == 0;
        spec.expected_pass = leftover == 0;
        return spec;
    }
    if (kind == "inner-matrix") {
        if (size < ord)
            throw ValidationError("generate: inner-matrix size must be at least the group order");
        // Left regular permutation unitaries padded with the identity:
        // contains every irreducible, so the conjugation action is
        // saturated and the model passes.
        std::vector<Matrix> unitaries;
        for (int g = 0; g < ord; ++g) {
            Matrix u = Matrix::Zero(size, size);
            for (int y = 0; y < ord; ++y) u(group.mul(g, y), y) = 1.0;
            for (int y = ord; y < size; ++y) u(y, y) = 1.0;
            unitaries.push_back(std::move(u));
        }
        spec.unitaries = std::move(unitaries);
        spec.matrix_size = size;
        spec.name = group_name + "-inner" + std::to_string(size);
        spec.expected_pass = true;
        return spec;
    }
    throw ValidationError("generate: unknown kind '" + kind + "'");
}

}  // namespace moritakit
