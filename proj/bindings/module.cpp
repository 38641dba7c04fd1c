#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "moritakit/harness.hpp"
#include "moritakit/morita.hpp"

namespace py = pybind11;
using namespace moritakit;

namespace {

// Certificates cross the boundary as plain python dicts via their json form.
py::object json_to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

/// Python-facing handle bundling a covering candidate with the operations
/// the toolkit exposes on it.
class Covering {
  public:
    Covering(CoveringCandidate cand, std::optional<bool> free)
        : cand_(std::move(cand)), free_(free) {}

    Index ambient_dim() const { return cand_.action.algebra->ambient_dim(); }
    Index algebra_dim() const { return cand_.action.algebra->dim(); }
    Index base_dim() const { return cand_.base->dim(); }
    int group_order() const { return cand_.action.group->order(); }
    std::optional<bool> free() const { return free_; }

    std::vector<Matrix> algebra_basis() const { return cand_.action.algebra->basis(); }
    std::vector<Matrix> base_basis() const { return cand_.base->basis(); }

    Matrix transfer_inner(const Matrix& a, const Matrix& b) const {
        return transfer_inner_matrix(cand_, a, b);
    }

    double hilbert_norm(const Matrix& x) const {
        AlgebraElement e{cand_.action.algebra, x};
        return moritakit::hilbert_norm(cand_, e);
    }

    Matrix apply(int g, const Matrix& m) const { return apply_matrix(cand_.action, g, m); }

    py::dict find_frame() const {
        FrameWitness frame = moritakit::find_frame(cand_);
        py::dict out;
        out["feasible"] = frame.feasible;
        out["residual"] = frame.residual;
        py::list a_list, b_list;
        for (const auto& a : frame.a_list) a_list.append(a.matrix);
        for (const auto& b : frame.b_list) b_list.append(b.matrix);
        out["a_list"] = a_list;
        out["b_list"] = b_list;
        return out;
    }

    py::object certify(int samples = 64) const {
        MoritaContext ctx = make_morita_context(cand_);
        EquivalenceCertificate cert = certify_strong_morita(ctx, Tolerance{}, samples);
        json j;
        j["verdict"] = cert.verdict;
        j["reasons"] = cert.reasons;
        j["axiom_a_residual"] = cert.axiom_a_residual;
        j["context_residual"] = cert.context.max_residual();
        j["fullness_rank_base"] = cert.fullness_rank_base;
        j["dim_base"] = cert.dim_base;
        j["fullness_rank_crossed"] = cert.fullness_rank_crossed;
        j["dim_crossed"] = cert.dim_crossed;
        j["frame_feasible"] = cert.frame.feasible;
        j["frame_residual"] = cert.frame.residual;
        j["module_frame_feasible"] = cert.module_frame.feasible;
        j["module_frame_residual"] = cert.module_frame.residual;
        j["positive_decomposition_residual"] = cert.positive_decomposition_residual;
        return json_to_py(j);
    }

    const CoveringCandidate& candidate() const { return cand_; }

  private:
    CoveringCandidate cand_;
    std::optional<bool> free_;
};

Covering make_set_covering(const std::string& group_name,
                           const std::vector<std::vector<int>>& perms, int points) {
    auto group = std::make_shared<const FiniteGroup>(groups::by_name(group_name));
    SetAction sa;
    sa.points = points;
    sa.perms = perms;
    SetCovering model = covering_from_set_action(sa, group);
    return Covering(std::move(model.covering), model.free);
}

Covering make_inner_covering(const std::string& group_name, const std::vector<Matrix>& unitaries) {
    auto group = std::make_shared<const FiniteGroup>(groups::by_name(group_name));
    if (unitaries.empty()) throw ArgumentError("inner covering needs at least one unitary");
    InnerMatrixModel model = inner_matrix_model(unitaries.front().rows(), group, unitaries);
    if (!model.accepted) throw ArgumentError(model.reason);
    return Covering(std::move(model.covering), std::nullopt);
}

py::object run_builtin_suite(int samples, unsigned long long seed) {
    RunOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    Report report = run_suite(builtin_examples(), opts);
    return json_to_py(strip_timing(report_to_json(report)));
}

py::object verify_file(const std::string& path) {
    RunOptions opts;
    Report report = run_suite({load_example(path)}, opts);
    py::dict out;
    out["exit_code"] = suite_exit_code(report);
    out["report"] = json_to_py(strip_timing(report_to_json(report)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-fold coverings, crossed products, and strong Morita certificates";

    py::register_exception<DimensionError>(m, "DimensionError");
    py::register_exception<MembershipError>(m, "MembershipError");
    py::register_exception<ArgumentError>(m, "ArgumentError");
    py::register_exception<PreconditionError>(m, "PreconditionError");
    py::register_exception<ValidationError>(m, "ValidationError");

    m.attr("__version__") = kVersion;
    m.attr("DEFAULT_SEED") = kDefaultSeed;

    m.def("operator_norm", &operator_norm, py::arg("m"), "largest singular value");
    m.def(
        "is_positive_semidefinite",
        [](const Matrix& m) { return is_positive_semidefinite(m, Tolerance{}); }, py::arg("m"));
    m.def(
        "subspace_rank",
        [](const std::vector<Matrix>& family) { return subspace_rank(family, Tolerance{}); },
        py::arg("family"), "numerical rank of a flattened matrix family");
    m.def(
        "least_squares_solve",
        [](const std::vector<Matrix>& columns, const Matrix& target) {
            LeastSquaresSolution sol = least_squares_solve(columns, target);
            return py::make_tuple(sol.coefficients, sol.residual);
        },
        py::arg("columns"), py::arg("target"));

    py::class_<Covering>(m, "Covering")
        .def_property_readonly("ambient_dim", &Covering::ambient_dim)
        .def_property_readonly("algebra_dim", &Covering::algebra_dim)
        .def_property_readonly("base_dim", &Covering::base_dim)
        .def_property_readonly("group_order", &Covering::group_order)
        .def_property_readonly("free", &Covering::free)
        .def("algebra_basis", &Covering::algebra_basis)
        .def("base_basis", &Covering::base_basis)
        .def("transfer_inner", &Covering::transfer_inner, py::arg("a"), py::arg("b"))
        .def("hilbert_norm", &Covering::hilbert_norm, py::arg("x"))
        .def("apply", &Covering::apply, py::arg("g"), py::arg("m"))
        .def("find_frame", &Covering::find_frame)
        .def("certify", &Covering::certify, py::arg("samples") = 64);

    m.def("set_covering", &make_set_covering, py::arg("group"), py::arg("perms"),
          py::arg("points"), "covering from a permutation action on a finite set");
    m.def("inner_covering", &make_inner_covering, py::arg("group"), py::arg("unitaries"),
          "covering of a full matrix algebra by conjugation");
    m.def("builtin_suite", &run_builtin_suite, py::arg("samples") = 32,
          py::arg("seed") = kDefaultSeed, "run the builtin models, return the report as a dict");
    m.def("verify_file", &verify_file, py::arg("path"),
          "verify one example file, return exit code and report");
}
