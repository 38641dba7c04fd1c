#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "moritakit/harness.hpp"

namespace fs = std::filesystem;
using namespace moritakit;

namespace {

Tolerance resolve_tolerance(double cli_tol) {
    if (cli_tol > 0.0) return Tolerance::from_eps_eq(cli_tol);
    if (const char* env = std::getenv("MORITAKIT_TOL")) {
        try {
            return Tolerance::from_eps_eq(std::stod(env));
        } catch (const std::exception&) {
            throw ValidationError("MORITAKIT_TOL is not a valid tolerance");
        }
    }
    return Tolerance{};
}

void write_report(const Report& report, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write report to " + path);
    out << report_to_json(report).dump(2) << "\n";
}

void print_example_line(const ExampleResult& r) {
    std::cout << std::left << std::setw(24) << r.name;
    if (!r.builder_ok) {
        std::cout << " BUILDER-ERROR  " << r.builder_message << "\n";
        return;
    }
    std::cout << (r.verdict ? " pass" : " fail");
    if (r.has_expected) std::cout << (r.match ? "  (expected)" : "  (MISMATCH)");
    std::cout << "\n";
}

void print_residual_table(const json& example) {
    auto row = [](const std::string& name, const json& value) {
        std::cout << "  " << std::left << std::setw(44) << name << value.dump() << "\n";
    };
    std::cout << example.value("name", std::string("?")) << "  ["
              << example.value("kind", std::string("?")) << "]\n";
    if (example.contains("builder_message")) row("builder_message", example["builder_message"]);
    const json detail = example.value("detail", json::object());
    for (const std::string section :
         {"dims", "ground_truth", "unital_covering", "equivalence", "crossed_contract"}) {
        if (!detail.contains(section)) continue;
        std::cout << "  -- " << section << "\n";
        for (const auto& [key, value] : detail[section].items()) {
            if (value.is_object()) {
                for (const auto& [k2, v2] : value.items()) row(key + "." + k2, v2);
            } else {
                row(key, value);
            }
        }
    }
    if (detail.contains("general_covering")) {
        const json& g = detail["general_covering"];
        std::cout << "  -- general_covering\n";
        row("union_rank", g["union_rank"]);
        row("base_dim", g["base_dim"]);
        row("union_spans_base", g["union_spans_base"]);
        row("corners", g["corners"].size());
        row("pass", g["pass"]);
    }
}

std::vector<ExampleSpec> collect_examples(bool builtin, const std::string& dir) {
    std::vector<ExampleSpec> specs;
    if (builtin) specs = builtin_examples();
    if (!dir.empty()) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) specs.push_back(load_example(f.string()));
    }
    return specs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-fold covering to strong Morita equivalence certifier"};
    app.require_subcommand(1);

    std::string file, report_path, dir, kind, group, out_path, example_name;
    double tol_value = 0.0;
    unsigned long long seed = kDefaultSeed;
    int jobs = 1, size = 0;
    bool builtin = false;

    CLI::App* verify = app.add_subcommand("verify", "verify a single example file");
    verify->add_option("file", file, "example file (json)")->required();
    verify->add_option("--tol", tol_value, "override eps_eq (others scale)");
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--report", report_path, "write the full report here");

    CLI::App* suite = app.add_subcommand("suite", "run a collection of examples");
    suite->add_flag("--builtin", builtin, "include the builtin model collection");
    suite->add_option("--dir", dir, "directory with example files");
    suite->add_option("--jobs", jobs, "parallel workers");
    suite->add_option("--tol", tol_value, "override eps_eq (others scale)");
    suite->add_option("--seed", seed, "sampling seed");
    suite->add_option("--report", report_path, "write the aggregate report here");

    CLI::App* generate = app.add_subcommand("generate", "write a canonical example file");
    generate->add_option("--kind", kind, "set-action | inner-matrix")->required();
    generate->add_option("--group", group, "C2 | C3 | C4 | V4 | S3")->required();
    generate->add_option("--size", size, "points (set-action) or matrix size")->required();
    generate->add_option("--out", out_path, "output path")->required();

    CLI::App* explain = app.add_subcommand("explain", "pretty-print one example from a report");
    explain->add_option("report", report_path, "report file")->required();
    explain->add_option("--example", example_name, "example name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            RunOptions opts;
            opts.tol = resolve_tolerance(tol_value);
            opts.seed = seed;
            ExampleSpec spec = load_example(file);
            Report report = run_suite({spec}, opts);
            print_example_line(report.examples.front());
            write_report(report, report_path);
            return suite_exit_code(report);
        }
        if (*suite) {
            RunOptions opts;
            opts.tol = resolve_tolerance(tol_value);
            opts.seed = seed;
            opts.jobs = jobs;
            std::vector<ExampleSpec> specs = collect_examples(builtin, dir);
            Report report = run_suite(specs, opts);
            for (const auto& r : report.examples) print_example_line(r);
            int matched = 0, mismatched = 0;
            for (const auto& r : report.examples)
                if (r.has_expected) (r.match ? matched : mismatched) += 1;
            std::cout << report.examples.size() << " examples, " << matched << " matched, "
                      << mismatched << " mismatched\n";
            write_report(report, report_path);
            return suite_exit_code(report);
        }
        if (*generate) {
            ExampleSpec spec = generate_example(kind, group, size);
            std::ofstream out(out_path);
            if (!out) throw ValidationError("cannot write " + out_path);
            out << example_to_json(spec).dump(2) << "\n";
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }
        if (*explain) {
            std::ifstream in(report_path);
            if (!in) throw ValidationError("cannot open report: " + report_path);
            json j;
            in >> j;
            for (const auto& e : j.at("examples")) {
                if (e.value("name", std::string()) == example_name) {
                    print_residual_table(e);
                    return 0;
                }
            }
            throw ValidationError("example '" + example_name + "' not found in report");
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
