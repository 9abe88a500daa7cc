#include "qc/atlas.hpp"
#include "qc/errors.hpp"
#include "qc/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "qc: cannot write '" << path << "'\n";
        return 2;
    }
    return 0;
}

int run_check(qc::RunConfig cfg, const std::string& suites, const std::string& json_path) {
    try {
        if (!suites.empty()) qc::parse_suites(suites, cfg);
        const auto outcome = qc::run_check(cfg);
        if (int rc = write_output(json_path, outcome.report); rc != 0) return rc;
        if (!json_path.empty() || outcome.exit_code != 0) {
            std::cerr << (outcome.exit_code == 0 ? "all expected-zero checks are zero\n"
                                                 : "expected-zero checks failed:\n");
            for (const auto& f : outcome.failures) std::cerr << "  " << f << "\n";
        }
        return outcome.exit_code;
    } catch (const qc::ConfigError& e) {
        std::cerr << "qc: " << e.what() << "\n";
        return 2;
    } catch (const qc::SchemaError& e) {
        std::cerr << "qc: " << e.what() << "\n";
        return 2;
    } catch (const qc::SyntaxError& e) {
        std::cerr << "qc: " << e.what() << "\n";
        return 2;
    } catch (const qc::UnknownSymbol& e) {
        std::cerr << "qc: " << e.what() << "\n";
        return 2;
    } catch (const qc::Error& e) {
        std::cerr << "qc: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    }
}

int run_emit(const std::string& name, int n, const std::string& path) {
    try {
        return write_output(path, qc::chart_to_json(qc::make_example(name, n)));
    } catch (const qc::SchemaError& e) {
        std::cerr << "qc: " << e.what() << "\n";
        return 2;
    } catch (const qc::Error& e) {
        std::cerr << "qc: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of quaternionic contact structures"};
    app.require_subcommand(1);

    qc::RunConfig cfg;
    std::string suites;
    std::string json_path;
    int n = 0;
    std::string deform;
    auto* check = app.add_subcommand("check", "Run identity suites at seeded sample points");
    auto* example = check->add_option("--example", cfg.example, "Built-in chart: heisenberg, sphere3sasakian");
    auto* chart = check->add_option("--chart", cfg.chart_path, "Chart JSON file");
    example->excludes(chart);
    chart->excludes(example);
    auto* n_opt = check->add_option("--n", n, "Quaternionic dimension");
    auto* deform_opt = check->add_option("--deform", deform, "Conformal factor mu in the chart DSL");
    check->add_option("--points", cfg.points, "Number of sample points")->capture_default_str();
    check->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
    check->add_option("--jet-order", cfg.jet_order, "Truncation order of jets")->capture_default_str();
    check->add_option("--coeff-bound", cfg.coeff_bound, "Bound on numerators and denominators of sample coordinates")
        ->capture_default_str();
    check->add_option("--suites", suites, "Comma list from structure,torsion,theorem,cone (default: all but cone)");
    check->add_option("--json", json_path, "Report path (default: standard output)");
    check->add_flag("--prescreen", cfg.prescreen, "Run a prime-field pass first and compare verdicts");
    check->add_option("--retries", cfg.retries, "Fresh points tried after a degenerate sample")->capture_default_str();
    check->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)")->capture_default_str();

    std::string emit_name;
    int emit_n = 1;
    std::string emit_path;
    auto* emit = app.add_subcommand("emit", "Write a built-in chart as JSON");
    emit->add_option("name", emit_name, "heisenberg or sphere3sasakian")->required();
    emit->add_option("--n", emit_n, "Quaternionic dimension")->required();
    emit->add_option("--out", emit_path, "Output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (*check) {
        if (*n_opt) cfg.n = n;
        if (*deform_opt) cfg.deform = deform;
        return run_check(cfg, suites, json_path);
    }
    return run_emit(emit_name, emit_n, emit_path);
}
