// Command-line front end: validate, eval, optimize, compare.
//
// Exit codes: 0 ok, 1 domain error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "archopt/archopt.hpp"

namespace {

using namespace archopt;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

int cmd_validate(const std::string& path) {
    Architecture arch;
    try {
        arch = from_json(parse_document(read_file(path)));
    } catch (const SchemaError& e) {
        std::cout << e.what() << "\n";
        return kDomainError;
    }
    auto violations = validate(arch);
    for (const auto& v : violations) std::cout << v.to_string() << "\n";
    if (violations.empty()) std::cout << "ok\n";
    return violations.empty() ? kOk : kDomainError;
}

int cmd_eval(const std::string& model_path, const std::string& sequence_path, const std::string& config_path,
             bool as_json) {
    Architecture arch = load_file(model_path);
    moea::EvaluationSettings settings;
    if (!config_path.empty()) {
        json doc = parse_document(read_file(config_path));
        doc["model"] = model_path;
        doc["max_evaluations"] = 0;
        settings = parse_config(doc, ".").search.evaluation;
    }
    RefactoringSequence seq;
    if (!sequence_path.empty()) seq = load_sequence(read_file(sequence_path));

    moea::Evaluator ev(arch, settings);
    moea::Evaluation e = ev.evaluate(seq);
    Architecture folded = apply_sequence(arch, seq);
    PerformanceResult perf = ev.performance(seq);
    ReliabilityResult rel = reliability(folded);
    auto detections = detect(folded, perf, settings.thresholds);

    if (as_json) {
        json out;
        out["objectives"] = to_json(e.objectives);
        out["valid"] = e.valid;
        out["sequence"] = to_json(seq);
        out["performance"] = to_json(perf);
        out["reliability"] = {{"value", rel.value}, {"per_scenario", rel.per_scenario}};
        out["detections"] = json::array();
        for (const auto& d : detections) out["detections"].push_back(to_json(d));
        std::cout << out.dump(2) << "\n";
        return kOk;
    }
    std::cout << "perfQ        " << format_double(e.objectives.perfq) << "\n"
              << "reliability  " << format_double(e.objectives.reliability) << "\n"
              << "pas          " << e.objectives.pas << "\n"
              << "distance     " << format_double(e.objectives.distance) << "\n\n";
    std::cout << "scenario             throughput    response_time\n";
    for (std::size_t j = 0; j < perf.scenarios.size(); ++j) {
        char line[128];
        std::snprintf(line, sizeof line, "%-20s %-13.6g %-13.6g\n", perf.scenarios[j].c_str(), perf.throughput[j],
                      perf.response_time[j]);
        std::cout << line;
    }
    std::cout << "\nnode                 utilization\n";
    for (std::size_t k = 0; k < perf.nodes.size(); ++k) {
        char line[128];
        std::snprintf(line, sizeof line, "%-20s %.6f\n", perf.nodes[k].c_str(), perf.utilization[k]);
        std::cout << line;
    }
    if (!detections.empty()) std::cout << "\nantipatterns\n";
    for (const auto& d : detections) {
        std::cout << "  " << antipattern_name(d.kind);
        for (const auto& el : d.elements) std::cout << " " << el;
        std::cout << "\n";
    }
    return kOk;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

int cmd_optimize(const std::string& config_path, std::optional<std::size_t> workers, const std::string& out_dir,
                 bool gnuplot) {
    RunConfig cfg = load_config(config_path);
    if (workers) cfg.search.workers = *workers;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!cfg.search.budget.seconds && !cfg.search.budget.max_evaluations)
        throw ConfigError("optimize needs budget_seconds or max_evaluations");
    Architecture arch = load_file(cfg.model_path);
    moea::ParetoFront pf = moea::run(arch, cfg.search);

    std::filesystem::create_directories(cfg.output_dir);
    std::ostringstream csv;
    write_front_csv(csv, pf);
    write_text(std::filesystem::path(cfg.output_dir) / "front.csv", csv.str());
    write_text(std::filesystem::path(cfg.output_dir) / "front.json", to_json(pf).dump(2) + "\n");
    if (gnuplot) {
        std::ostringstream dat;
        write_front_gnuplot(dat, pf);
        write_text(std::filesystem::path(cfg.output_dir) / "front.dat", dat.str());
    }
    std::cerr << pf.meta.algorithm << " seed " << pf.meta.seed << ": " << pf.members.size() << " solutions, "
              << pf.meta.evaluations << " evaluations, " << pf.meta.generations << " generations, "
              << format_double(pf.meta.wall_seconds) << " s" << (pf.meta.budget_truncated ? " (budget-truncated)" : "")
              << "\n";
    return kOk;
}

int cmd_compare(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    Architecture arch = load_file(cfg.model_path);
    CompareResult res = run_compare(arch, cfg, [](const CompareRow& r) {
        std::cerr << r.algorithm << " " << r.budget << " seed " << r.seed << (r.with_pas ? " with" : " without")
                  << " #PAs: " << r.front_size << " solutions, " << r.evaluations << " evaluations\n";
    });
    std::filesystem::create_directories(cfg.output_dir);
    std::ostringstream rows, summary;
    write_compare_csv(rows, res);
    write_summary_csv(summary, res);
    write_text(std::filesystem::path(cfg.output_dir) / "compare.csv", rows.str());
    write_text(std::filesystem::path(cfg.output_dir) / "compare_summary.csv", summary.str());
    print_summary_table(std::cout, res);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Many-objective search of architecture refactoring sequences"};
    app.require_subcommand(1);

    std::string model, sequence, config, out_dir, eval_config;
    bool as_json = false, gnuplot = false;
    std::optional<std::size_t> workers;

    auto* validate_cmd = app.add_subcommand("validate", "Check an architecture model");
    validate_cmd->add_option("model", model, "Architecture JSON file")->required()->check(CLI::ExistingFile);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate the objectives of a model and optional sequence");
    eval_cmd->add_option("model", model, "Architecture JSON file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--sequence,-s", sequence, "Refactoring sequence JSON file")->check(CLI::ExistingFile);
    eval_cmd->add_option("--config,-c", eval_config, "Config supplying thresholds and BRFs")->check(CLI::ExistingFile);
    eval_cmd->add_flag("--json", as_json, "Machine-readable output");

    auto* opt_cmd = app.add_subcommand("optimize", "Run one optimization and write front.csv/front.json");
    opt_cmd->add_option("config", config, "Run configuration JSON file")->required()->check(CLI::ExistingFile);
    opt_cmd->add_option("--workers,-w", workers, "Parallel evaluation workers")->check(CLI::PositiveNumber);
    opt_cmd->add_option("--output-dir,-o", out_dir, "Override the output directory");
    opt_cmd->add_flag("--gnuplot", gnuplot, "Also write front.dat columns");

    auto* cmp_cmd = app.add_subcommand("compare", "Run the algorithm/budget/#PAs comparison");
    cmp_cmd->add_option("config", config, "Run configuration JSON file")->required()->check(CLI::ExistingFile);
    cmp_cmd->add_option("--output-dir,-o", out_dir, "Override the output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*validate_cmd) return cmd_validate(model);
        if (*eval_cmd) return cmd_eval(model, sequence, eval_config, as_json);
        if (*opt_cmd) return cmd_optimize(config, workers, out_dir, gnuplot);
        if (*cmp_cmd) return cmd_compare(config, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainError;
    }
    return kUsageError;
}
