#pragma once

// Result files: front.csv, front.json, gnuplot columns, and JSON dumps of
// performance results and detections.

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "antipatterns.hpp"
#include "model_io.hpp"
#include "moea/run.hpp"
#include "sequence_io.hpp"

namespace archopt {

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

inline std::string run_id(const moea::RunMetadata& m) { return m.algorithm + "-" + std::to_string(m.seed); }

inline constexpr const char* kFrontCsvHeader = "run_id,algorithm,seed,solution_id,perfQ,reliability,pas,distance,actions";

inline void write_front_csv(std::ostream& os, const moea::ParetoFront& front, bool header = true) {
    if (header) os << kFrontCsvHeader << "\n";
    for (std::size_t i = 0; i < front.members.size(); ++i) {
        const auto& m = front.members[i];
        os << run_id(front.meta) << "," << front.meta.algorithm << "," << front.meta.seed << "," << i << ","
           << format_double(m.objectives.perfq) << "," << format_double(m.objectives.reliability) << ","
           << m.objectives.pas << "," << format_double(m.objectives.distance) << "," << csv_quote(m.key) << "\n";
    }
}

struct FrontCsvRow {
    std::string run_id;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::size_t solution_id = 0;
    moea::Objectives objectives;
    RefactoringSequence sequence;
};

inline std::vector<FrontCsvRow> read_front_csv(const std::string& text) {
    std::vector<FrontCsvRow> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kFrontCsvHeader) throw Error("front.csv: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = csv_split(line);
        if (f.size() != 9) throw Error("front.csv: expected 9 fields in '" + line + "'");
        FrontCsvRow r;
        r.run_id = f[0];
        r.algorithm = f[1];
        r.seed = std::stoull(f[2]);
        r.solution_id = std::stoull(f[3]);
        r.objectives = {std::stod(f[4]), std::stod(f[5]), static_cast<std::size_t>(std::stoull(f[6])), std::stod(f[7])};
        r.sequence = sequence_from_text(f[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline json to_json(const moea::Budget& b) {
    json j = json::object();
    j["max_evaluations"] = b.max_evaluations ? json(*b.max_evaluations) : json(nullptr);
    j["seconds"] = b.seconds ? json(*b.seconds) : json(nullptr);
    return j;
}

inline json to_json(const moea::Objectives& o) {
    return {{"perfQ", o.perfq}, {"reliability", o.reliability}, {"pas", o.pas}, {"distance", o.distance}};
}

inline json to_json(const moea::ParetoFront& front) {
    const auto& m = front.meta;
    json j;
    j["metadata"] = {{"run_id", run_id(m)},
                     {"algorithm", m.algorithm},
                     {"seed", m.seed},
                     {"budget", to_json(m.budget)},
                     {"evaluations", m.evaluations},
                     {"solver_runs", m.solver_runs},
                     {"invalid", m.invalid},
                     {"generations", m.generations},
                     {"wall_seconds", m.wall_seconds},
                     {"budget_truncated", m.budget_truncated}};
    j["solutions"] = json::array();
    for (std::size_t i = 0; i < front.members.size(); ++i) {
        const auto& ind = front.members[i];
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(ind.digest));
        j["solutions"].push_back({{"solution_id", i},
                                  {"objectives", to_json(ind.objectives)},
                                  {"phenotype_digest", hex},
                                  {"actions", to_json(ind.genotype)}});
    }
    return j;
}

/// Whitespace-separated columns for external plotting.
inline void write_front_gnuplot(std::ostream& os, const moea::ParetoFront& front) {
    os << "# perfQ reliability pas distance\n";
    for (const auto& m : front.members)
        os << format_double(m.objectives.perfq) << " " << format_double(m.objectives.reliability) << " "
           << m.objectives.pas << " " << format_double(m.objectives.distance) << "\n";
}

inline json to_json(const PerformanceResult& r) {
    json j;
    j["scenarios"] = json::array();
    for (std::size_t i = 0; i < r.scenarios.size(); ++i)
        j["scenarios"].push_back({{"id", r.scenarios[i]},
                                  {"throughput", r.throughput[i]},
                                  {"response_time", r.response_time[i]},
                                  {"delay_only", static_cast<bool>(r.delay_only[i])}});
    j["nodes"] = json::array();
    for (std::size_t k = 0; k < r.nodes.size(); ++k)
        j["nodes"].push_back({{"id", r.nodes[k]}, {"utilization", r.utilization[k]}});
    j["iterations"] = r.iterations;
    return j;
}

inline json to_json(const Detection& d) {
    return {{"kind", std::string(antipattern_name(d.kind))}, {"elements", d.elements}, {"metrics", d.metrics}};
}

}  // namespace archopt
