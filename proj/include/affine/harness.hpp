#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "affine/geometry.hpp"

namespace affine {

using Json = nlohmann::ordered_json;

// failure tied to a config field
struct ConfigError : Error {
    ConfigError(const std::string& field, const std::string& what);
    std::string field;
};

struct ExperimentConfig {
    std::string name;
    std::string command = "check";  // kernel | synth | analyze | converge | check
    std::string experiment;
    std::string space = "lebesgue";  // lebesgue | hardy | sobolev | frame | kernel | suite
    int d = 1;
    double p = 2.0;
    int m = 0;
    std::string synthesizer = "indicator";
    std::string analyzer = "indicator:normalized";
    std::vector<double> lattice;  // diagonal of b; empty means identity
    double base = 2.0;
    int J = 8;
    Box box;
    std::int64_t n = 1024;
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerances;
    Json raw;
    std::string source;  // file the config came from, if any

    double tol(const std::string& key, double fallback) const;
};

ExperimentConfig parseConfig(const Json& j);
ExperimentConfig loadConfig(const std::string& path);

struct Row {
    std::string quantity;
    double value = 0.0;
    double bound = 0.0;
    std::string relation = "info";  // <=, <, >=, >, ==, info
    bool pass = true;
};

bool relationHolds(double value, double bound, const std::string& relation);
Row makeRow(std::string quantity, double value, std::string relation, double bound);
Row infoRow(std::string quantity, double value);

struct Trace {
    std::string name;
    std::vector<double> values;
};

struct Report {
    Json config = Json::object();
    std::vector<Row> rows;
    std::vector<Trace> traces;
    std::vector<std::string> warnings;
    Json environment = Json::object();

    bool allPass() const;
    void add(Row r) { rows.push_back(std::move(r)); }
    void trace(std::string name, std::vector<double> v) { traces.push_back({std::move(name), std::move(v)}); }
};

Json environmentStamp();

Report runExperiment(const ExperimentConfig& cfg);
// command-specific entry: synth and analyze run their own generic experiment
Report runCommand(const std::string& command, const ExperimentConfig& cfg);
std::vector<std::string> experimentNames();

enum class Format { csv, json };

Format parseFormat(const std::string& s);
void emitReport(const Report& r, Format f, std::ostream& os);
void emitReport(const Report& r, Format f, const std::string& path);
std::string reportString(const Report& r, Format f);
Json reportJson(const Report& r);
Report reportFromJson(const Json& j);

// *.json in dir, sorted
std::vector<std::string> shippedConfigs(const std::string& dir);

}  // namespace affine
