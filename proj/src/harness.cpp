#include "affine/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "affine/fft.hpp"
#include "affine/gridfield.hpp"
#include "affine/synthesizers.hpp"
#include "experiments.hpp"

namespace affine {

ConfigError::ConfigError(const std::string& f, const std::string& what)
    : Error("config field '" + f + "': " + what), field(f)
{
}

double ExperimentConfig::tol(const std::string& key, double fallback) const
{
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

namespace {

const std::vector<std::string> kCommands{"kernel", "synth", "analyze", "converge", "check"};
const std::vector<std::string> kSpaces{"lebesgue", "hardy", "sobolev", "frame", "kernel", "suite"};

template <class T>
T field(const Json& j, const char* key, T fallback)
{
    if (!j.contains(key))
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception& e) {
        throw ConfigError(key, e.what());
    }
}

std::vector<double> numberList(const Json& j, const std::string& key)
{
    if (j.is_number())
        return {j.get<double>()};
    if (!j.is_array())
        throw ConfigError(key, "expected a number or an array of numbers");
    std::vector<double> v;
    for (auto& x : j) {
        if (!x.is_number())
            throw ConfigError(key, "expected numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

bool isPow2(std::int64_t n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

std::string number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json jsonNumber(double v)
{
    if (std::isfinite(v))
        return v;
    return number(v);
}

double fromJsonNumber(const Json& j)
{
    if (j.is_number())
        return j.get<double>();
    auto s = j.get<std::string>();
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    return s[0] == '-' ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
}

}  // namespace

ExperimentConfig parseConfig(const Json& j)
{
    if (!j.is_object())
        throw ConfigError("<root>", "config must be a JSON object");
    ExperimentConfig c;
    c.raw = j;
    c.name = field<std::string>(j, "name", "");
    if (c.name.empty())
        throw ConfigError("name", "missing");
    c.command = field<std::string>(j, "command", "check");
    if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
        throw ConfigError("command", "unknown command '" + c.command + "'");
    c.experiment = field<std::string>(j, "experiment", "");
    auto names = experimentNames();
    if (std::find(names.begin(), names.end(), c.experiment) == names.end())
        throw ConfigError("experiment", "unknown experiment '" + c.experiment + "'");
    c.space = field<std::string>(j, "space", "lebesgue");
    if (std::find(kSpaces.begin(), kSpaces.end(), c.space) == kSpaces.end())
        throw ConfigError("space", "unknown space '" + c.space + "'");
    c.d = field<int>(j, "d", 1);
    try {
        checkDim(c.d);
    } catch (const Error& e) {
        throw ConfigError("d", e.what());
    }
    if (j.contains("p") && j["p"].is_string() && j["p"] == "inf")
        c.p = std::numeric_limits<double>::infinity();
    else
        c.p = field<double>(j, "p", 2.0);
    try {
        NormParams np(c.p);
    } catch (const Error& e) {
        throw ConfigError("p", e.what());
    }
    c.m = field<int>(j, "m", 0);
    if (c.m < 0)
        throw ConfigError("m", "must be nonnegative");

    if (j.contains("lattice")) {
        c.lattice = numberList(j["lattice"], "lattice");
        if (static_cast<int>(c.lattice.size()) != c.d)
            throw ConfigError("lattice", "needs d entries");
    }
    Lattice lat(c.lattice.empty() ? std::vector<double>(c.d, 1.0) : c.lattice);
    c.synthesizer = field<std::string>(j, "synthesizer", "indicator");
    c.analyzer = field<std::string>(j, "analyzer", "indicator:normalized");
    for (auto [key, spec] : {std::pair{"synthesizer", &c.synthesizer}, std::pair{"analyzer", &c.analyzer}}) {
        try {
            parseSynthesizer(*spec, lat);
        } catch (const Error& e) {
            throw ConfigError(key, e.what());
        }
    }

    if (j.contains("schedule")) {
        auto& s = j["schedule"];
        c.base = field<double>(s, "base", 2.0);
        c.J = field<int>(s, "J", 8);
        if (!(c.base > 1.0))
            throw ConfigError("schedule.base", "must exceed 1");
        if (c.J < 1 || c.J > 16)
            throw ConfigError("schedule.J", "must lie in 1..16");
    }

    std::vector<double> lo(c.d, 0.0), hi(c.d, 1.0);
    std::vector<double> nn(c.d, 1024.0);
    if (j.contains("grid")) {
        auto& g = j["grid"];
        if (g.contains("lo"))
            lo = numberList(g["lo"], "grid.lo");
        if (g.contains("hi"))
            hi = numberList(g["hi"], "grid.hi");
        if (g.contains("n"))
            nn = numberList(g["n"], "grid.n");
        if (lo.size() == 1 && c.d == 2)
            lo.push_back(lo[0]);
        if (hi.size() == 1 && c.d == 2)
            hi.push_back(hi[0]);
        if (nn.size() == 1 && c.d == 2)
            nn.push_back(nn[0]);
        if (static_cast<int>(lo.size()) != c.d || static_cast<int>(hi.size()) != c.d ||
            static_cast<int>(nn.size()) != c.d)
            throw ConfigError("grid", "lo, hi, n need d entries");
    }
    for (int t = 0; t < c.d; ++t) {
        auto n = static_cast<std::int64_t>(nn[t]);
        if (static_cast<double>(n) != nn[t] || !isPow2(n))
            throw ConfigError("grid.n", "must be a power of two");
        if (t > 0 && n != static_cast<std::int64_t>(nn[0]))
            throw ConfigError("grid.n", "must agree across axes");
        if (!(hi[t] > lo[t]))
            throw ConfigError("grid", "empty box");
        c.n = n;
    }
    try {
        c.box = Box(c.d, {lo[0], c.d > 1 ? lo[1] : 0.0}, {hi[0], c.d > 1 ? hi[1] : 1.0});
    } catch (const Error& e) {
        throw ConfigError("grid", e.what());
    }
    for (int t = 0; t < c.d; ++t) {
        double h = c.box.side(t) / static_cast<double>(c.n);
        double r = lat.b(t) / h;
        if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, std::abs(r)))
            throw ConfigError("grid", "grid spacing incommensurate with the lattice");
    }
    c.seed = field<std::uint64_t>(j, "seed", 1);
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object())
            throw ConfigError("tolerances", "must be an object");
        for (auto& [k, v] : j["tolerances"].items()) {
            if (!v.is_number())
                throw ConfigError("tolerances." + k, "must be a number");
            c.tolerances[k] = v.get<double>();
        }
    }
    return c;
}

ExperimentConfig loadConfig(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("<file>", "cannot open " + path);
    Json j;
    try {
        j = Json::parse(is);
    } catch (const std::exception& e) {
        throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
    }
    auto c = parseConfig(j);
    c.source = path;
    return c;
}

bool relationHolds(double value, double bound, const std::string& relation)
{
    if (relation == "info")
        return true;
    if (std::isnan(value))
        return false;
    if (relation == "<=")
        return value <= bound;
    if (relation == "<")
        return value < bound;
    if (relation == ">=")
        return value >= bound;
    if (relation == ">")
        return value > bound;
    if (relation == "==")
        return value == bound;
    throw Error("unknown relation '" + relation + "'");
}

Row makeRow(std::string quantity, double value, std::string relation, double bound)
{
    Row r{std::move(quantity), value, bound, std::move(relation), true};
    r.pass = relationHolds(r.value, r.bound, r.relation);
    return r;
}

Row infoRow(std::string quantity, double value)
{
    return {std::move(quantity), value, 0.0, "info", true};
}

bool Report::allPass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

Json environmentStamp()
{
    Json e = Json::object();
#if defined(__clang__)
    e["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    e["compiler"] = std::string("gcc ") + __VERSION__;
#else
    e["compiler"] = "unknown";
#endif
    e["cxx_standard"] = static_cast<long>(__cplusplus);
    e["fft"] = fftVersion();
    e["rng"] = "mt19937_64, double = (x >> 11) * 2^-53";
    return e;
}

Report runExperiment(const ExperimentConfig& cfg)
{
    auto fn = experimentFunction(cfg.experiment);
    Report r = fn(cfg);
    r.config = cfg.raw;
    r.environment = environmentStamp();
    return r;
}

Report runCommand(const std::string& command, const ExperimentConfig& cfg)
{
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        throw Error("unknown command '" + command + "'");
    if (command == "synth" || command == "analyze") {
        Report r = (command == "synth" ? synthExperiment : analyzeExperiment)(cfg);
        r.config = cfg.raw;
        r.environment = environmentStamp();
        return r;
    }
    if (command != "check" && command != cfg.command)
        throw Error("config '" + cfg.name + "' belongs to command '" + cfg.command + "'");
    return runExperiment(cfg);
}

Format parseFormat(const std::string& s)
{
    if (s == "csv")
        return Format::csv;
    if (s == "json")
        return Format::json;
    throw Error("unknown format '" + s + "'");
}

Json reportJson(const Report& r)
{
    Json j = Json::object();
    j["config"] = r.config;
    j["environment"] = r.environment;
    Json rows = Json::array();
    for (auto& row : r.rows) {
        Json o = Json::object();
        o["quantity"] = row.quantity;
        o["value"] = jsonNumber(row.value);
        o["bound"] = jsonNumber(row.bound);
        o["relation"] = row.relation;
        o["pass"] = row.pass;
        rows.push_back(o);
    }
    j["rows"] = rows;
    Json tr = Json::array();
    for (auto& t : r.traces) {
        Json v = Json::array();
        for (double x : t.values)
            v.push_back(jsonNumber(x));
        tr.push_back(Json{{"name", t.name}, {"values", v}});
    }
    j["traces"] = tr;
    j["warnings"] = r.warnings;
    j["pass"] = r.allPass();
    return j;
}

Report reportFromJson(const Json& j)
{
    Report r;
    r.config = j.value("config", Json::object());
    r.environment = j.value("environment", Json::object());
    for (auto& o : j.at("rows")) {
        Row row{o.at("quantity").get<std::string>(), fromJsonNumber(o.at("value")), fromJsonNumber(o.at("bound")),
                o.at("relation").get<std::string>(), o.at("pass").get<bool>()};
        r.rows.push_back(row);
    }
    for (auto& t : j.at("traces")) {
        Trace tr{t.at("name").get<std::string>(), {}};
        for (auto& x : t.at("values"))
            tr.values.push_back(fromJsonNumber(x));
        r.traces.push_back(tr);
    }
    for (auto& w : j.at("warnings"))
        r.warnings.push_back(w.get<std::string>());
    return r;
}

void emitReport(const Report& r, Format f, std::ostream& os)
{
    if (f == Format::json) {
        os << reportJson(r).dump(2) << '\n';
        return;
    }
    if (!r.config.empty())
        os << "# config " << r.config.dump() << '\n';
    if (!r.environment.empty())
        os << "# environment " << r.environment.dump() << '\n';
    for (auto& w : r.warnings)
        os << "# warning " << w << '\n';
    os << "quantity,value,bound,relation,pass\n";
    for (auto& row : r.rows)
        os << row.quantity << ',' << number(row.value) << ',' << number(row.bound) << ',' << row.relation << ','
           << (row.pass ? "true" : "false") << '\n';
    if (!r.traces.empty()) {
        os << "\ntrace,index,value\n";
        for (auto& t : r.traces)
            for (size_t i = 0; i < t.values.size(); ++i)
                os << t.name << ',' << i << ',' << number(t.values[i]) << '\n';
    }
}

void emitReport(const Report& r, Format f, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("cannot write report to " + path);
    emitReport(r, f, os);
    if (!os)
        throw Error("cannot write report to " + path);
}

std::string reportString(const Report& r, Format f)
{
    std::ostringstream os;
    emitReport(r, f, os);
    return os.str();
}

std::vector<std::string> shippedConfigs(const std::string& dir)
{
    std::vector<std::string> out;
    for (auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace affine
