#include <charconv>
#include <cmath>
#include <sstream>

#include "fockproj/cli.hpp"

namespace fockproj::cli {

namespace {

void sanitize(Json& j, const std::string& path, std::vector<std::string>& warnings) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            j = std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
            warnings.push_back("non-finite value at " + path);
        }
    } else if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) sanitize(it.value(), path + "." + it.key(), warnings);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) sanitize(j[i], path + "[" + std::to_string(i) + "]", warnings);
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool Report::all_passed() const {
    for (const auto& a : assertions)
        if (!a.passed) return false;
    return true;
}

Json Report::to_json() const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["inputs"] = inputs;
    Json out = outputs;
    std::vector<std::string> warn = warnings;
    sanitize(out, "outputs", warn);
    j["outputs"] = out;
    j["provenance"] = provenance;
    j["warnings"] = warn;
    if (!assertions.empty()) {
        Json arr = Json::array();
        for (const auto& a : assertions)
            arr.push_back({{"name", a.name}, {"passed", a.passed}, {"measured", a.measured}, {"expected", a.expected}});
        j["assertions"] = arr;
        j["passed"] = all_passed();
    }
    if (!tables.empty()) {
        Json t = Json::object();
        for (const auto& tab : tables) t[tab.name] = {{"columns", tab.columns}, {"rows", tab.rows}};
        j["tables"] = t;
    }
    return j;
}

Report Report::from_json(const Json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    r.provenance = j.at("provenance").get<std::vector<std::string>>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("assertions")) {
        for (const auto& a : j["assertions"])
            r.assertions.push_back({a.at("name").get<std::string>(), a.at("passed").get<bool>(),
                                    a.at("measured").get<std::string>(), a.at("expected").get<std::string>()});
    }
    if (j.contains("tables")) {
        for (auto it = j["tables"].begin(); it != j["tables"].end(); ++it)
            r.tables.push_back({it.key(), it.value().at("columns").get<std::vector<std::string>>(),
                                it.value().at("rows").get<std::vector<std::vector<std::string>>>()});
    }
    return r;
}

std::string Report::to_csv() const {
    std::ostringstream s;
    bool first = true;
    auto emit = [&](const Table& t) {
        if (!first) s << "\n";
        first = false;
        s << "# " << t.name << "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) s << (i ? "," : "") << csv_field(t.columns[i]);
        s << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_field(row[i]);
            s << "\n";
        }
    };
    for (const auto& t : tables) emit(t);
    if (!assertions.empty()) {
        Table a{"assertions", {"name", "passed", "measured", "expected"}, {}};
        for (const auto& x : assertions) a.rows.push_back({x.name, x.passed ? "true" : "false", x.measured, x.expected});
        emit(a);
    }
    if (first) {
        // Commands without tables: flatten scalar outputs.
        Table o{"outputs", {"key", "value"}, {}};
        for (auto it = outputs.begin(); it != outputs.end(); ++it)
            o.rows.push_back({it.key(), it.value().is_string() ? it.value().get<std::string>() : it.value().dump()});
        emit(o);
    }
    return s.str();
}

}  // namespace fockproj::cli
