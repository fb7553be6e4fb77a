#pragma once
// Command-line front end: report model, JSON/CSV rendering and the command dispatcher.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fockproj::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Assertion {
    std::string name;
    bool passed = false;
    std::string measured;
    std::string expected;
};

struct Report {
    std::string command;
    Json inputs = Json::object();   // option values exactly as given
    Json outputs = Json::object();
    std::vector<std::string> provenance;
    std::vector<std::string> warnings;
    std::vector<Assertion> assertions;
    std::vector<Table> tables;

    bool all_passed() const;
    /// Non-finite numbers in outputs are replaced by the strings "inf", "-inf", "nan" and
    /// listed in warnings.
    Json to_json() const;
    static Report from_json(const Json& j);
    /// One CSV block per table, separated by blank lines; each block starts with "# name".
    std::string to_csv() const;
};

/// Shortest round-trip text of a double.
std::string format_double(double v);

/// Runs the command line (args excludes the program name). The report goes to out,
/// diagnostics to err. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Options shared by the verification suites.
struct VerifyOptions {
    int k_max = 500;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// Runs a suite ("lemma8", "lemma15", "eq14", "prop10", "prop12", "eq27", "stirling", "schur",
/// or "all") into the report. Throws InvalidArgument for an unknown suite name.
void run_suite(const std::string& suite, const VerifyOptions& opt, Report& report);

}  // namespace fockproj::cli
