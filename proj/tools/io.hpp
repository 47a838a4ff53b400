#pragma once

#include <fstream>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chay/dynamics.hpp"
#include "chay/params.hpp"

namespace chaylab {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kArtifact = "chaylab";
inline constexpr std::string_view kVersion = CHAYLAB_VERSION;

json params_to_json(const chay::ChayParams& p);
chay::ChayParams params_from_json(const json& j, chay::ChayParams base = {});

// {"artifact", "version", "<command>": options, "params": resolved model}.
// Feeding this object back through --config reproduces the run.
json make_header(const std::string& command, const json& options, const chay::ChayParams& p);

std::string format_number(double x);

// Output stream for a path; "-" is stdout.
class Output {
public:
    explicit Output(const std::string& path);
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

struct Cell {
    std::string text;
    Cell(double x) : text(format_number(x)) {}  // NOLINT
    Cell(int x) : text(std::to_string(x)) {}    // NOLINT
    Cell(bool x) : text(x ? "1" : "0") {}       // NOLINT
    Cell(std::string_view s) : text(s) {}       // NOLINT
    Cell(const char* s) : text(s) {}            // NOLINT
};

// CSV with a single "# {json}" header line followed by the column names.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const json& header, const std::vector<std::string>& columns);
    void row(std::initializer_list<Cell> cells);
    void row(const std::vector<Cell>& cells);

private:
    Output out_;
    std::size_t width_;
};

void write_json(const std::string& path, const json& j);

// Sidecar path for a secondary JSON output: explicit if given, else
// `<out>.json`, else stderr when the main output is stdout.
std::string sidecar_path(const std::string& out, const std::string& explicit_path);

// Reads a t,V,n,Ca CSV written by `simulate`. The model parameters are taken
// from the header when present.
chay::Trajectory read_trajectory(const std::string& path, json* header = nullptr);

} // namespace chaylab
