#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace chaylab {

namespace {

// Field names double as config keys and CLI flag names.
template <typename Fn>
void for_each_param(chay::ChayParams& p, Fn fn) {
    fn("c-m", p.C_m);
    fn("e-k", p.E_K);
    fn("e-i", p.E_I);
    fn("e-l", p.E_L);
    fn("e-ca", p.E_Ca);
    fn("g-i", p.g_I);
    fn("g-kv", p.g_KV);
    fn("g-l", p.g_L);
    fn("gkca", p.g_KCa);
    fn("k-ca", p.k_Ca);
    fn("rho", p.rho);
    fn("lambda-n", p.lambda_n);
    fn("i-ext", p.I_ext);
}

} // namespace

json params_to_json(const chay::ChayParams& p) {
    json j = json::object();
    chay::ChayParams copy = p;
    for_each_param(copy, [&](const char* name, double& v) { j[name] = v; });
    return j;
}

chay::ChayParams params_from_json(const json& j, chay::ChayParams base) {
    for_each_param(base, [&](const char* name, double& v) {
        if (j.contains(name)) v = j.at(name).get<double>();
    });
    return base;
}

json make_header(const std::string& command, const json& options, const chay::ChayParams& p) {
    json h = json::object();
    h["artifact"] = kArtifact;
    h["version"] = kVersion;
    h[command] = options;
    h["params"] = params_to_json(p);
    return h;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Output::Output(const std::string& path) : os_(&std::cout) {
    if (path == "-") return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
    os_ = &file_;
}

CsvWriter::CsvWriter(const std::string& path, const json& header, const std::vector<std::string>& columns)
    : out_(path), width_(columns.size()) {
    auto& os = out_.stream();
    os << "# " << header.dump() << '\n';
    for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << columns[k];
    os << '\n';
}

void CsvWriter::row(std::initializer_list<Cell> cells) { row(std::vector<Cell>(cells)); }

void CsvWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != width_) throw std::logic_error("CSV row width does not match the header");
    auto& os = out_.stream();
    for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k].text;
    os << '\n';
}

void write_json(const std::string& path, const json& j) {
    if (path == "stderr") {
        std::cerr << j.dump(2) << '\n';
        return;
    }
    Output out(path);
    out.stream() << j.dump(2) << '\n';
}

std::string sidecar_path(const std::string& out, const std::string& explicit_path) {
    if (!explicit_path.empty()) return explicit_path;
    return out == "-" ? "stderr" : out + ".json";
}

chay::Trajectory read_trajectory(const std::string& path, json* header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    chay::Trajectory tr;
    std::string line;
    bool have_columns = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const json h = json::parse(line.substr(1));
            if (h.contains("params")) tr.params = params_from_json(h["params"]);
            if (header) *header = h;
            continue;
        }
        if (!have_columns) {
            if (line.rfind("t,V,n,Ca", 0) != 0) throw std::runtime_error(path + ": expected columns t,V,n,Ca");
            have_columns = true;
            continue;
        }
        double v[4];
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4)
            throw std::runtime_error(path + ": malformed row: " + line);
        tr.t.push_back(v[0]);
        tr.V.push_back(v[1]);
        tr.n.push_back(v[2]);
        tr.Ca.push_back(v[3]);
    }
    if (tr.size() < 2) throw std::runtime_error(path + ": fewer than two samples");
    tr.dt = tr.t[1] - tr.t[0];
    tr.record_stride = 1;
    return tr;
}

} // namespace chaylab
