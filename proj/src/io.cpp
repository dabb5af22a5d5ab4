#include "chsim/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace chsim {

using nlohmann::json;

namespace {

json atoms_json(const PeriodicMeasure& mu) {
    json a = json::array();
    for (const auto& at : mu.atoms) a.push_back({at.x, at.mass});
    return a;
}

}  // namespace

json snapshot_json(const LagrangianState& X, double time) {
    json j;
    j["grid_n"] = X.grid.n;
    j["fields"] = {{"zeta", X.zeta}, {"U", X.U},   {"yxi", X.yxi},
                   {"Uxi", X.Uxi},   {"nu", X.nu}, {"r", X.r}};
    j["atoms"] = json::array();
    j["meta"] = {{"time", time}, {"h", quadrature(X.grid, X.nu)}};
    return j;
}

json snapshot_json(const EulerianState& s, double time) {
    json j;
    j["grid_n"] = s.grid.n;
    j["fields"] = {{"u", s.u}, {"ux", s.ux}, {"rho", s.rho}, {"mu_density", s.mu.density}};
    j["atoms"] = atoms_json(s.mu);
    j["meta"] = {{"time", time}, {"h", s.mu.total_mass()}};
    return j;
}

LagrangianState lagrangianFromFields(const json& j) {
    LagrangianState X;
    X.grid = PeriodicGrid(j.at("grid_n").get<std::size_t>());
    const auto& f = j.at("fields");
    X.zeta = f.at("zeta").get<std::vector<double>>();
    X.U = f.at("U").get<std::vector<double>>();
    X.yxi = f.at("yxi").get<std::vector<double>>();
    X.Uxi = f.at("Uxi").get<std::vector<double>>();
    X.nu = f.at("nu").get<std::vector<double>>();
    X.r = f.at("r").get<std::vector<double>>();
    return X;
}

LagrangianState lagrangian_from_json(const json& j) { return lagrangianFromFields(j); }

EulerianState eulerian_from_json(const json& j) {
    EulerianState s;
    s.grid = PeriodicGrid(j.at("grid_n").get<std::size_t>());
    const auto& f = j.at("fields");
    s.u = f.at("u").get<std::vector<double>>();
    s.ux = f.at("ux").get<std::vector<double>>();
    s.rho = f.at("rho").get<std::vector<double>>();
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    s.mu = PeriodicMeasure(s.grid, f.at("mu_density").get<std::vector<double>>(), std::move(atoms));
    return s;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_json: cannot open " + path);
    out << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_json: cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_field_csv(const std::string& path, const std::string& coord,
                     const PeriodicGrid& grid, const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field_csv: cannot open " + path);
    out << coord << ",value\n";
    out << std::setprecision(17);
    for (std::size_t j = 0; j < grid.n; ++j) out << grid.node(j) << "," << values[j] << "\n";
}

void write_report_csv(const std::string& path, const SimReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report_csv: cannot open " + path);
    out << "t,h,energy_u2,energy_ux2,energy_rho2,min_yxi,compat_residual\n";
    out << std::setprecision(17);
    for (const auto& r : report.rows) {
        out << r.t << "," << r.h << "," << r.energy_u2 << "," << r.energy_ux2 << ","
            << r.energy_rho2 << "," << r.min_yxi << "," << r.compat_residual << "\n";
    }
}

json events_json(const std::vector<BreakingEvent>& events) {
    json arr = json::array();
    for (const auto& e : events)
        arr.push_back({{"t", e.time}, {"x", e.x_location}, {"mass", e.concentrated_mass}});
    return arr;
}

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        c.kv_[key] = val;
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not a number: " + it->second);
    }
}

std::size_t Config::get(const std::string& key, std::size_t fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return static_cast<std::size_t>(std::stoull(it->second));
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "' is not an integer: " + it->second);
    }
}

bool Config::get(const std::string& key, bool fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::runtime_error("config: key '" + key + "' is not a boolean: " + v);
}

}  // namespace chsim
