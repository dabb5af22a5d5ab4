#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "chsim/evolution.hpp"
#include "chsim/state.hpp"

namespace chsim {

/// Self-describing snapshot: {grid_n, fields: {name: [...]}, atoms: [[x, m]],
/// meta: {time, h}}.
nlohmann::json snapshot_json(const LagrangianState& X, double time);
nlohmann::json snapshot_json(const EulerianState& s, double time);
LagrangianState lagrangian_from_json(const nlohmann::json& j);
EulerianState eulerian_from_json(const nlohmann::json& j);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

/// CSV export of a per-node field, header "xi,value" or "x,value".
void write_field_csv(const std::string& path, const std::string& coord,
                     const PeriodicGrid& grid, const std::vector<double>& values);

/// SimReport CSV: t,h,energy_u2,energy_ux2,energy_rho2,min_yxi,compat_residual.
void write_report_csv(const std::string& path, const SimReport& report);

nlohmann::json events_json(const std::vector<BreakingEvent>& events);

/// Flat key = value configuration file; '#' starts a comment. Unknown keys
/// are reported as errors with their line number.
class Config {
  public:
    Config() = default;
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get(const std::string& key, double fallback) const;
    std::size_t get(const std::string& key, std::size_t fallback) const;
    bool get(const std::string& key, bool fallback) const;
    const std::map<std::string, std::string>& items() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace chsim
