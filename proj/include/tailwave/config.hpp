// Run configuration: "[section]" headers, "key = value" lines, "#" comments.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tailwave/evolve_null.hpp"
#include "tailwave/initdata.hpp"
#include "tailwave/model.hpp"

namespace tailwave {

struct GridSettings {
  int n_r = 1024;
  double r_max = 2.5;
  double cfl = 0.4;
};

struct RunSettings {
  double t_end = 0.0;
  int snapshot_stride = 0;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
};

struct NullSettings {
  NullDomain domain;
  double r0 = 1.0;
};

struct RunConfig {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::string source;  // file path or "<text>"

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key, const std::string& def) const;
  double get_double(const std::string& section, const std::string& key, double def) const;
  int get_int(const std::string& section, const std::string& key, int def) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  ModelParams model() const;
  GridSettings grid() const;
  DataFamily data() const;
  NullSettings null_settings() const;
  RunSettings run() const;  // TAILWAVE_OUTPUT overrides output_dir
  std::string echo() const;
};

RunConfig parse_config_text(const std::string& text, const std::string& source = "<text>");
RunConfig load_config(const std::string& path);

}  // namespace tailwave
