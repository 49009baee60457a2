#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgtk/lambda_quad.hpp"
#include "qgtk/params.hpp"

namespace qgtk {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    PhysicalParams params{1.0, 2.0, 0.5};
    int n = 64;
    double L = 0.0;  // 0: each check uses its own box for the given n
    std::vector<std::string> suite = {"all"};
    std::string sweep_axis;  // F | nu_ratio | j | V
    std::vector<double> sweep_values;
    std::string sweep_check;
    std::string output_dir = "qgtk_out";
    std::uint64_t seed = 1;
    QuadSettings quad;
    // overrides used by sweeps (negative: unset)
    int j = -100;
    double v_amp = -1.0;
    // solver runs
    double t_final = 1.0;
    double dt = 0.05;
    int save_every = 1;
};

// "key = value" lines; '#' starts a comment
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_setting(RunConfig& c, const std::string& key, const std::string& value);
void apply_settings(RunConfig& c, const std::map<std::string, std::string>& kv);
// QGTK_OUTPUT_DIR replaces output_dir when set
void apply_environment(RunConfig& c);
std::vector<double> parse_list(const std::string& s);
std::vector<std::string> split_names(const std::string& s);
std::string to_text(const RunConfig& c);

}  // namespace qgtk
