#include "qgtk/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qgtk/report.hpp"

namespace qgtk {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + key + ": '" + v + "'");
    }
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": '" + v + "'");
    }
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_key_values(ss.str());
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_names(s)) out.push_back(to_double("list", item));
    return out;
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& v) {
    if (key == "nu") c.params.nu = to_double(key, v);
    else if (key == "nu_prime" || key == "nu-prime") c.params.nu_prime = to_double(key, v);
    else if (key == "F") c.params.F = to_double(key, v);
    else if (key == "n") c.n = static_cast<int>(to_int(key, v));
    else if (key == "L") c.L = to_double(key, v);
    else if (key == "suite") c.suite = split_names(v);
    else if (key == "axis") c.sweep_axis = v;
    else if (key == "values") c.sweep_values = parse_list(v);
    else if (key == "check") c.sweep_check = v;
    else if (key == "output_dir" || key == "output-dir") c.output_dir = v;
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(key, v));
    else if (key == "r_min") c.quad.r_min = to_double(key, v);
    else if (key == "r_max") c.quad.r_max = to_double(key, v);
    else if (key == "n_radii") c.quad.n_radii = static_cast<int>(to_int(key, v));
    else if (key == "n_dirs") c.quad.n_dirs = static_cast<int>(to_int(key, v));
    else if (key == "t_final") c.t_final = to_double(key, v);
    else if (key == "dt") c.dt = to_double(key, v);
    else if (key == "save_every") c.save_every = static_cast<int>(to_int(key, v));
    else if (key == "v_amp") c.v_amp = to_double(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
}

void apply_settings(RunConfig& c, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) apply_setting(c, k, v);
}

void apply_environment(RunConfig& c) {
    if (const char* d = std::getenv("QGTK_OUTPUT_DIR"); d && *d) c.output_dir = d;
}

std::string to_text(const RunConfig& c) {
    std::ostringstream os;
    os << "nu = " << fmt_num(c.params.nu) << "\n"
       << "nu_prime = " << fmt_num(c.params.nu_prime) << "\n"
       << "F = " << fmt_num(c.params.F) << "\n"
       << "n = " << c.n << "\n"
       << "L = " << fmt_num(c.L) << "\n"
       << "seed = " << c.seed << "\n";
    os << "suite = ";
    for (std::size_t i = 0; i < c.suite.size(); ++i) os << (i ? "," : "") << c.suite[i];
    os << "\n";
    if (!c.sweep_axis.empty()) {
        os << "axis = " << c.sweep_axis << "\ncheck = " << c.sweep_check << "\nvalues = ";
        for (std::size_t i = 0; i < c.sweep_values.size(); ++i) os << (i ? "," : "") << fmt_num(c.sweep_values[i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace qgtk
