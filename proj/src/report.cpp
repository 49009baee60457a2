#include "qgtk/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qgtk {

void VerificationReport::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width mismatch in " + check);
    rows.push_back(std::move(row));
}

double VerificationReport::get(const std::string& key) const {
    auto it = summary.find(key);
    if (it == summary.end()) throw std::out_of_range(check + ": no summary entry " + key);
    return it->second;
}

void VerificationReport::fail(const std::string& why) {
    pass = false;
    notes.push_back("FAIL: " + why);
}

void VerificationReport::merge(const VerificationReport& other) {
    for (const auto& n : other.notes) notes.push_back(other.check + ": " + n);
    pass = pass && other.pass;
}

std::string VerificationReport::csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
    return os.str();
}

std::string fmt_num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9e", x);
    return buf;
}

std::string fmt_int(long long x) { return std::to_string(x); }
std::string fmt_bool(bool b) { return b ? "1" : "0"; }

}  // namespace qgtk
