#pragma once

#include <map>
#include <string>
#include <vector>

namespace qgtk {

// A named check: tabular records plus an overall verdict.
struct VerificationReport {
    std::string check;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::map<std::string, double> summary;  // headline numbers, sorted for stable output
    std::vector<std::string> notes;
    bool pass = true;

    VerificationReport() = default;
    VerificationReport(std::string name, std::vector<std::string> cols)
        : check(std::move(name)), columns(std::move(cols)) {}

    void add_row(std::vector<std::string> row);
    void set(const std::string& key, double value) { summary[key] = value; }
    double get(const std::string& key) const;
    void fail(const std::string& why);
    void require(bool ok, const std::string& why) { if (!ok) fail(why); }
    void merge(const VerificationReport& other);  // notes and verdict only

    std::string csv() const;
};

std::string fmt_num(double x);
std::string fmt_int(long long x);
std::string fmt_bool(bool b);

}  // namespace qgtk
