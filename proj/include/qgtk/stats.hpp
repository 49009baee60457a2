#pragma once

#include <vector>

namespace qgtk {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);
// slope of log(y) against log(x)
LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);
// slope of log2(y) against x
LinearFit log2_fit(const std::vector<double>& x, const std::vector<double>& y);
double max_over_min(const std::vector<double>& v);
double max_of(const std::vector<double>& v);
double min_of(const std::vector<double>& v);

}  // namespace qgtk
