#pragma once

#include <string>

#include "qgtk/grid.hpp"

namespace qgtk {

// Layout: "QG3F", u32 n, f64 L, then n^3 little-endian f64 (x3 fastest).
void write_snapshot(const std::string& path, const ScalarField& f);
ScalarField read_snapshot(const std::string& path);

}  // namespace qgtk
