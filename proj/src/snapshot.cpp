#include "qgtk/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qgtk {
namespace {

template <class T>
void put_le(std::ostream& os, T value) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    unsigned char b[sizeof(T)];
    is.read(reinterpret_cast<char*>(b), sizeof(T));
    if (!is) throw std::runtime_error("snapshot truncated");
    if constexpr (std::endian::native == std::endian::big)
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const ScalarField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.write("QG3F", 4);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.n));
    put_le<double>(os, f.grid.L);
    for (double x : f.v) put_le<double>(os, x);
}

ScalarField read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "QG3F", 4) != 0) throw std::runtime_error("bad snapshot magic");
    const auto n = get_le<std::uint32_t>(is);
    const double L = get_le<double>(is);
    ScalarField f(Grid3(static_cast<int>(n), L));
    for (auto& x : f.v) x = get_le<double>(is);
    return f;
}

}  // namespace qgtk
