#ifndef WELLSCAN_LATTICE_PATH_HPP
#define WELLSCAN_LATTICE_PATH_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wellscan/point_sample.hpp"
#include "wellscan/sampling.hpp"

namespace wellscan::path {

enum class PathMode { Gaussian, Walk };

inline constexpr std::string_view to_string(PathMode m) noexcept {
  return m == PathMode::Gaussian ? "gaussian" : "walk";
}

/// Discretized two-sided environment.  values[origin_index] == 0; grid index
/// i sits at environment coordinate (i - origin_index) * step.
struct LatticePath {
  double step = 1.0;
  std::int64_t origin_index = 0;
  std::vector<double> values;
  PathMode mode = PathMode::Gaussian;
  SeedInfo seed_info;

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(values.size()); }
  /// Value at signed offset k from the origin.
  double at(std::int64_t k) const { return values.at(static_cast<std::size_t>(origin_index + k)); }
};

inline constexpr std::uint64_t kMaxPathPoints = std::uint64_t{1} << 31;

/// Wraps explicit values (hand-built environments, test fixtures).
inline LatticePath make_path(std::vector<double> values, std::int64_t origin_index, double step = 1.0) {
  if (origin_index < 0 || origin_index >= static_cast<std::int64_t>(values.size()))
    throw std::invalid_argument("make_path: origin_index out of range");
  if (values[static_cast<std::size_t>(origin_index)] != 0.0)
    throw std::invalid_argument("make_path: value at the origin must be 0");
  if (!(step > 0.0)) throw std::invalid_argument("make_path: step must be positive");
  LatticePath p;
  p.step = step;
  p.origin_index = origin_index;
  p.values = std::move(values);
  return p;
}

/// Two-sided path on offsets [-half_length, half_length].  Right-side
/// increments are drawn first (outward), then left-side increments (outward).
/// Gaussian mode: N(0, step) increments.  Walk mode: +-sqrt(step), stored as
/// k*sqrt(step) for the integer height k so equal heights compare equal.
template <UniformSource U>
LatticePath generate_path(U& stream, std::int64_t half_length, double step, PathMode mode) {
  if (half_length < 1) throw std::invalid_argument("generate_path: half_length must be at least 1");
  if (!(step > 0.0)) throw std::invalid_argument("generate_path: step must be positive");
  const std::uint64_t n = 2 * static_cast<std::uint64_t>(half_length) + 1;
  if (n > kMaxPathPoints) throw std::length_error("generate_path: path exceeds 2^31 points");
  LatticePath p;
  p.step = step;
  p.origin_index = half_length;
  p.mode = mode;
  const auto [seed, id] = stream_identity(stream);
  p.seed_info = {seed, id};
  p.values.assign(n, 0.0);
  const double sd = std::sqrt(step);
  const auto o = static_cast<std::size_t>(half_length);
  auto fill_side = [&](int dir) {
    double b = 0.0;
    std::int64_t k = 0;
    for (std::int64_t j = 1; j <= half_length; ++j) {
      double v;
      if (mode == PathMode::Gaussian) {
        b += sd * sample_normal(stream);
        v = b;
      } else {
        k += stream.next_uniform() < 0.5 ? -1 : 1;
        v = static_cast<double>(k) * sd;
      }
      p.values[dir > 0 ? o + static_cast<std::size_t>(j) : o - static_cast<std::size_t>(j)] = v;
    }
  };
  fill_side(+1);
  fill_side(-1);
  return p;
}

// Binary dump: "WSPATH1\0", f64 step, i64 origin_index, u64 length, then
// length f64 values; everything little-endian.
namespace detail {

inline constexpr char kPathMagic[8] = {'W', 'S', 'P', 'A', 'T', 'H', '1', '\0'};

template <class T>
void put_le(std::ostream& os, T value) {
  auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  os.write(reinterpret_cast<const char*>(bits.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> bits{};
  if (!is.read(reinterpret_cast<char*>(bits.data()), sizeof(T))) throw std::runtime_error("read_path: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  return std::bit_cast<T>(bits);
}

}  // namespace detail

inline void write_path(const LatticePath& p, const std::filesystem::path& file) {
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("write_path: cannot open " + tmp.string());
    os.write(detail::kPathMagic, sizeof detail::kPathMagic);
    detail::put_le(os, p.step);
    detail::put_le(os, p.origin_index);
    detail::put_le(os, static_cast<std::uint64_t>(p.values.size()));
    for (double v : p.values) detail::put_le(os, v);
    if (!os) throw std::runtime_error("write_path: write failed");
  }
  std::filesystem::rename(tmp, file);
}

inline LatticePath read_path(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw std::runtime_error("read_path: cannot open " + file.string());
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, detail::kPathMagic, 8) != 0)
    throw std::runtime_error("read_path: bad magic");
  LatticePath p;
  p.step = detail::get_le<double>(is);
  p.origin_index = detail::get_le<std::int64_t>(is);
  const auto n = detail::get_le<std::uint64_t>(is);
  if (n > kMaxPathPoints) throw std::runtime_error("read_path: length exceeds 2^31");
  p.values.resize(static_cast<std::size_t>(n));
  for (auto& v : p.values) v = detail::get_le<double>(is);
  if (p.origin_index < 0 || p.origin_index >= static_cast<std::int64_t>(n))
    throw std::runtime_error("read_path: origin_index out of range");
  return p;
}

}  // namespace wellscan::path

#endif  // WELLSCAN_LATTICE_PATH_HPP
