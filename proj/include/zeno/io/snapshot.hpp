#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "zeno/state.hpp"

namespace zeno::io {

// Layout, little-endian: "ZDIM", u32 version, u32 N, f64 r_min, f64 dr,
// f64 time, f64 absorbed_norm, then blocks 11, 12, 21, 22, each N*N
// row-major complex128 (real, imag).
inline constexpr std::uint32_t snapshot_version = 1;

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_snapshot(const DimerState& state, const std::filesystem::path& path);
DimerState read_snapshot(const std::filesystem::path& path);

}  // namespace zeno::io
