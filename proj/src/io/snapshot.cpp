#include "zeno/io/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "zeno/grid.hpp"

namespace zeno::io {
namespace {

template <class T>
void put(std::vector<char>& buf, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  buf.insert(buf.end(), bytes.begin(), bytes.end());
}

class Cursor {
 public:
  Cursor(const std::vector<char>& data, std::string path) : data_(data), path_(std::move(path)) {}

  template <class T>
  T take(const char* section) {
    if (data_.size() - pos_ < sizeof(T))
      throw SnapshotError(path_ + ": truncated snapshot, missing " + section + " at byte " + std::to_string(pos_));
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }

 private:
  const std::vector<char>& data_;
  std::string path_;
  std::size_t pos_ = 0;
};

constexpr std::array<const char*, 4> block_names{"block rho_11", "block rho_12", "block rho_21", "block rho_22"};

}  // namespace

void write_snapshot(const DimerState& state, const std::filesystem::path& path) {
  const std::size_t n = state.n();
  std::vector<char> buf;
  buf.reserve(48 + 4 * n * n * 16);
  buf.insert(buf.end(), {'Z', 'D', 'I', 'M'});
  put<std::uint32_t>(buf, snapshot_version);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(n));
  put<double>(buf, state.grid().r_min());
  put<double>(buf, state.grid().dr());
  put<double>(buf, state.time());
  put<double>(buf, state.absorbed_norm());
  for (int b = 0; b < 4; ++b)
    for (const Complex& v : state.block(b)) {
      put<double>(buf, v.real());
      put<double>(buf, v.imag());
    }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SnapshotError("cannot open " + path.string() + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out.close();
  if (out.fail()) throw SnapshotError("write failed: " + path.string());
}

DimerState read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open snapshot " + path.string());
  const std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string name = path.string();
  Cursor c(data, name);

  std::array<char, 4> magic{};
  for (char& ch : magic) ch = c.take<char>("magic");
  if (std::string(magic.data(), 4) != "ZDIM") throw SnapshotError(name + ": not a snapshot (bad magic)");
  const auto version = c.take<std::uint32_t>("format version");
  if (version != snapshot_version)
    throw SnapshotError(name + ": snapshot format version " + std::to_string(version) + ", this build reads version " +
                        std::to_string(snapshot_version));
  const auto n = c.take<std::uint32_t>("grid size");
  const double r_min = c.take<double>("r_min");
  const double dr = c.take<double>("dr");
  const double time = c.take<double>("time");
  const double absorbed = c.take<double>("absorbed_norm");
  if (!is_power_of_two(n) || n < 8 || !(dr > 0.0) || !std::isfinite(r_min))
    throw SnapshotError(name + ": invalid grid header (N = " + std::to_string(n) + ")");

  DimerState state(SpatialGrid(r_min, r_min + dr * n, n));
  const std::size_t count = static_cast<std::size_t>(n) * n;
  for (int b = 0; b < 4; ++b) {
    if (c.remaining() < count * 16)
      throw SnapshotError(name + ": truncated snapshot, missing " + block_names[b] + " at byte " +
                          std::to_string(c.position()));
    for (std::size_t p = 0; p < count; ++p) {
      const double re = c.take<double>(block_names[b]);
      const double im = c.take<double>(block_names[b]);
      state.block(b)[p] = Complex{re, im};
    }
  }
  if (c.remaining() != 0) throw SnapshotError(name + ": " + std::to_string(c.remaining()) + " trailing bytes");
  state.set_time(time);
  state.set_absorbed_norm(absorbed);
  return state;
}

}  // namespace zeno::io
