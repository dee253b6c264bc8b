#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "monoiso/sobolev.hpp"

namespace monoiso {
namespace {

static_assert(std::endian::native == std::endian::little, "grid files are written little-endian");

constexpr char kMagic[4] = {'M', 'I', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kFlagCompact = 1;

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("GridFunction::load: truncated header");
  return v;
}

}  // namespace

nlohmann::json GridFunction::sidecar() const {
  const std::size_t N = grid_.dims.size();
  nlohmann::json j;
  j["format"] = "MIGF";
  j["version"] = kVersion;
  j["N"] = N;
  j["dims"] = grid_.dims;
  j["spacing"] = std::vector<double>(N, grid_.h);
  j["lo"] = grid_.lo;
  j["hi"] = grid_.hi();
  j["compact_support"] = compact_support_;
  j["dtype"] = "float64";
  j["byte_order"] = "little";
  j["layout"] = "row-major, last axis fastest";
  j["header_bytes"] = 4 + 4 + 4 + 8 * N + 8 * N * 3 + 4;
  return j;
}

void GridFunction::save(const std::string& path) const {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("GridFunction::save: cannot open " + path);
    const std::size_t N = grid_.dims.size();
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, static_cast<std::uint32_t>(N));
    for (std::size_t d : grid_.dims) put(out, static_cast<std::uint64_t>(d));
    for (std::size_t k = 0; k < N; ++k) put(out, grid_.h);
    for (double v : grid_.lo) put(out, v);
    for (double v : grid_.hi()) put(out, v);
    put(out, compact_support_ ? kFlagCompact : std::uint32_t{0});
    out.write(reinterpret_cast<const char*>(values_.data()), static_cast<std::streamsize>(values_.size() * sizeof(double)));
    if (!out) throw std::runtime_error("GridFunction::save: write failed for " + path);
  }
  std::ofstream side(path + ".json", std::ios::trunc);
  if (!side) throw std::runtime_error("GridFunction::save: cannot open " + path + ".json");
  side << sidecar().dump(2) << '\n';
}

GridFunction GridFunction::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("GridFunction::load: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("GridFunction::load: bad magic in " + path);
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) throw std::runtime_error("GridFunction::load: unsupported version");
  const auto N = get<std::uint32_t>(in);
  if (N < 1 || N > 12) throw std::runtime_error("GridFunction::load: bad dimension");
  GridSpec g;
  for (std::uint32_t k = 0; k < N; ++k) g.dims.push_back(static_cast<std::size_t>(get<std::uint64_t>(in)));
  std::vector<double> spacing(N), hi(N);
  for (auto& s : spacing) s = get<double>(in);
  for (std::uint32_t k = 0; k < N; ++k) g.lo.push_back(get<double>(in));
  for (auto& v : hi) v = get<double>(in);
  const auto flags = get<std::uint32_t>(in);
  for (double s : spacing)
    if (s != spacing[0]) throw std::runtime_error("GridFunction::load: anisotropic spacing is not supported");
  g.h = spacing[0];
  g.validate();
  std::vector<double> values(g.size());
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("GridFunction::load: truncated payload");
  return GridFunction(std::move(g), std::move(values), (flags & kFlagCompact) != 0);
}

}  // namespace monoiso
