#include "uavmec/agents/checkpoint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <type_traits>
#include <vector>

#include "uavmec/error.hpp"

namespace uavmec::agents {

namespace {

constexpr std::array<char, 8> kMagic{'U', 'A', 'V', 'M', 'E', 'C', 'C', 'K'};

template <typename T>
void put(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get(std::istream& is, const std::string& path) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw Error("checkpoint", path + ": truncated file");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void save_checkpoint(const std::string& path, const Mlp& net) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("io", "cannot open " + tmp + " for writing");
    os.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(os, kCheckpointVersion);
    put<std::uint64_t>(os, net.layers().size());
    for (const LayerSpec& l : net.layers()) {
      put<std::uint64_t>(os, l.in);
      put<std::uint64_t>(os, l.out);
      put<std::uint32_t>(os, static_cast<std::uint32_t>(l.act));
    }
    put<std::uint64_t>(os, net.num_params());
    for (double p : net.params()) put<double>(os, p);
    if (!os) throw Error("io", "write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Mlp load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("checkpoint", path + ": cannot open");
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error("checkpoint", path + ": not a checkpoint file");
  }
  const auto version = get<std::uint32_t>(is, path);
  if (version != kCheckpointVersion) {
    throw Error("checkpoint", path + ": unsupported version " + std::to_string(version));
  }
  const auto n_layers = get<std::uint64_t>(is, path);
  if (n_layers == 0 || n_layers > 1024) throw Error("checkpoint", path + ": bad layer count");
  std::vector<LayerSpec> layers;
  for (std::uint64_t l = 0; l < n_layers; ++l) {
    LayerSpec spec;
    spec.in = get<std::uint64_t>(is, path);
    spec.out = get<std::uint64_t>(is, path);
    const auto act = get<std::uint32_t>(is, path);
    if (act > 2) throw Error("checkpoint", path + ": unknown activation tag");
    spec.act = static_cast<Activation>(act);
    layers.push_back(spec);
  }
  const auto n_params = get<std::uint64_t>(is, path);
  std::uint64_t expected = 0;
  for (const LayerSpec& l : layers) expected += l.in * l.out + l.out;
  if (n_params != expected) throw Error("checkpoint", path + ": parameter count mismatch");
  std::vector<double> params(n_params);
  for (double& p : params) p = get<double>(is, path);
  if (is.peek() != std::char_traits<char>::eof()) throw Error("checkpoint", path + ": trailing bytes");
  try {
    return Mlp(std::move(layers), std::move(params));
  } catch (const Error& e) {
    throw Error("checkpoint", path + ": " + e.what());
  }
}

}  // namespace uavmec::agents
