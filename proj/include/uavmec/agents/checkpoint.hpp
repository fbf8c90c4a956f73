#pragma once

#include <cstdint>
#include <string>

#include "uavmec/agents/mlp.hpp"

namespace uavmec::agents {

// Binary network checkpoint, all integers and doubles little-endian:
//   8 bytes   magic "UAVMECCK"
//   u32       format version (kCheckpointVersion)
//   u64       layer count L
//   L times:  u64 in, u64 out, u32 activation (0 relu, 1 tanh, 2 identity)
//   u64       parameter count P
//   P times:  f64 parameter, in Mlp::params() order
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const std::string& path, const Mlp& net);
// Throws Error("checkpoint") on a missing file, bad magic, unknown version,
// or a truncated, inconsistent or over-long body.
Mlp load_checkpoint(const std::string& path);

}  // namespace uavmec::agents
