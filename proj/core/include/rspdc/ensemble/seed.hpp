#pragma once

#include <cstdint>

namespace rspdc::ensemble {

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of structure `index` in a campaign: splitmix64(master + (index + 1) * golden gamma).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace rspdc::ensemble
