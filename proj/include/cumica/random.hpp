#pragma once

#include <cstdint>
#include <random>

namespace cumica {

/// Caller-owned random stream. One stream must not be shared between
/// concurrent callers.
using RngStream = std::mt19937_64;

/// Derives an independent seed for work item `index` from `master`
/// (splitmix64 finalizer over the pair).
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace cumica
