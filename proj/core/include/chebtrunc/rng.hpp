#pragma once

#include <cstdint>
#include <initializer_list>

namespace chebtrunc {

/// splitmix64 finalizer; full-period bijective mixer on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent stream seed from a master seed and a tag path,
/// e.g. (master, {algorithm_id, N, trial}). Streams with distinct tag paths
/// are statistically independent; the mapping is pure, so any worker can
/// recompute it.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t t : tags) s = mix64(s ^ t);
    return s;
}

}  // namespace chebtrunc
