#pragma once

#include <cstdint>
#include <limits>

namespace expower {

// SplitMix64. Small state, so one engine per replicate is cheap; streams are
// keyed on (seed, index) and never shared between replicates.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Engine for replicate `index` of a run seeded with `seed`.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (index * 0xd1b54a32d192ed03ULL));
  mixer();
  return SplitMix64(mixer() ^ index);
}

}  // namespace expower
