#ifndef GRAPHENERGY_RNG_HPP_
#define GRAPHENERGY_RNG_HPP_

#include <cstdint>
#include <random>

namespace graphenergy {

/// Identifies one random stream: a master seed shared by a whole run plus the
/// index of the trial drawing from it.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t trial_index = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

namespace detail {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Seed of the per-trial engine; a pure function of (master, trial_index).
constexpr std::uint64_t stream_key(const Seed& seed) noexcept {
  return detail::mix64(detail::mix64(seed.master) ^
                       detail::mix64(seed.trial_index + 0x632be59bd9b4e019ULL));
}

/// Per-trial generator. std::mt19937_64 output is fixed by the standard, and
/// the double conversion below avoids the implementation-defined
/// std::uniform_real_distribution, so streams are identical across toolchains.
class TrialRng {
 public:
  explicit TrialRng(const Seed& seed) : engine_(stream_key(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace graphenergy

#endif  // GRAPHENERGY_RNG_HPP_
