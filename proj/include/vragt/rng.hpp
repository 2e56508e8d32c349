#pragma once

#include <cmath>
#include <cstdint>

namespace vragt {

// Counter-based keyed stream: the state is a pure function of (seed, tag,
// a, b), so draws are independent of evaluation order and thread count.
class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a = 0,
              std::uint64_t b = 0) {
    state_ = seed;
    absorb(tag);
    absorb(a);
    absorb(b);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform on [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal via Box-Muller
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  void absorb(std::uint64_t v) {
    std::uint64_t z = state_ ^ (v + 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    state_ = z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Stream tags; distinct tags guarantee distinct streams for the same seed.
namespace stream_tag {
inline constexpr std::uint64_t kGraph = 0x47524150ull;      // "GRAP"
inline constexpr std::uint64_t kProblem = 0x50524F42ull;    // "PROB"
inline constexpr std::uint64_t kInit = 0x494E4954ull;       // "INIT"
inline constexpr std::uint64_t kPullNoise = 0x50554C4Cull;  // "PULL"
inline constexpr std::uint64_t kPushNoise = 0x50555348ull;  // "PUSH"
}  // namespace stream_tag

}  // namespace vragt
