#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>

namespace closure {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-keyed PRNG (xoshiro256++ seeded via splitmix64). Every stream is
// identified by a 64-bit key; child streams are derived by hashing the key
// with caller-chosen tags, never from the parent's consumption state, so the
// draws of a substream do not depend on scheduling or evaluation order.
class RngStream {
 public:
  static RngStream fromSeed(std::uint64_t seed) { return RngStream(seed); }

  // Derive an independent child stream from this stream's key and up to
  // three tag values (e.g. walk index, iteration, purpose).
  RngStream fork(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
    std::uint64_t s = key_;
    std::uint64_t k = detail::splitmix64(s);
    s ^= a * 0x9e3779b97f4a7c15ull;
    k ^= detail::splitmix64(s);
    s ^= b * 0xd1b54a32d192ed03ull;
    k ^= detail::splitmix64(s);
    s ^= c * 0x8cb92ba72f3d8dd7ull;
    k ^= detail::splitmix64(s);
    return RngStream(k);
  }

  std::uint64_t nextU64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1).
  double nextDouble() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * nextDouble(); }

  // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
  std::uint64_t below(std::uint64_t n) { return nextU64() % n; }

  // Uniform direction on the unit sphere (no rejection; fixed draw count).
  Vec3 unitVector3() {
    double z = uniform(-1.0, 1.0);
    double phi = uniform(0.0, 2.0 * M_PI);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec3(r * std::cos(phi), r * std::sin(phi), z);
  }

  // Uniform point in the closed ball of the given radius.
  Vec3 inBall3(double radius) {
    Vec3 dir = unitVector3();
    double r = radius * std::cbrt(nextDouble());
    return r * dir;
  }

  // Uniform point in the disk of the given radius.
  Vec2 inDisk2(double radius) {
    double phi = uniform(0.0, 2.0 * M_PI);
    double r = radius * std::sqrt(nextDouble());
    return Vec2(r * std::cos(phi), r * std::sin(phi));
  }

  double gaussian() {
    double u1 = nextDouble();
    double u2 = nextDouble();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2);
  }

  double exponential() { return -std::log1p(-nextDouble()); }

 private:
  explicit RngStream(std::uint64_t key) : key_(key) {
    std::uint64_t s = key ^ 0x6a09e667f3bcc908ull;
    for (auto& w : s_) w = detail::splitmix64(s);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t key_;
  std::uint64_t s_[4];
};

}  // namespace closure
