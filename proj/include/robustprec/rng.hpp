#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace robustprec {

// splitmix64 finalizer; good avalanche, cheap.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_tag(std::string_view tag) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Derives an independent stream seed from a master seed and a set of
// indices/tags. Replications and pipeline stages each get their own stream
// so results do not depend on evaluation order or worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::string_view tag, std::uint64_t b = 0) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ mix64(a + 0x9e3779b97f4a7c15ULL));
  s = mix64(s ^ hash_tag(tag));
  s = mix64(s ^ mix64(b + 0x6a09e667f3bcc909ULL));
  return s;
}

// Seeded random stream with the handful of distributions the simulations
// need. Each instance owns its engine; never shared across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double chisq(double df) { return std::chi_squared_distribution<double>(df)(engine_); }

  // Student-t via the Gaussian / chi-square ratio.
  double student_t(double df) {
    const double z = normal();
    const double v = chisq(df);
    return z / std::sqrt(v / df);
  }

  double uniform01() { return uniform_(engine_); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace robustprec
