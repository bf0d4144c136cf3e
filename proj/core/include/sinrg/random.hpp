#pragma once

#include <array>
#include <cstdint>

namespace sinrg {

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t x);

// Stream purposes. Each purpose gets its own stream per replicate so that
// e.g. positions do not depend on how many marks were drawn.
enum class Purpose : std::uint64_t {
  Count = 1,
  Position = 2,
  Mark = 3,
  Edge = 4,
  TestMarks = 5,
  FieldA = 6,
  FieldB = 7,
  Entropy = 8,
  Auxiliary = 9,
};

struct StreamSeed {
  std::uint64_t master = 0;
  std::uint64_t replicate = 0;

  bool operator==(const StreamSeed&) const = default;
};

std::uint64_t derive_key(const StreamSeed& seed, Purpose purpose, std::uint64_t index = 0);

// xoshiro256** seeded from a 64-bit key through splitmix64.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key);
  RandomStream(const StreamSeed& seed, Purpose purpose, std::uint64_t index = 0);

  std::uint64_t next();
  // Uniform on the open interval (0, 1).
  double uniform();
  double exponential(double rate);
  std::uint64_t poisson(double mean);

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace sinrg
