#include "vqpt/rng.hpp"

#include <cmath>
#include <numbers>

namespace vqpt {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z)
{
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next_u64()
{
  ++counter_;
  return mix64(seed_ + counter_ * kGolden);
}

double Rng::uniform()
{
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Rng Rng::derive(std::initializer_list<std::uint64_t> keys) const
{
  std::uint64_t h = mix64(seed_ ^ 0x5851F42D4C957F2DULL);
  for (auto k : keys)
    h = mix64(h + kGolden + mix64(k + 0x2545F4914F6CDD1DULL));
  return Rng(h);
}

} // namespace vqpt
