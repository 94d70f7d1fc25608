#include "mhnc/gf256.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace mhnc::gf256 {

namespace {

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<int, 256> log{};
  std::array<std::array<std::uint8_t, 256>, 256> mul{};

  Tables() {
    unsigned x = 1;
    for (unsigned i = 0; i < 255; ++i) {
      exp[i] = static_cast<std::uint8_t>(x);
      log[x] = static_cast<int>(i);
      x <<= 1;
      if (x & 0x100) x ^= kPolynomial;
    }
    for (unsigned i = 255; i < 512; ++i) exp[i] = exp[i - 255];
    log[0] = -1;
    for (unsigned a = 0; a < 256; ++a)
      for (unsigned b = 0; b < 256; ++b)
        mul[a][b] = (a == 0 || b == 0)
                        ? 0
                        : exp[static_cast<unsigned>(log[a] + log[b])];
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) { return tables().mul[a][b]; }

std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw std::domain_error("GF(256): zero has no inverse");
  const auto& t = tables();
  return t.exp[static_cast<unsigned>(255 - t.log[a])];
}

std::uint8_t div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw std::domain_error("GF(256): division by zero");
  if (a == 0) return 0;
  const auto& t = tables();
  return t.exp[static_cast<unsigned>(t.log[a] + 255 - t.log[b])];
}

std::uint8_t exp(unsigned power) { return tables().exp[power % 255]; }

int log(std::uint8_t a) { return tables().log[a]; }

void axpy(std::span<std::uint8_t> dst, std::uint8_t factor, std::span<const std::uint8_t> src) {
  if (factor == 0) return;
  const auto& row = tables().mul[factor];
  const std::size_t n = std::min(dst.size(), src.size());
  for (std::size_t k = 0; k < n; ++k) dst[k] ^= row[src[k]];
}

void scale(std::span<std::uint8_t> v, std::uint8_t factor) {
  const auto& row = tables().mul[factor];
  for (auto& x : v) x = row[x];
}

std::uint8_t mul_slow(std::uint8_t a, std::uint8_t b) {
  unsigned p = 0;
  unsigned aa = a;
  while (b) {
    if (b & 1) p ^= aa;
    b >>= 1;
    aa <<= 1;
    if (aa & 0x100) aa ^= kPolynomial;
  }
  return static_cast<std::uint8_t>(p);
}

}  // namespace mhnc::gf256
