#pragma once

#include <cstdint>
#include <span>

// GF(2^8) arithmetic over the primitive polynomial x^8 + x^4 + x^3 + x^2 + 1.
namespace mhnc::gf256 {

inline constexpr unsigned kPolynomial = 0x11D;
inline constexpr unsigned kOrder = 256;

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }
inline std::uint8_t sub(std::uint8_t a, std::uint8_t b) { return a ^ b; }

std::uint8_t mul(std::uint8_t a, std::uint8_t b);
// Throws std::domain_error for b == 0.
std::uint8_t div(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);
std::uint8_t exp(unsigned power);
int log(std::uint8_t a);

// dst[k] += factor * src[k]
void axpy(std::span<std::uint8_t> dst, std::uint8_t factor, std::span<const std::uint8_t> src);
// v[k] *= factor
void scale(std::span<std::uint8_t> v, std::uint8_t factor);

// Bitwise carry-less multiply with reduction; independent of the tables.
std::uint8_t mul_slow(std::uint8_t a, std::uint8_t b);

}  // namespace mhnc::gf256
