#pragma once

#include "cgkit/rational.hpp"

#include <cstdint>
#include <vector>

namespace cgkit::fp {

// Default specialization modulus: the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t default_prime = 2305843009213693951ULL;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p || s < a ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

// Inverse mod p; throws std::domain_error when a == 0 (mod p).
std::uint64_t inv(std::uint64_t a, std::uint64_t p);

// Reduction of an exact rational mod p; throws std::domain_error when the
// denominator vanishes mod p.
std::uint64_t to_residue(const Rat& x, std::uint64_t p);

// Incremental row echelonization over F_p for rank and membership queries
// on streams of dense coefficient rows.
class RowReducer {
 public:
  RowReducer(std::size_t width, std::uint64_t prime)
      : width_(width), prime_(prime) {}

  // Reduces row against the current basis; keeps the nonzero remainder.
  // Returns true when the rank grew.
  bool absorb(std::vector<std::uint64_t> row);

  // True when row lies in the span of the absorbed rows.
  bool reduces_to_zero(std::vector<std::uint64_t> row) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  std::uint64_t prime() const { return prime_; }

 private:
  void eliminate(std::vector<std::uint64_t>& row) const;

  std::size_t width_;
  std::uint64_t prime_;
  // Rows kept normalized with leading coefficient 1, sorted by pivot column.
  std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> rows_;
};

}  // namespace cgkit::fp
