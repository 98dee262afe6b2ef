#include "cgkit/modular.hpp"

#include <stdexcept>

namespace cgkit::fp {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) acc = mul(acc, base, p);
    base = mul(base, base, p);
    exp >>= 1;
  }
  return acc;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("inverse of zero residue");
  return pow(a, p - 2, p);
}

std::uint64_t to_residue(const Rat& x, std::uint64_t p) {
  const auto reduce_int = [&](const boost::multiprecision::mpz_int& z) {
    boost::multiprecision::mpz_int r = z % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  };
  std::uint64_t num = reduce_int(boost::multiprecision::numerator(x));
  std::uint64_t den = reduce_int(boost::multiprecision::denominator(x));
  if (den == 0) throw std::domain_error("denominator vanishes mod p");
  return mul(num, inv(den, p), p);
}

void RowReducer::eliminate(std::vector<std::uint64_t>& row) const {
  for (const auto& [pivot, basis_row] : rows_) {
    std::uint64_t c = row[pivot];
    if (c == 0) continue;
    for (std::size_t j = pivot; j < width_; ++j)
      if (basis_row[j] != 0) row[j] = sub(row[j], mul(c, basis_row[j], prime_), prime_);
  }
}

bool RowReducer::absorb(std::vector<std::uint64_t> row) {
  if (row.size() != width_) throw std::invalid_argument("row width mismatch");
  for (auto& v : row) v %= prime_;
  eliminate(row);
  std::size_t pivot = width_;
  for (std::size_t j = 0; j < width_; ++j)
    if (row[j] != 0) {
      pivot = j;
      break;
    }
  if (pivot == width_) return false;
  std::uint64_t scale = inv(row[pivot], prime_);
  for (std::size_t j = pivot; j < width_; ++j)
    if (row[j] != 0) row[j] = mul(row[j], scale, prime_);
  auto pos = rows_.begin();
  while (pos != rows_.end() && pos->first < pivot) ++pos;
  rows_.insert(pos, {pivot, std::move(row)});
  return true;
}

bool RowReducer::reduces_to_zero(std::vector<std::uint64_t> row) const {
  if (row.size() != width_) throw std::invalid_argument("row width mismatch");
  for (auto& v : row) v %= prime_;
  eliminate(row);
  for (std::uint64_t v : row)
    if (v != 0) return false;
  return true;
}

}  // namespace cgkit::fp
