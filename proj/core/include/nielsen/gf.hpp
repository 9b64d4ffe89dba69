#pragma once

#include <cstdint>
#include <vector>

#include "nielsen/errors.hpp"

namespace nielsen {

// GF(p^k) with elements encoded as integers sum c_i p^i for the coefficient
// vector (c_0..c_{k-1}) over the fixed modulus polynomial: the first monic
// irreducible of degree k in that same integer encoding.  Tables are dense,
// so keep q modest (the projective-line construction needs q <= 361).
class GaloisField {
 public:
  GaloisField(std::uint32_t p, std::uint32_t k);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t size() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t inv(std::uint32_t a) const;  // a != 0
  bool is_square(std::uint32_t a) const { return square_[a]; }

  // Coefficients a_0..a_{k-1} of the modulus x^k + a_{k-1}x^{k-1} + ... + a_0.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  static bool is_prime(std::uint32_t n);
  // Factors n as p^k; returns false when n is not a prime power (or n < 2).
  static bool prime_power(std::uint32_t n, std::uint32_t& p, std::uint32_t& k);

 private:
  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_, modulus_;
  std::vector<std::uint8_t> square_;
};

}  // namespace nielsen
