#include "nielsen/gf.hpp"

#include <algorithm>

namespace nielsen {

namespace {

// Polynomials over F_p as coefficient vectors, lowest degree first,
// trailing zeros trimmed.
using Poly = std::vector<std::uint32_t>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(r);
}

// Remainder of a modulo monic b.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  a = trim(a);
  while (a.size() >= b.size()) {
    const std::uint32_t c = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] = (a[i + shift] + (p - c % p) * b[i]) % p;
    a = trim(a);
  }
  return a;
}

Poly decode(std::uint32_t e, std::uint32_t p) {
  Poly a;
  while (e) {
    a.push_back(e % p);
    e /= p;
  }
  return a;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  // No monic divisor of degree 1..k/2.  Candidates enumerated by the same
  // integer encoding as field elements.
  for (std::size_t d = 1; 2 * d <= k; ++d) {
    std::uint32_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t e = 0; e < count; ++e) {
      Poly g = decode(e, p);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool GaloisField::is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool GaloisField::prime_power(std::uint32_t n, std::uint32_t& p, std::uint32_t& k) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      std::uint32_t m = n, e = 0;
      while (m % d == 0) { m /= d; ++e; }
      if (m != 1) return false;
      p = d;
      k = e;
      return true;
    }
  }
  p = n;
  k = 1;
  return true;
}

GaloisField::GaloisField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
  if (!is_prime(p)) throw ArgumentError("field characteristic must be prime");
  if (k == 0) throw ArgumentError("field extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > 65536) throw CapacityError("field size exceeds cap 65536");
  }
  q_ = std::uint32_t(q);

  // Lex-first monic irreducible of degree k.
  Poly f;
  if (k == 1) {
    f = {0, 1};
  } else {
    for (std::uint32_t e = 0;; ++e) {
      if (e >= q_) throw Error("no irreducible polynomial found");
      Poly cand = decode(e, p);
      cand.resize(k + 1, 0);
      cand[k] = 1;
      if (irreducible(cand, p)) { f = cand; break; }
    }
  }
  modulus_.assign(f.begin(), f.end() - 1);

  add_.resize(std::size_t(q_) * q_);
  mul_.resize(std::size_t(q_) * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  square_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    Poly pa = decode(a, p);
    for (std::uint32_t b = 0; b < q_; ++b) {
      Poly pb = decode(b, p);
      Poly s(std::max(pa.size(), pb.size()), 0);
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::uint32_t v = 0;
        if (i < pa.size()) v += pa[i];
        if (i < pb.size()) v += pb[i];
        s[i] = v % p;
      }
      std::uint32_t enc = 0;
      for (std::size_t i = s.size(); i-- > 0;) enc = enc * p + s[i];
      add_[std::size_t(a) * q_ + b] = enc;

      Poly m = poly_mod(poly_mul(pa, pb, p), f, p);
      enc = 0;
      for (std::size_t i = m.size(); i-- > 0;) enc = enc * p + m[i];
      mul_[std::size_t(a) * q_ + b] = enc;
    }
  }
  for (std::uint32_t a = 0; a < q_; ++a) {
    for (std::uint32_t b = 0; b < q_; ++b)
      if (add(a, b) == 0) { neg_[a] = b; break; }
    square_[mul(a, a)] = 1;
    if (a) {
      for (std::uint32_t b = 1; b < q_; ++b)
        if (mul(a, b) == 1) { inv_[a] = b; break; }
      if (inv_[a] == 0) throw Error("modulus polynomial is not irreducible");
    }
  }
}

std::uint32_t GaloisField::inv(std::uint32_t a) const {
  if (a == 0 || a >= q_) throw ArgumentError("field inverse of zero");
  return inv_[a];
}

}  // namespace nielsen
