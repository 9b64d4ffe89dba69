#include "nielsen/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace nielsen {

std::uint64_t euler_phi(std::uint64_t k) {
  std::uint64_t result = k;
  for (std::uint64_t p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    while (k % p == 0) k /= p;
    result -= result / p;
  }
  if (k > 1) result -= result / k;
  return result;
}

HigmanInvariant higman_pair(const FiniteGroup& g, const ConjugacyClasses& cc,
                            const GenVector& v) {
  if (v.group_fingerprint != g.fingerprint())
    throw ArgumentError("vector belongs to a different group");
  if (v.n() != 2) throw ArgumentError("the commutator-pair invariant needs a 2-vector");
  const std::uint16_t a = cc.class_index[g.commutator(v.entries[0], v.entries[1])];
  const std::uint16_t b = cc.class_index[g.commutator(v.entries[1], v.entries[0])];
  return {std::min(a, b), std::max(a, b)};
}

AbelianQuotient AbelianQuotient::build(const FiniteGroup& g, std::vector<std::uint32_t> moduli,
                                       std::vector<std::vector<std::uint32_t>> generator_images) {
  if (moduli.empty()) throw ArgumentError("quotient needs at least one modulus");
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 2) throw ArgumentError("quotient moduli must be at least 2");
    if (i + 1 < moduli.size() && moduli[i] % moduli[i + 1] != 0)
      throw ArgumentError("quotient moduli must satisfy d_{i+1} | d_i");
  }
  const auto& gens = g.default_generators();
  if (generator_images.size() != gens.size())
    throw ArgumentError("need exactly one image per default generator");
  const std::uint32_t m = std::uint32_t(moduli.size());
  for (auto& img : generator_images) {
    if (img.size() != m) throw ArgumentError("generator image has wrong rank");
    for (std::uint32_t i = 0; i < m; ++i) img[i] %= moduli[i];
  }

  // Extend over a breadth-first word table, then verify the extension is a
  // well defined homomorphism.
  WordTable wt = WordTable::build(g, gens);
  if (wt.reached_count() != g.order())
    throw ArgumentError("default generators do not generate the group");

  AbelianQuotient q;
  q.moduli_ = std::move(moduli);
  q.images_.assign(g.order(), std::vector<std::uint32_t>(m, 0));
  for (Elem e : wt.bfs_order()) {
    if (e == 0) continue;
    const auto& base = q.images_[wt.parent(e)];
    const auto& step = generator_images[wt.letter(e)];
    auto& out = q.images_[e];
    for (std::uint32_t i = 0; i < m; ++i) out[i] = (base[i] + step[i]) % q.moduli_[i];
  }
  for (std::uint32_t e = 0; e < g.order(); ++e)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto& lhs = q.images_[g.mul(Elem(e), gens[j])];
      for (std::uint32_t i = 0; i < m; ++i)
        if (lhs[i] != (q.images_[e][i] + generator_images[j][i]) % q.moduli_[i])
          throw ArgumentError("images do not define a homomorphism onto the quotient");
    }

  // Surjectivity: close the image tuples under addition.
  std::uint64_t target = 1;
  for (std::uint32_t d : q.moduli_) {
    target *= d;
    if (target > (1ULL << 22)) throw CapacityError("quotient size capped at 2^22");
  }
  std::vector<std::uint32_t> stride(m, 1);
  for (std::uint32_t i = m; i-- > 1;) stride[i - 1] = stride[i] * q.moduli_[i];
  std::vector<std::uint8_t> seen(target, 0);
  std::vector<std::uint32_t> queue = {0};
  seen[0] = 1;
  std::uint64_t reached = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& img : generator_images) {
      std::uint32_t cur = queue[qi], nxt = 0;
      for (std::uint32_t i = 0; i < m; ++i) {
        const std::uint32_t c = cur / stride[i] % q.moduli_[i];
        nxt += ((c + img[i]) % q.moduli_[i]) * stride[i];
      }
      if (!seen[nxt]) {
        seen[nxt] = 1;
        ++reached;
        queue.push_back(nxt);
      }
    }
  }
  if (reached != target)
    throw ArgumentError("generator images do not span the quotient");
  return q;
}

std::vector<std::vector<std::uint32_t>> abelianized_matrix(const FiniteGroup& g,
                                                           const AbelianQuotient& q,
                                                           const GenVector& v) {
  if (v.group_fingerprint != g.fingerprint())
    throw ArgumentError("vector belongs to a different group");
  if (v.n() != q.rank())
    throw ArgumentError("vector length must match the quotient rank");
  const std::uint32_t m = q.rank();
  const std::uint32_t d = q.moduli().back();
  std::vector<std::vector<std::uint32_t>> mat(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) mat[i][j] = q.image(v.entries[i])[j] % d;
  return mat;
}

namespace {

// Leibniz expansion mod d; m <= 8 keeps the m! sum trivial.
std::uint32_t det_mod(const std::vector<std::vector<std::uint32_t>>& mat, std::uint32_t d) {
  const std::uint32_t m = std::uint32_t(mat.size());
  std::vector<std::uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t det = 0;
  do {
    std::uint64_t prod = 1;
    for (std::uint32_t i = 0; i < m; ++i) prod = prod * mat[i][perm[i]] % d;
    // permutation parity
    int par = 0;
    std::vector<std::uint8_t> used(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      std::uint32_t j = i, len = 0;
      while (!used[j]) {
        used[j] = 1;
        ++len;
        j = perm[j];
      }
      par ^= (len + 1) & 1;
    }
    det += par ? -std::int64_t(prod) : std::int64_t(prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  det %= std::int64_t(d);
  if (det < 0) det += d;
  return std::uint32_t(det);
}

}  // namespace

DetInvariant det_invariant(const FiniteGroup& g, const AbelianQuotient& q, const GenVector& v) {
  const std::uint32_t d = q.moduli().back();
  const std::uint32_t r = det_mod(abelianized_matrix(g, q, v), d);
  return {d, std::min(r, (d - r) % d)};
}

std::vector<std::uint32_t> weak_det_orbit(const DetInvariant& det) {
  if (det.modulus != 8)
    throw ArgumentError("the weak determinant orbit is only defined mod 8");
  std::set<std::uint32_t> orbit;
  for (std::uint32_t u : {1u, 3u, 5u, 7u}) {
    const std::uint32_t r = det.value * (u * u % 8) % 8;
    orbit.insert(std::min(r, (8 - r) % 8));  // sign freedom folds r with 8 - r
  }
  return {orbit.begin(), orbit.end()};
}

LowerBound invariant_lower_bound(const FiniteGroup& g, std::uint32_t n,
                                 const AbelianQuotient* quotient,
                                 const LowerBoundOptions& opts) {
  if (n == 0 || n > kMaxVectorLen)
    throw ArgumentError("vector length must be between 1 and " + std::to_string(kMaxVectorLen));
  const bool use_higman = n == 2;
  const bool use_det = quotient && quotient->rank() == n;
  if (!use_higman && !use_det)
    throw ArgumentError("no invariant applies to this vector length");

  std::optional<ConjugacyClasses> cc;
  if (use_higman) cc = conjugacy_classes(g);

  std::set<std::pair<HigmanInvariant, DetInvariant>> values;
  std::uint64_t found_generating = 0;
  auto record = [&](const GenVector& v) {
    ++found_generating;
    HigmanInvariant h{0, 0};
    DetInvariant d{};
    if (use_higman) h = higman_pair(g, *cc, v);
    if (use_det) d = det_invariant(g, *quotient, v);
    values.emplace(h, d);
  };

  std::uint64_t total = 1;
  bool exhaustive = true;
  for (std::uint32_t i = 0; i < n && exhaustive; ++i) {
    total *= g.order();
    exhaustive = total <= opts.exhaustive_cap;
  }

  LowerBound out;
  if (exhaustive) {
    GenVector v;
    v.group_fingerprint = g.fingerprint();
    v.entries.assign(n, 0);
    while (true) {
      if (generates(g, v.entries)) record(v);
      std::uint32_t i = n;
      while (i > 0) {
        if (++v.entries[--i] < g.order()) break;
        v.entries[i] = 0;
        if (i == 0) {
          out.count = values.size();
          out.exhaustive = true;
          return out;
        }
      }
    }
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, g.order() - 1);
  GenVector v;
  v.group_fingerprint = g.fingerprint();
  v.entries.assign(n, 0);
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = opts.samples * 64;
  while (found_generating < opts.samples && attempts < max_attempts) {
    ++attempts;
    for (std::uint32_t i = 0; i < n; ++i) v.entries[i] = Elem(dist(rng));
    if (generates(g, v.entries)) record(v);
  }
  if (found_generating == 0)
    throw Error("sampling found no generating vectors; the bound would be vacuous");
  out.count = values.size();
  out.exhaustive = false;
  return out;
}

}  // namespace nielsen
