#include "nielsen/catalog.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "nielsen/gf.hpp"

namespace nielsen {

namespace {

// Dense-table memory guard: orders past this would need multi-gigabyte
// multiplication tables even though they sit under the element-index cap.
constexpr std::uint64_t kMaxTableEntries = 700000000;

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  std::uint32_t number(const char* what) {
    skip_ws();
    if (pos >= s.size() || !isdigit(std::uint8_t(s[pos])))
      throw ParseError(std::string("expected ") + what, pos);
    std::uint64_t v = 0;
    const std::size_t start = pos;
    while (pos < s.size() && isdigit(std::uint8_t(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 0xFFFFFFFFULL) throw ParseError("number too large", start);
      ++pos;
    }
    return std::uint32_t(v);
  }
};

GroupKind kind_of(const std::string& name, std::size_t pos) {
  static const std::map<std::string, GroupKind> table = {
      {"cyclic", GroupKind::cyclic},     {"abelian", GroupKind::abelian},
      {"dihedral", GroupKind::dihedral}, {"quaternion", GroupKind::quaternion},
      {"sym", GroupKind::sym},           {"alt", GroupKind::alt},
      {"psl2", GroupKind::psl2},         {"bgroup", GroupKind::bgroup},
      {"perm", GroupKind::perm}};
  auto it = table.find(name);
  if (it == table.end()) throw ParseError("unknown group kind '" + name + "'", pos);
  return it->second;
}

// Invariant-factor form of an abelian parameter list: collect prime powers,
// repeatedly peel the largest power of every prime into the next factor.
std::vector<std::uint32_t> invariant_factors(const std::vector<std::uint32_t>& parts) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> powers;  // prime -> descending p^e list
  for (std::uint32_t part : parts) {
    std::uint32_t m = part;
    for (std::uint32_t p = 2; std::uint64_t(p) * p <= m; ++p) {
      if (m % p) continue;
      std::uint32_t pe = 1;
      while (m % p == 0) { m /= p; pe *= p; }
      powers[p].push_back(pe);
    }
    if (m > 1) powers[m].push_back(m);
  }
  std::size_t count = 0;
  for (auto& [p, list] : powers) {
    std::sort(list.begin(), list.end(), std::greater<>());
    count = std::max(count, list.size());
  }
  std::vector<std::uint32_t> factors(count, 1);
  for (auto& [p, list] : powers)
    for (std::size_t i = 0; i < list.size(); ++i) factors[i] *= list[i];
  if (factors.empty()) factors.push_back(1);
  return factors;
}

std::string join_params(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

// Cycle notation over 0-based points rendered with a label function.
template <class LabelFn>
std::string cycle_name(const std::vector<Elem>& perm, LabelFn&& point_label) {
  std::string out;
  std::vector<std::uint8_t> used(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (used[i] || perm[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!used[j]) {
      used[j] = 1;
      if (!first) out += ' ';
      out += point_label(Elem(j));
      first = false;
      j = perm[j];
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

std::string cycle_name_1based(const std::vector<Elem>& perm) {
  return cycle_name(perm, [](Elem p) { return std::to_string(p + 1); });
}

FiniteGroup finish(std::string label, std::string canonical, std::uint32_t order,
                   std::vector<Elem> mul, std::vector<Elem> gens,
                   std::vector<std::string> names) {
  FiniteGroup g = FiniteGroup::from_mul_table(std::move(label), std::move(canonical), order,
                                              std::move(mul), std::move(gens), std::move(names));
  if (!generates(g, g.default_generators()))
    throw Error("default generators fail to generate " + g.label());
  return g;
}

void check_table_budget(std::uint64_t order) {
  if (order > kMaxGroupOrder)
    throw CapacityError("group order " + std::to_string(order) + " exceeds cap " +
                        std::to_string(kMaxGroupOrder));
  if (order * order > kMaxTableEntries)
    throw CapacityError("multiplication table for order " + std::to_string(order) +
                        " exceeds the dense-table budget");
}

FiniteGroup build_cyclic(std::uint32_t k, const std::string& canonical) {
  check_table_budget(k);
  std::vector<Elem> mul(std::size_t(k) * k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b) mul[std::size_t(a) * k + b] = Elem((a + b) % k);
  std::vector<std::string> names;
  if (k <= 4096) {
    names.reserve(k);
    for (std::uint32_t a = 0; a < k; ++a)
      names.push_back(a == 0 ? "1" : (a == 1 ? "t" : "t^" + std::to_string(a)));
  }
  return finish("C" + std::to_string(k), canonical, k, std::move(mul), {Elem(1 % k)},
                std::move(names));
}

FiniteGroup build_abelian(const std::vector<std::uint32_t>& factors, const std::string& canonical) {
  std::uint64_t order = 1;
  for (std::uint32_t d : factors) {
    order *= d;
    if (order > kMaxGroupOrder)
      throw CapacityError("abelian group order exceeds cap " + std::to_string(kMaxGroupOrder));
  }
  check_table_budget(order);
  const std::uint32_t n = std::uint32_t(order), m = std::uint32_t(factors.size());
  std::vector<std::uint32_t> stride(m, 1);
  for (std::uint32_t i = m; i-- > 1;) stride[i - 1] = stride[i] * factors[i];

  auto decode = [&](std::uint32_t e, std::vector<std::uint32_t>& c) {
    for (std::uint32_t i = 0; i < m; ++i) {
      c[i] = e / stride[i];
      e %= stride[i];
    }
  };
  std::vector<Elem> mul(std::size_t(n) * n);
  std::vector<std::uint32_t> ca(m), cb(m);
  for (std::uint32_t a = 0; a < n; ++a) {
    decode(a, ca);
    for (std::uint32_t b = 0; b < n; ++b) {
      decode(b, cb);
      std::uint32_t e = 0;
      for (std::uint32_t i = 0; i < m; ++i) e += ((ca[i] + cb[i]) % factors[i]) * stride[i];
      mul[std::size_t(a) * n + b] = Elem(e);
    }
  }
  std::vector<Elem> gens;
  for (std::uint32_t i = 0; i < m; ++i)
    if (factors[i] > 1) gens.push_back(Elem(stride[i]));
  if (gens.empty()) gens.push_back(0);
  std::vector<std::string> names;
  if (n <= 4096) {
    names.reserve(n);
    for (std::uint32_t a = 0; a < n; ++a) {
      decode(a, ca);
      std::string s = "(";
      for (std::uint32_t i = 0; i < m; ++i) {
        if (i) s += ',';
        s += std::to_string(ca[i]);
      }
      names.push_back(s + ")");
    }
  }
  std::string label;
  for (std::uint32_t d : factors) {
    if (!label.empty()) label += 'x';
    label += "C" + std::to_string(d);
  }
  return finish(label, canonical, n, std::move(mul), std::move(gens), std::move(names));
}

FiniteGroup build_dihedral(std::uint32_t m, const std::string& canonical) {
  const std::uint32_t n = 2 * m;
  check_table_budget(n);
  // Element a^s b^r at index s*m + r; b^r a = a b^{-r}.
  std::vector<Elem> mul(std::size_t(n) * n);
  for (std::uint32_t s1 = 0; s1 < 2; ++s1)
    for (std::uint32_t r1 = 0; r1 < m; ++r1)
      for (std::uint32_t s2 = 0; s2 < 2; ++s2)
        for (std::uint32_t r2 = 0; r2 < m; ++r2) {
          const std::uint32_t s = (s1 + s2) % 2;
          const std::uint32_t r = ((s2 ? m - r1 : r1) + r2) % m;
          mul[std::size_t(s1 * m + r1) * n + (s2 * m + r2)] = Elem(s * m + r);
        }
  std::vector<std::string> names;
  if (n <= 4096) {
    for (std::uint32_t s = 0; s < 2; ++s)
      for (std::uint32_t r = 0; r < m; ++r) {
        std::string v;
        if (s) v = "a";
        if (r) {
          if (!v.empty()) v += ' ';
          v += r == 1 ? "b" : "b^" + std::to_string(r);
        }
        names.push_back(v.empty() ? "1" : v);
      }
  }
  return finish("D" + std::to_string(n), canonical, n, std::move(mul), {Elem(m), Elem(1)},
                std::move(names));
}

FiniteGroup build_quaternion(const std::string& canonical) {
  // (axis, sign) with axes 1,i,j,k at indices 0,1,2,3; index = axis ? 2*axis + neg : neg.
  static const int axmul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int axneg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  auto index = [](int axis, int neg) { return Elem(axis == 0 ? neg : 2 * axis + neg); };
  std::vector<Elem> mul(64);
  for (int a1 = 0; a1 < 4; ++a1)
    for (int n1 = 0; n1 < 2; ++n1)
      for (int a2 = 0; a2 < 4; ++a2)
        for (int n2 = 0; n2 < 2; ++n2) {
          // j*k = i etc. come from axneg; classic rules i*j = k, j*k = i, k*i = j.
          const int axis = axmul[a1][a2];
          const int neg = (n1 ^ n2) ^ axneg[a1][a2];
          mul[std::size_t(index(a1, n1)) * 8 + index(a2, n2)] = index(axis, neg);
        }
  std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  return finish("Q8", canonical, 8, std::move(mul), {2, 4}, std::move(names));
}

int parity(const std::vector<Elem>& p) {
  std::vector<std::uint8_t> used(p.size(), 0);
  int par = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (used[i]) continue;
    std::size_t j = i, len = 0;
    while (!used[j]) {
      used[j] = 1;
      ++len;
      j = p[j];
    }
    par ^= (len + 1) & 1;
  }
  return par;
}

FiniteGroup build_perm_group(std::vector<std::vector<Elem>> elements,
                             const std::vector<std::vector<Elem>>& gen_perms,
                             std::string label, std::string canonical,
                             bool one_based_names) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  const std::uint32_t n = std::uint32_t(elements.size());
  check_table_budget(n);
  const std::size_t deg = elements[0].size();

  std::unordered_map<std::string, Elem> index;
  index.reserve(n * 2);
  auto key = [deg](const std::vector<Elem>& p) {
    return std::string(reinterpret_cast<const char*>(p.data()), deg * sizeof(Elem));
  };
  for (std::uint32_t i = 0; i < n; ++i) index.emplace(key(elements[i]), Elem(i));

  std::vector<Elem> mul(std::size_t(n) * n);
  std::vector<Elem> comp(deg);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto& pa = elements[a];
      const auto& pb = elements[b];
      for (std::size_t x = 0; x < deg; ++x) comp[x] = pa[pb[x]];
      auto it = index.find(key(comp));
      if (it == index.end()) throw Error("permutation set not closed under composition");
      mul[std::size_t(a) * n + b] = it->second;
    }

  std::vector<Elem> gens;
  for (const auto& gp : gen_perms) {
    auto it = index.find(key(gp));
    if (it == index.end()) throw Error("generator missing from closed permutation set");
    if (std::find(gens.begin(), gens.end(), it->second) == gens.end()) gens.push_back(it->second);
  }
  std::vector<std::string> names;
  if (n <= 4096 && one_based_names) {
    names.reserve(n);
    for (const auto& p : elements) names.push_back(cycle_name_1based(p));
  }
  return finish(std::move(label), std::move(canonical), n, std::move(mul), std::move(gens),
                std::move(names));
}

FiniteGroup build_sym_or_alt(GroupKind kind, std::uint32_t d, const std::string& canonical) {
  if (d > 8) throw CapacityError("symmetric/alternating degree capped at 8 by the order cap");
  const std::uint32_t deg = std::max(1u, d);
  std::vector<Elem> identity(deg);
  std::iota(identity.begin(), identity.end(), 0);

  std::vector<std::vector<Elem>> elements;
  std::vector<Elem> p = identity;
  do {
    if (kind == GroupKind::sym || parity(p) == 0) elements.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::vector<Elem>> gens;
  if (kind == GroupKind::sym) {
    if (d >= 2) {
      std::vector<Elem> t = identity, c(deg);
      std::swap(t[0], t[1]);
      for (std::uint32_t i = 0; i < deg; ++i) c[i] = Elem((i + 1) % deg);
      gens = {t, c};
    } else {
      gens = {identity};
    }
  } else {
    if (d >= 3) {
      std::vector<Elem> three = identity;
      three[0] = 1; three[1] = 2; three[2] = 0;
      gens.push_back(three);
      if (d >= 4) {
        std::vector<Elem> c = identity;
        if (d % 2 == 1) {
          for (std::uint32_t i = 0; i < deg; ++i) c[i] = Elem((i + 1) % deg);
        } else {
          for (std::uint32_t i = 1; i < deg; ++i) c[i] = Elem(i == deg - 1 ? 1 : i + 1);
        }
        gens.push_back(c);
      }
    } else {
      gens = {identity};
    }
  }
  std::string label = (kind == GroupKind::sym ? "S" : "A") + std::to_string(d);
  return build_perm_group(std::move(elements), gens, std::move(label), canonical, true);
}

FiniteGroup build_bgroup(const std::string& canonical) {
  const std::uint32_t n = 4096;
  std::vector<Elem> mul(std::size_t(n) * n);
  for (std::uint32_t e1 = 0; e1 < n; ++e1) {
    const BTriple t1 = bgroup_decode(Elem(e1));
    for (std::uint32_t e2 = 0; e2 < n; ++e2)
      mul[std::size_t(e1) * n + e2] = bgroup_index(bgroup_multiply(t1, bgroup_decode(Elem(e2))));
  }
  std::vector<std::string> names;
  names.reserve(n);
  for (std::uint32_t e = 0; e < n; ++e) {
    const BTriple t = bgroup_decode(Elem(e));
    names.push_back("(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," +
                    std::to_string(t.c) + ")");
  }
  return finish("bgroup", canonical, n, std::move(mul),
                {bgroup_index({1, 0, 0}), bgroup_index({0, 1, 0}), bgroup_index({0, 0, 1})},
                std::move(names));
}

}  // namespace

BTriple bgroup_multiply(BTriple l, BTriple r) {
  // x^a y^b z^c with z central and y^b x^a = x^a y^b z^-8ab.
  const std::uint32_t a = (l.a + r.a) % 8;
  const std::uint32_t b = (l.b + r.b) % 8;
  const std::uint32_t c = (l.c + r.c + 64 * 8 - ((8 * r.a * l.b) % 64)) % 64;
  return {a, b, c};
}

BTriple bgroup_inverse(BTriple t) {
  const std::uint32_t a = (8 - t.a) % 8;
  const std::uint32_t b = (8 - t.b) % 8;
  const std::uint32_t c = (64 - (t.c + 8 * t.a * t.b) % 64) % 64;
  return {a, b, c};
}

Elem bgroup_index(BTriple t) { return Elem(t.a * 512 + t.b * 64 + t.c); }

BTriple bgroup_decode(Elem e) {
  return {std::uint32_t(e) / 512, (std::uint32_t(e) / 64) % 8, std::uint32_t(e) % 64};
}

GroupSpec parse_group_spec(const std::string& text) {
  Cursor c{text};
  c.skip_ws();
  const std::size_t name_pos = c.pos;
  std::string name;
  while (c.pos < text.size() &&
         (islower(std::uint8_t(text[c.pos])) || isdigit(std::uint8_t(text[c.pos]))))
    name += text[c.pos++];
  if (name.empty()) throw ParseError("expected group kind", c.pos);
  GroupSpec spec;
  spec.kind = kind_of(name, name_pos);

  bool has_args = false;
  if (!c.eof()) {
    if (c.peek() != ':') throw ParseError("expected ':' or end of spec", c.pos);
    ++c.pos;
    has_args = true;
  }

  switch (spec.kind) {
    case GroupKind::quaternion:
    case GroupKind::bgroup:
      if (has_args) throw ParseError(name + " takes no parameters", c.pos);
      spec.canonical = name;
      return spec;

    case GroupKind::perm: {
      if (!has_args) throw ParseError("perm needs at least one generator", c.pos);
      while (true) {
        std::vector<std::vector<std::uint16_t>> cycles;
        if (c.peek() != '(') throw ParseError("expected '('", c.pos);
        std::vector<std::uint8_t> seen(1025, 0);
        while (c.peek() == '(') {
          ++c.pos;
          std::vector<std::uint16_t> cycle;
          while (c.peek() != ')') {
            const std::size_t at = c.pos;
            const std::uint32_t pt = c.number("point");
            if (pt == 0) throw ParseError("points are 1-based", at);
            if (pt > 1024) throw ParseError("point exceeds degree cap 1024", at);
            if (seen[pt]) throw ParseError("point " + std::to_string(pt) + " repeated", at);
            seen[pt] = 1;
            cycle.push_back(std::uint16_t(pt - 1));
          }
          ++c.pos;  // ')'
          if (cycle.empty()) throw ParseError("empty cycle", c.pos - 1);
          cycles.push_back(std::move(cycle));
        }
        spec.perm_gens.push_back(std::move(cycles));
        if (c.eof()) break;
        if (c.peek() != ',') throw ParseError("expected ',' or end of spec", c.pos);
        ++c.pos;
      }
      break;
    }

    default: {
      if (!has_args) throw ParseError(name + " needs a parameter", c.pos);
      while (true) {
        spec.params.push_back(c.number("parameter"));
        if (c.eof()) break;
        if (c.peek() != ',') throw ParseError("expected ',' or end of spec", c.pos);
        ++c.pos;
      }
      break;
    }
  }

  // Per-kind parameter validation, with positions pointing at the args.
  const std::size_t args_pos = text.find(':') == std::string::npos ? text.size() : text.find(':') + 1;
  switch (spec.kind) {
    case GroupKind::cyclic:
      if (spec.params.size() != 1) throw ParseError("cyclic takes one parameter", args_pos);
      if (spec.params[0] == 0) throw ParseError("cyclic parameter must be positive", args_pos);
      spec.canonical = "cyclic:" + std::to_string(spec.params[0]);
      break;
    case GroupKind::abelian: {
      if (spec.params.empty()) throw ParseError("abelian needs parameters", args_pos);
      for (std::uint32_t v : spec.params)
        if (v == 0) throw ParseError("abelian parameters must be positive", args_pos);
      spec.params = invariant_factors(spec.params);
      spec.canonical = "abelian:" + join_params(spec.params);
      break;
    }
    case GroupKind::dihedral:
      if (spec.params.size() != 1) throw ParseError("dihedral takes one parameter", args_pos);
      if (spec.params[0] < 2) throw ParseError("dihedral parameter must be at least 2", args_pos);
      spec.canonical = "dihedral:" + std::to_string(spec.params[0]);
      break;
    case GroupKind::sym:
    case GroupKind::alt:
      if (spec.params.size() != 1)
        throw ParseError(std::string(spec.kind == GroupKind::sym ? "sym" : "alt") +
                             " takes one parameter",
                         args_pos);
      if (spec.params[0] == 0) throw ParseError("degree must be positive", args_pos);
      spec.canonical = (spec.kind == GroupKind::sym ? "sym:" : "alt:") +
                       std::to_string(spec.params[0]);
      break;
    case GroupKind::psl2: {
      if (spec.params.size() != 1) throw ParseError("psl2 takes one parameter", args_pos);
      std::uint32_t p = 0, k = 0;
      if (!GaloisField::prime_power(spec.params[0], p, k))
        throw ParseError("psl2 parameter must be a prime power", args_pos);
      spec.canonical = "psl2:" + std::to_string(spec.params[0]);
      break;
    }
    case GroupKind::perm: {
      // Canonical cycles: rotate smallest point first, drop fixed points,
      // sort cycles, drop identity generators.
      std::string canon;
      for (auto& gen : spec.perm_gens) {
        std::vector<std::vector<std::uint16_t>> cycles;
        for (auto& cyc : gen) {
          if (cyc.size() < 2) continue;
          auto rot = cyc;
          auto mn = std::min_element(rot.begin(), rot.end());
          std::rotate(rot.begin(), mn, rot.end());
          cycles.push_back(std::move(rot));
        }
        std::sort(cycles.begin(), cycles.end());
        if (cycles.empty()) continue;  // identity generator adds nothing
        if (!canon.empty()) canon += ',';
        for (const auto& cyc : cycles) {
          canon += '(';
          for (std::size_t i = 0; i < cyc.size(); ++i) {
            if (i) canon += ' ';
            canon += std::to_string(cyc[i] + 1);
          }
          canon += ')';
        }
      }
      if (canon.empty()) canon = "(1)";
      spec.canonical = "perm:" + canon;
      break;
    }
    default:
      break;
  }
  return spec;
}

FiniteGroup build_psl2(std::uint32_t q) {
  std::uint32_t p = 0, k = 0;
  if (!GaloisField::prime_power(q, p, k))
    throw ArgumentError("psl2 parameter must be a prime power");
  if (q < 3 || (p == 2 && q > 16))
    throw ArgumentError("psl2 supports odd q >= 3 and q in {4, 8, 16}");
  const std::uint64_t order = std::uint64_t(q) * (q - 1) * (q + 1) / (p == 2 ? 1 : 2);
  check_table_budget(order);

  const GaloisField f(p, k);
  const std::uint32_t npts = q + 1;

  // Mobius action of [[a,b],[c,d]]: point 0 is infinity, 1+x is x.
  auto act = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d,
                 std::vector<Elem>& perm) {
    perm[0] = c == 0 ? 0 : Elem(1 + f.mul(a, f.inv(c)));
    for (std::uint32_t x = 0; x < q; ++x) {
      const std::uint32_t den = f.add(f.mul(c, x), d);
      perm[1 + x] = den == 0 ? 0 : Elem(1 + f.mul(f.add(f.mul(a, x), b), f.inv(den)));
    }
  };

  std::vector<std::vector<Elem>> elements;
  elements.reserve(std::size_t(order) * 2);
  std::vector<Elem> perm(npts);
  for (std::uint32_t a = 0; a < q; ++a) {
    if (a == 0) {
      for (std::uint32_t b = 1; b < q; ++b) {
        const std::uint32_t cc = f.neg(f.inv(b));
        for (std::uint32_t d = 0; d < q; ++d) {
          act(0, b, cc, d, perm);
          elements.push_back(perm);
        }
      }
    } else {
      const std::uint32_t ai = f.inv(a);
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t cc = 0; cc < q; ++cc) {
          const std::uint32_t d = f.mul(f.add(1, f.mul(b, cc)), ai);
          act(a, b, cc, d, perm);
          elements.push_back(perm);
        }
    }
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.size() != order) throw Error("projective line image has unexpected size");
  const std::uint32_t n = std::uint32_t(order);

  // The action is sharply 3-transitive inside PGL, so images of the first
  // three points identify an element; use that for constant-time lookup.
  std::vector<Elem> by3(std::size_t(npts) * npts * npts, 0xFFFF);
  auto key3 = [npts](Elem a, Elem b, Elem c) {
    return (std::size_t(a) * npts + b) * npts + c;
  };
  for (std::uint32_t i = 0; i < n; ++i)
    by3[key3(elements[i][0], elements[i][1], elements[i][2])] = Elem(i);

  std::vector<Elem> mul(std::size_t(n) * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& pa = elements[i];
    for (std::uint32_t j = 0; j < n; ++j) {
      const auto& pb = elements[j];
      const Elem r = by3[key3(pa[pb[0]], pa[pb[1]], pa[pb[2]])];
      if (r == 0xFFFF) throw Error("composition fell outside the enumerated set");
      mul[std::size_t(i) * n + j] = r;
    }
  }

  // Generators: unipotents over a field basis plus the inversion.
  std::vector<std::vector<Elem>> gen_perms;
  std::uint32_t ge = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    act(1, ge, 0, 1, perm);
    gen_perms.push_back(perm);
    ge *= p;  // encoding of x^(i+1)
  }
  act(0, 1, f.neg(1), 0, perm);
  gen_perms.push_back(perm);

  std::vector<Elem> gens;
  for (const auto& gp : gen_perms) {
    const auto it = std::lower_bound(elements.begin(), elements.end(), gp);
    if (it == elements.end() || *it != gp) throw Error("generator missing from element set");
    const Elem idx = Elem(it - elements.begin());
    if (std::find(gens.begin(), gens.end(), idx) == gens.end()) gens.push_back(idx);
  }

  std::vector<std::string> names;
  if (n <= 4096) {
    names.reserve(n);
    auto label_pt = [](Elem pt) { return pt == 0 ? std::string("inf") : std::to_string(pt - 1); };
    for (const auto& e : elements) names.push_back(cycle_name(e, label_pt));
  }
  return finish("PSL(2," + std::to_string(q) + ")", "psl2:" + std::to_string(q), n,
                std::move(mul), std::move(gens), std::move(names));
}

FiniteGroup build_group(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::cyclic:
      return build_cyclic(spec.params[0], spec.canonical);
    case GroupKind::abelian:
      if (spec.params.size() == 1 && spec.params[0] == 1)
        return build_cyclic(1, spec.canonical);
      return build_abelian(spec.params, spec.canonical);
    case GroupKind::dihedral:
      return build_dihedral(spec.params[0], spec.canonical);
    case GroupKind::quaternion:
      return build_quaternion(spec.canonical);
    case GroupKind::sym:
    case GroupKind::alt:
      return build_sym_or_alt(spec.kind, spec.params[0], spec.canonical);
    case GroupKind::psl2:
      return build_psl2(spec.params[0]);
    case GroupKind::bgroup:
      return build_bgroup(spec.canonical);
    case GroupKind::perm: {
      std::uint32_t deg = 1;
      for (const auto& gen : spec.perm_gens)
        for (const auto& cyc : gen)
          for (std::uint16_t pt : cyc) deg = std::max(deg, std::uint32_t(pt) + 1);
      std::vector<std::vector<Elem>> gen_perms;
      for (const auto& gen : spec.perm_gens) {
        std::vector<Elem> perm(deg);
        std::iota(perm.begin(), perm.end(), 0);
        for (const auto& cyc : gen)
          for (std::size_t i = 0; i < cyc.size(); ++i)
            perm[cyc[i]] = Elem(cyc[(i + 1) % cyc.size()]);
        gen_perms.push_back(std::move(perm));
      }
      // Closure by composition, breadth first from the identity.
      std::vector<std::vector<Elem>> elements;
      std::vector<Elem> identity(deg);
      std::iota(identity.begin(), identity.end(), 0);
      std::vector<std::vector<Elem>> queue = {identity};
      std::unordered_map<std::string, std::uint8_t> seen;
      auto key = [deg](const std::vector<Elem>& p) {
        return std::string(reinterpret_cast<const char*>(p.data()), deg * sizeof(Elem));
      };
      seen.emplace(key(identity), 1);
      std::vector<Elem> comp(deg);
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto cur = queue[qi];
        elements.push_back(cur);
        for (const auto& gp : gen_perms) {
          for (std::uint32_t x = 0; x < deg; ++x) comp[x] = cur[gp[x]];
          if (seen.emplace(key(comp), 1).second) {
            if (queue.size() >= kMaxGroupOrder)
              throw CapacityError("permutation closure exceeds order cap " +
                                  std::to_string(kMaxGroupOrder));
            queue.push_back(comp);
          }
        }
      }
      return build_perm_group(std::move(elements), gen_perms,
                              spec.canonical, spec.canonical, true);
    }
  }
  throw ArgumentError("unhandled group kind");
}

FiniteGroup build_group(const std::string& text) { return build_group(parse_group_spec(text)); }

}  // namespace nielsen
