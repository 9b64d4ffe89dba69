// Command line front end: describe groups, classify generating vectors,
// test equivalence, run reductions, verify the library's headline results.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nielsen/atlas.hpp"
#include "nielsen/cache.hpp"
#include "nielsen/catalog.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/report.hpp"
#include "nielsen/solvable.hpp"

using json = nlohmann::ordered_json;
using namespace nielsen;

namespace {

struct GlobalOpts {
  int threads = 0;
  std::string format = "text";
  std::string cache_dir;
  double budget_seconds = 0.0;

  ReportFormat fmt() const { return parse_report_format(format); }
  OrbitOptions orbit() const { return OrbitOptions{threads, false}; }
};

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<Elem> parse_entries(const std::string& text) {
  std::vector<Elem> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw ArgumentError("bad vector entry '" + tok + "'");
    }
    if (pos != tok.size() || v > 0xFFFF)
      throw ArgumentError("bad vector entry '" + tok + "'");
    out.push_back(Elem(v));
  }
  if (out.empty()) throw ArgumentError("empty vector");
  return out;
}

std::string vec_text(const GenVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v.entries[i]);
  }
  return s + ")";
}

std::string move_text(const NielsenMove& m) {
  const std::string j = "t" + std::to_string(m.j), k = "t" + std::to_string(m.k);
  const std::string inv = m.sign < 0 ? "^-1" : "";
  switch (m.kind) {
    case MoveKind::right_mul: return j + " <- " + j + " " + k + inv;
    case MoveKind::left_mul: return j + " <- " + k + inv + " " + j;
    case MoveKind::swap: return j + " <-> " + k;
    case MoveKind::invert: return j + " <- " + j + "^-1";
  }
  return "?";
}

const char* kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::right_mul: return "right_mul";
    case MoveKind::left_mul: return "left_mul";
    case MoveKind::swap: return "swap";
    case MoveKind::invert: return "invert";
  }
  return "?";
}

MoveKind kind_from(const std::string& s) {
  if (s == "right_mul") return MoveKind::right_mul;
  if (s == "left_mul") return MoveKind::left_mul;
  if (s == "swap") return MoveKind::swap;
  if (s == "invert") return MoveKind::invert;
  throw ArgumentError("unknown move kind '" + s + "'");
}

json vec_json(const GenVector& v) {
  json a = json::array();
  for (Elem e : v.entries) a.push_back(e);
  return a;
}

json trace_json(const MoveTrace& t) {
  json moves = json::array();
  for (const NielsenMove& m : t.moves) {
    json jm;
    jm["kind"] = kind_name(m.kind);
    jm["j"] = m.j;
    if (m.kind == MoveKind::right_mul || m.kind == MoveKind::left_mul ||
        m.kind == MoveKind::swap)
      jm["k"] = m.k;
    if (m.kind == MoveKind::right_mul || m.kind == MoveKind::left_mul) jm["sign"] = m.sign;
    moves.push_back(std::move(jm));
  }
  return json{{"start", vec_json(t.start)}, {"end", vec_json(t.end)}, {"moves", std::move(moves)}};
}

MoveTrace trace_from_json(const FiniteGroup& g, const json& j) {
  if (!j.is_object() || !j.contains("start") || !j.contains("end") || !j.contains("moves"))
    throw ArgumentError("trace must be an object with start, end and moves");
  auto vec_from = [&](const json& a) {
    if (!a.is_array()) throw ArgumentError("trace vectors must be arrays");
    std::vector<Elem> e;
    for (const json& x : a) {
      if (!x.is_number_unsigned() || x.get<std::uint64_t>() > 0xFFFF)
        throw ArgumentError("trace vector entry out of range");
      e.push_back(Elem(x.get<std::uint64_t>()));
    }
    return make_genvec(g, std::move(e));
  };
  MoveTrace t;
  t.start = vec_from(j["start"]);
  t.end = vec_from(j["end"]);
  for (const json& jm : j["moves"]) {
    if (!jm.is_object() || !jm.contains("kind")) throw ArgumentError("bad move record");
    NielsenMove m;
    m.kind = kind_from(jm["kind"].get<std::string>());
    m.j = std::uint8_t(jm.value("j", 0));
    m.k = std::uint8_t(jm.value("k", 0));
    m.sign = std::int8_t(jm.value("sign", 1));
    t.moves.push_back(m);
  }
  return t;
}

std::filesystem::path cache_root(const GlobalOpts& go) {
  if (!go.cache_dir.empty()) return go.cache_dir;
  if (const char* env = std::getenv("NIELSEN_CACHE_DIR"); env && *env) return env;
  return {};
}

std::filesystem::path cache_path(const GlobalOpts& go, const FiniteGroup& g, std::uint32_t n,
                                 bool weak) {
  const std::filesystem::path root = cache_root(go);
  if (root.empty()) return {};
  std::string name;
  for (char c : g.spec_text())
    name += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
                ? c
                : '_';
  name += "-" + hex16(g.fingerprint()) + "-n" + std::to_string(n) +
          (weak ? "-weak" : "-nielsen") + ".noc";
  return root / name;
}

int run_describe(const GlobalOpts& go, const std::string& spec) {
  const FiniteGroup g = build_group(spec);
  const std::uint32_t m = mu(g, go.threads);
  std::optional<std::uint32_t> l;
  if (g.order() <= kMaxLatticeOrder) l = ell(g);
  const Subgroup z = center(g);
  const ConjugacyClasses cc = conjugacy_classes(g);
  const bool solv = is_solvable(g);

  if (go.fmt() == ReportFormat::json) {
    json out;
    out["group"] = g.label();
    out["spec"] = g.spec_text();
    out["order"] = g.order();
    out["fingerprint"] = hex16(g.fingerprint());
    out["solvable"] = solv;
    out["mu"] = m;
    out["ell"] = l ? json(*l) : json(nullptr);
    out["psi"] = psi(g, m);
    out["center_order"] = z.size;
    out["conjugacy_classes"] = cc.count();
    json gens = json::array();
    for (Elem e : g.default_generators()) gens.push_back(e);
    out["generators"] = std::move(gens);
    if (g.has_element_names() && g.order() <= 128) {
      json names = json::array();
      for (std::uint32_t e = 0; e < g.order(); ++e) names.push_back(g.element_name(Elem(e)));
      out["element_names"] = std::move(names);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (go.fmt() == ReportFormat::csv)
    throw ArgumentError("describe supports the text and json formats");

  std::cout << "group:         " << g.label() << "\n"
            << "spec:          " << g.spec_text() << "\n"
            << "order:         " << g.order() << "\n"
            << "fingerprint:   " << hex16(g.fingerprint()) << "\n"
            << "solvable:      " << (solv ? "yes" : "no") << "\n"
            << "mu:            " << m << "\n";
  if (l)
    std::cout << "ell:           " << *l << "\n";
  else
    std::cout << "ell:           (order above the subgroup-lattice cap)\n";
  std::cout << "psi:           " << psi(g, m) << "  (minimal genus of a free action)\n"
            << "center:        " << z.size << "\n"
            << "conj classes:  " << cc.count() << "\n"
            << "generators:    ";
  const std::vector<Elem>& gens = g.default_generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) std::cout << ", ";
    std::cout << gens[i];
    if (g.has_element_names()) std::cout << " (" << g.element_name(gens[i]) << ")";
  }
  std::cout << "\n";
  if (g.has_element_names() && g.order() <= 128) {
    std::cout << "elements:\n";
    for (std::uint32_t e = 0; e < g.order(); ++e)
      std::cout << "  " << e << "\t" << g.element_name(Elem(e)) << "\n";
  }
  return 0;
}

int run_classify(const GlobalOpts& go, const std::string& spec,
                 std::optional<std::uint32_t> n_opt, std::optional<std::uint64_t> genus_opt,
                 bool weak, bool no_cache) {
  const FiniteGroup g = build_group(spec);
  if (!n_opt && !genus_opt) throw ArgumentError("one of --n or --genus is required");
  const std::uint32_t n = n_opt ? *n_opt : n_for_genus(g, *genus_opt);
  const std::uint64_t genus = genus_for_n(g, n);

  const std::filesystem::path path = no_cache ? std::filesystem::path{}
                                              : cache_path(go, g, n, weak);
  std::optional<OrbitPartition> part;
  bool cached = false;
  if (!path.empty() && std::filesystem::exists(path)) {
    try {
      part = load_partition(path, g, weak);
      cached = true;
    } catch (const CacheError& e) {
      std::cerr << "warning: ignoring cache file " << path.string() << ": " << e.what() << "\n";
    }
  }
  if (!part) {
    part = weak ? weak_classify(g, n, go.orbit()) : classify(g, n, go.orbit());
    if (!path.empty()) {
      try {
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        save_partition(g, *part, path);
      } catch (const std::exception& e) {
        std::cerr << "warning: could not write cache file: " << e.what() << "\n";
      }
    }
  }

  const ReportFormat fmt = go.fmt();
  if (fmt == ReportFormat::json) {
    json out;
    out["group"] = g.label();
    out["spec"] = g.spec_text();
    out["fingerprint"] = hex16(g.fingerprint());
    out["n"] = n;
    out["genus"] = genus;
    out["weak"] = weak;
    out["cached"] = cached;
    out["total_generating"] = part->total_generating;
    json classes = json::array();
    for (const OrbitClass& c : part->classes) {
      json jc;
      jc["representative"] = c.representative;
      jc["entries"] = vec_json(unpack_genvec(g, n, c.representative));
      jc["size"] = c.size;
      classes.push_back(std::move(jc));
    }
    out["classes"] = std::move(classes);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (fmt == ReportFormat::csv) {
    std::cout << "class,representative,size,entries\n";
    for (std::size_t i = 0; i < part->classes.size(); ++i) {
      const OrbitClass& c = part->classes[i];
      const GenVector v = unpack_genvec(g, n, c.representative);
      std::string entries;
      for (std::size_t j = 0; j < v.entries.size(); ++j) {
        if (j) entries += ' ';
        entries += std::to_string(v.entries[j]);
      }
      std::cout << i << ',' << c.representative << ',' << c.size << ",\"" << entries << "\"\n";
    }
    return 0;
  }

  std::cout << "group:    " << g.label() << "\n"
            << "n:        " << n << "   (genus " << genus << ")\n"
            << "mode:     " << (weak ? "weak equivalence" : "Nielsen equivalence") << "\n"
            << "vectors:  " << part->total_generating << " generating\n"
            << "classes:  " << part->classes.size() << (cached ? "   (from cache)" : "") << "\n";
  if (part->classes.empty())
    std::cout << "no generating vectors of this length; the group needs at least mu = "
              << mu(g, go.threads) << "\n";
  const std::size_t limit = 128;
  for (std::size_t i = 0; i < part->classes.size() && i < limit; ++i) {
    const OrbitClass& c = part->classes[i];
    std::cout << "  class " << i << ": rep " << vec_text(unpack_genvec(g, n, c.representative))
              << "  size " << c.size << "\n";
  }
  if (part->classes.size() > limit)
    std::cout << "  ... and " << part->classes.size() - limit << " more\n";
  return 0;
}

int run_equivalent(const GlobalOpts& go, const std::string& spec, const std::string& vs,
                   const std::string& ws, bool want_trace) {
  const FiniteGroup g = build_group(spec);
  const GenVector v = make_genvec(g, parse_entries(vs));
  const GenVector w = make_genvec(g, parse_entries(ws));
  const EquivalenceResult r = are_equivalent(g, v, w, want_trace, go.orbit());

  if (go.fmt() == ReportFormat::json) {
    json out;
    out["group"] = g.label();
    out["v"] = vec_json(v);
    out["w"] = vec_json(w);
    out["equivalent"] = r.equivalent;
    out["trace"] = r.trace ? trace_json(*r.trace) : json(nullptr);
    std::cout << out.dump(2) << "\n";
  } else {
    if (r.equivalent) {
      std::cout << vec_text(v) << " and " << vec_text(w) << " are Nielsen equivalent";
      if (r.trace) std::cout << " (" << r.trace->moves.size() << " moves)";
      std::cout << "\n";
      if (r.trace)
        for (const NielsenMove& m : r.trace->moves) std::cout << "  " << move_text(m) << "\n";
    } else {
      std::cout << vec_text(v) << " and " << vec_text(w) << " are not Nielsen equivalent\n";
    }
  }
  return r.equivalent ? 0 : 1;
}

int run_reduce(const GlobalOpts& go, const std::string& spec, const std::string& vs, bool tower,
               bool show_moves) {
  const FiniteGroup g = build_group(spec);
  const GenVector v = make_genvec(g, parse_entries(vs));
  ReduceResult r;
  if (tower) {
    r = tower_reduce(g, v, cyclic_tower(g));
  } else {
    auto [m, s_entries] = minimal_generating_vector(g, go.threads);
    (void)m;
    r = supraminimal_reduce(g, v, make_genvec(g, std::move(s_entries)));
  }
  const bool ok = verify_trace(g, r.trace);

  if (go.fmt() == ReportFormat::json) {
    json out;
    out["group"] = g.label();
    out["input"] = vec_json(v);
    out["reduced"] = vec_json(r.reduced);
    out["moves"] = r.trace.moves.size();
    out["verified"] = ok;
    out["trace"] = trace_json(r.trace);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "input:    " << vec_text(v) << "\n"
              << "reduced:  " << vec_text(r.reduced) << "\n"
              << "moves:    " << r.trace.moves.size() << (ok ? "   (replay verified)" : "")
              << "\n";
    if (show_moves)
      for (const NielsenMove& m : r.trace.moves) std::cout << "  " << move_text(m) << "\n";
  }
  return ok ? 0 : 1;
}

int run_verify(const GlobalOpts& go, const std::string& suite, const std::string& records_path) {
  ClaimsOptions co;
  co.suite = suite == "fast" ? ClaimSuite::fast : ClaimSuite::full;
  co.threads = go.threads;
  co.budget_seconds = go.budget_seconds;
  std::cerr << "running the " << suite << " verification suite...\n";
  const ClaimsReport report = claims_report(co);
  write_claims(std::cout, report, go.fmt());
  if (!records_path.empty()) {
    std::ofstream out(records_path);
    if (!out) throw ArgumentError("cannot open " + records_path + " for writing");
    write_genus_records(out, report.records, go.fmt());
  }
  return report.all_pass ? 0 : 1;
}

int run_stabilize_map(const GlobalOpts& go, const std::string& spec, std::uint32_t n) {
  const FiniteGroup g = build_group(spec);
  const StabilizationMap map = stabilization_map(g, n, go.orbit());

  if (go.fmt() == ReportFormat::json) {
    json out;
    out["group"] = g.label();
    out["n"] = n;
    json from = json::array(), to = json::array(), cmap = json::array();
    for (const OrbitClass& c : map.from.classes)
      from.push_back(json{{"representative", c.representative},
                          {"entries", vec_json(unpack_genvec(g, n, c.representative))},
                          {"size", c.size}});
    for (const OrbitClass& c : map.to.classes)
      to.push_back(json{{"representative", c.representative},
                        {"entries", vec_json(unpack_genvec(g, n + 1, c.representative))},
                        {"size", c.size}});
    for (std::uint32_t id : map.class_map) cmap.push_back(id);
    out["from"] = std::move(from);
    out["to"] = std::move(to);
    out["map"] = std::move(cmap);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (go.fmt() == ReportFormat::csv) {
    std::cout << "class,representative,stabilized_class,stabilized_representative\n";
    for (std::size_t i = 0; i < map.from.classes.size(); ++i)
      std::cout << i << ',' << map.from.classes[i].representative << ',' << map.class_map[i]
                << ',' << map.to.classes[map.class_map[i]].representative << "\n";
    return 0;
  }

  std::cout << "group: " << g.label() << "   n: " << n << " -> " << n + 1 << "\n"
            << "classes: " << map.from.classes.size() << " -> " << map.to.classes.size() << "\n";
  for (std::size_t i = 0; i < map.from.classes.size(); ++i) {
    const std::uint32_t t = map.class_map[i];
    std::cout << "  class " << i << " rep "
              << vec_text(unpack_genvec(g, n, map.from.classes[i].representative))
              << "  ->  class " << t << " rep "
              << vec_text(unpack_genvec(g, n + 1, map.to.classes[t].representative)) << "\n";
  }
  if (map.to.classes.size() == 1 && map.from.classes.size() > 1)
    std::cout << "all classes merge after one stabilization\n";
  return 0;
}

int run_replay(const std::string& spec, const std::string& file) {
  const FiniteGroup g = build_group(spec);
  json doc;
  try {
    if (file == "-") {
      doc = json::parse(std::cin);
    } else {
      std::ifstream in(file);
      if (!in) throw ArgumentError("cannot open " + file);
      doc = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad trace file: ") + e.what());
  }
  if (doc.is_object() && doc.contains("trace")) doc = doc["trace"];
  const MoveTrace t = trace_from_json(g, doc);
  bool ok = false;
  try {
    ok = verify_trace(g, t);
  } catch (const Error& e) {
    std::cerr << "replay error: " << e.what() << "\n";
  }
  std::cout << (ok ? "trace valid" : "trace INVALID") << " (" << t.moves.size() << " moves, "
            << vec_text(t.start) << " -> " << vec_text(t.end) << ")\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nielsen classes of generating vectors of finite groups, and the free\n"
               "handlebody actions they classify"};
  app.require_subcommand(1);
  // Lets the global options (--format, --threads, ...) appear after the
  // subcommand name too.
  app.fallthrough();

  GlobalOpts go;
  app.add_option("-t,--threads", go.threads, "Worker threads (0 = all hardware threads)")
      ->capture_default_str();
  app.add_option("-f,--format", go.format, "Output format: text, json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--cache-dir", go.cache_dir,
                 "Directory for orbit cache files (default $NIELSEN_CACHE_DIR)");
  app.add_option("--budget-seconds", go.budget_seconds,
                 "Soft time budget for verify; later claims are skipped once spent");

  int rc = 0;

  auto* desc = app.add_subcommand("describe", "Group facts: order, mu, ell, psi, center");
  std::string desc_spec;
  desc->add_option("-g,--group", desc_spec, "Group spec, e.g. dihedral:5 or abelian:4,2")
      ->required();
  desc->callback([&] { rc = run_describe(go, desc_spec); });

  auto* cls = app.add_subcommand("classify", "Partition generating n-vectors into classes");
  std::string cls_spec;
  std::uint32_t cls_n = 0;
  std::uint64_t cls_genus = 0;
  bool cls_weak = false, cls_nocache = false;
  cls->add_option("-g,--group", cls_spec, "Group spec")->required();
  auto* opt_n = cls->add_option("-n,--n", cls_n, "Vector length");
  auto* opt_genus = cls->add_option("--genus", cls_genus, "Handlebody genus, resolved to n");
  opt_n->excludes(opt_genus);
  opt_genus->excludes(opt_n);
  cls->add_flag("--weak", cls_weak, "Also merge classes linked by an automorphism");
  cls->add_flag("--no-cache", cls_nocache, "Skip the orbit cache");
  cls->callback([&] {
    rc = run_classify(go, cls_spec,
                      opt_n->count() ? std::optional<std::uint32_t>(cls_n) : std::nullopt,
                      opt_genus->count() ? std::optional<std::uint64_t>(cls_genus) : std::nullopt,
                      cls_weak, cls_nocache);
  });

  auto* eq = app.add_subcommand("equivalent", "Are two generating vectors Nielsen equivalent?");
  std::string eq_spec, eq_v, eq_w;
  bool eq_trace = false;
  eq->add_option("-g,--group", eq_spec, "Group spec")->required();
  eq->add_option("--v", eq_v, "First vector, comma separated, e.g. 1,5")->required();
  eq->add_option("--w", eq_w, "Second vector")->required();
  eq->add_flag("--trace", eq_trace, "Also return an explicit move path");
  eq->callback([&] { rc = run_equivalent(go, eq_spec, eq_v, eq_w, eq_trace); });

  auto* red = app.add_subcommand("reduce", "Normalize a generating vector by moves");
  std::string red_spec, red_v;
  bool red_tower = false, red_supra = false, red_show = false;
  red->add_option("-g,--group", red_spec, "Group spec")->required();
  red->add_option("--v", red_v, "Vector to reduce")->required();
  auto* f_tower = red->add_flag("--tower", red_tower,
                                "Euclidean reduction along a cyclic tower (solvable groups)");
  auto* f_supra = red->add_flag("--supraminimal", red_supra,
                                "Collapse a vector longer than ell(G) onto (s, 1, ..., 1)");
  f_tower->excludes(f_supra);
  f_supra->excludes(f_tower);
  red->add_flag("--show-moves", red_show, "Print the move list");
  red->callback([&] {
    if (!red_tower && !red_supra)
      throw ArgumentError("pick one of --tower or --supraminimal");
    rc = run_reduce(go, red_spec, red_v, red_tower, red_show);
  });

  auto* ver = app.add_subcommand("verify", "Re-run every headline classification result");
  std::string ver_suite = "full", ver_records;
  ver->add_option("--suite", ver_suite, "full or fast")
      ->capture_default_str()
      ->check(CLI::IsMember({"full", "fast"}));
  ver->add_option("--records", ver_records, "Also write genus records to this file");
  ver->callback([&] { rc = run_verify(go, ver_suite, ver_records); });

  auto* stab = app.add_subcommand("stabilize-map",
                                  "Where each class at n lands after one stabilization");
  std::string stab_spec;
  std::uint32_t stab_n = 0;
  stab->add_option("-g,--group", stab_spec, "Group spec")->required();
  stab->add_option("-n,--n", stab_n, "Vector length")->required();
  stab->callback([&] { rc = run_stabilize_map(go, stab_spec, stab_n); });

  auto* rep = app.add_subcommand("replay", "Validate a recorded move trace");
  rep->group("");  // internal; not shown in help
  std::string rep_spec, rep_file = "-";
  rep->add_option("-g,--group", rep_spec, "Group spec")->required();
  rep->add_option("--file", rep_file, "Trace JSON file, - for stdin")->capture_default_str();
  rep->callback([&] { rc = run_replay(rep_spec, rep_file); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
