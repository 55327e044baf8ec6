// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact;
// the only tolerances are the wall-clock limits below.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "muaec/aec/audit.hpp"
#include "muaec/aec/embedding_system.hpp"
#include "muaec/catalog/catalog.hpp"
#include "muaec/core/error.hpp"
#include "muaec/core/isomorphism.hpp"
#include "muaec/galois/types.hpp"
#include "muaec/harness/corpus_io.hpp"
#include "muaec/harness/suite.hpp"
#include "muaec/isolation/isolation.hpp"
#include "muaec/morley/chain.hpp"
#include "muaec/morley/morleyize.hpp"
#include "muaec/shortness/gluing.hpp"

namespace muaec {
namespace {

constexpr double kIntersectionSeconds = 120;
constexpr double kClosureSeconds = 300;
constexpr double kShortnessSeconds = 600;
constexpr std::size_t kClosureMaxSize = 7;
constexpr std::size_t kTypeMaxSize = 5;
constexpr std::size_t kTypeMaxTuple = 2;
constexpr std::size_t kShortMaxSize = 5;
constexpr std::size_t kShortMaxTuple = 3;
constexpr std::size_t kIsolationMaxBase = 6;
constexpr std::size_t kIsolationMaxTuple = 2;
constexpr std::size_t kMorleyMaxSize = 4;
constexpr std::size_t kMorleyArity = 2;
constexpr std::size_t kChainDepth = 3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << s << "s";
  return out.str();
}

ElementSet set_of(std::span<const Element> xs) {
  ElementSet s;
  for (Element x : xs) s.insert(x);
  return s;
}

ElementSet set_from_bits(std::uint64_t bits) {
  ElementSet s;
  for (Element i = 0; bits; ++i, bits >>= 1) {
    if (bits & 1) s.insert(i);
  }
  return s;
}

std::vector<Tuple> tuples_of_length(std::span<const Element> pool, std::size_t len) {
  std::vector<Tuple> out;
  if (pool.empty()) return out;
  Tuple idx(len, 0);
  while (true) {
    Tuple t;
    for (std::size_t i : idx) t.push_back(pool[i]);
    out.push_back(std::move(t));
    std::size_t pos = len;
    while (pos > 0 && ++idx[pos - 1] == pool.size()) idx[--pos] = 0;
    if (pos == 0) return out;
  }
}

std::vector<Tuple> tuples_of_length(std::size_t n, std::size_t len) {
  std::vector<Element> pool(n);
  for (Element i = 0; i < n; ++i) pool[i] = i;
  return tuples_of_length(pool, len);
}

std::vector<CatalogEntry> positive_entries() {
  std::vector<CatalogEntry> out;
  for (auto& e : register_builtin_catalog()) {
    if (!e.negative_control()) out.push_back(std::move(e));
  }
  return out;
}

std::vector<CatalogEntry> negative_controls() {
  std::vector<CatalogEntry> out;
  for (auto& e : full_catalog()) {
    if (e.negative_control()) out.push_back(std::move(e));
  }
  return out;
}

AuditConfig exhaustive_config(std::size_t bound) {
  AuditConfig c;
  c.exhaustive_bound = bound;
  return c;
}

Outcome intersections() {
  Stopwatch clock;
  std::ostringstream d;
  bool ok = true;
  for (const auto& e : positive_entries()) {
    const auto corpus = e.exhaustive(e.exhaustive_bound);
    const auto r = audit_intersections(*e.cls, corpus, exhaustive_config(e.exhaustive_bound));
    const bool needs_four = e.name() == "CG" || e.name() == "EQ3" || e.name() == "US1";
    ok &= r.passed() && (!needs_four || e.exhaustive_bound >= 4);
    d << e.name() << " " << r.instances << "/" << r.violations.size() << " ";
  }
  std::size_t controls = 0;
  for (const auto& e : negative_controls()) {
    const auto corpus = e.exhaustive(e.exhaustive_bound);
    const auto config = exhaustive_config(e.exhaustive_bound);
    const auto r = e.designated_failure == "transport"
                       ? audit_transport(*e.cls, corpus, config)
                       : audit_intersections(*e.cls, corpus, config);
    ++controls;
    if (r.violations.empty()) {
      ok = false;
      d << e.name() << " did not fail; ";
      continue;
    }
    const Violation& w = r.violations.front();
    d << e.name() << " fails " << e.designated_failure << " at N#" << w.structure << " A "
      << w.subset.to_string() << "; ";
  }
  ok &= controls == 2;
  const double s = clock.seconds();
  ok &= s <= kIntersectionSeconds;
  d << "instances/violations, " << fmt_seconds(s);
  return {ok, d.str()};
}

Outcome closure_oracle() {
  Stopwatch clock;
  std::ostringstream d;
  std::size_t checked = 0, mismatches = 0;
  for (const auto& e : full_catalog()) {
    if (!e.cls->fast_closure) continue;
    std::size_t local = 0;
    for (const auto& n : e.exhaustive(kClosureMaxSize)) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n.size()); ++bits) {
        const ElementSet a = set_from_bits(bits);
        ++local;
        if (e.cls->fast_closure(n, a) != generic_closure(*e.cls, n, a).set) ++mismatches;
      }
    }
    checked += local;
    d << e.name() << " " << local << " ";
  }
  const double s = clock.seconds();
  d << "subsets, " << mismatches << " mismatches, " << fmt_seconds(s);
  return {mismatches == 0 && checked > 0 && s <= kClosureSeconds, d.str()};
}

struct Located {
  std::size_t structure;
  Tuple tuple;
  std::string code;
};

Outcome type_machinery() {
  std::size_t pairs = 0, partition_checks = 0, orbit_checks = 0, bad = 0;
  std::ostringstream first_bad;
  auto report = [&](const std::string& what) {
    if (bad++ == 0) first_bad << "; first discrepancy: " << what;
  };
  for (const auto& e : positive_entries()) {
    const AecClass& k = *e.cls;
    const auto corpus = e.exhaustive(std::min(kTypeMaxSize, e.exhaustive_bound));
    // (A, length) -> every locator with those parameters, across the corpus.
    std::map<std::pair<std::uint64_t, std::size_t>, std::vector<Located>> groups;
    for (std::size_t si = 0; si < corpus.size(); ++si) {
      const FiniteStructure& n = corpus[si];
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n.size()); ++bits) {
        const ElementSet a = set_from_bits(bits);
        for (std::size_t len = 1; len <= kTypeMaxTuple; ++len) {
          std::vector<Located> here;
          for (const Tuple& b : tuples_of_length(n.size(), len)) {
            here.push_back({si, b, canonical_certificate(k, TypeLocator(n, a, b)).code});
          }
          for (std::size_t i = 0; i < here.size(); ++i) {
            for (std::size_t j = i + 1; j < here.size(); ++j) {
              ++pairs;
              const bool direct = type_equal(k, TypeLocator(n, a, here[i].tuple),
                                             TypeLocator(n, a, here[j].tuple));
              if (direct != (here[i].code == here[j].code)) {
                report(e.name() + " N#" + std::to_string(si) + " A " + a.to_string());
              }
            }
          }
          auto& g = groups[{bits, len}];
          g.insert(g.end(), here.begin(), here.end());
        }

        // Realizations against orbits of the pointwise stabilizer of A.
        const ElementSet cl = closure(k, n, a);
        const auto cl_elems = cl.elements();
        for (Element b : cl) {
          const StabilizerOrbit orbit = stabilizer_orbit(k, n, a, b);
          for (std::size_t len = 1; len <= kTypeMaxTuple; ++len) {
            for (const Tuple& t : tuples_of_length(cl_elems, len)) {
              if (t.front() != b) continue;
              ++orbit_checks;
              std::set<Tuple> images;
              for (const PartialMap& g : orbit.group) images.insert(g.apply(t));
              const auto reals =
                  realizations(k, n, a, canonical_certificate(k, TypeLocator(n, a, t)));
              if (std::set<Tuple>(reals.begin(), reals.end()) != images) {
                report(e.name() + " orbit N#" + std::to_string(si) + " A " + a.to_string());
              }
              if (len == 1) {
                ElementSet firsts;
                for (const Tuple& r : reals) firsts.insert(r.front());
                if (firsts != orbit.orbit) report(e.name() + " orbit set");
              }
            }
          }
        }
      }
    }

    // Across structures: build the type_equal partition against representatives
    // and compare it with the certificate partition. Locators whose closures
    // differ in size cannot be type-equal, so they never meet.
    for (auto& [key, locs] : groups) {
      const ElementSet a = set_from_bits(key.first);
      std::map<std::size_t, std::vector<const Located*>> reps;  // by closure size
      for (const Located& x : locs) {
        const FiniteStructure& nx = corpus[x.structure];
        ElementSet ab = a;
        for (Element v : x.tuple) ab.insert(v);
        auto& bucket = reps[closure(k, nx, ab).size()];
        const Located* match = nullptr;
        std::size_t matches = 0;
        for (const Located* r : bucket) {
          ++partition_checks;
          if (type_equal(k, TypeLocator(nx, a, x.tuple),
                         TypeLocator(corpus[r->structure], a, r->tuple))) {
            match = r;
            ++matches;
          }
        }
        if (matches > 1 || (match && match->code != x.code)) {
          report(e.name() + " partition A " + a.to_string());
        }
        if (!match) {
          for (const Located* r : bucket) {
            if (r->code == x.code) report(e.name() + " certificate joins distinct types");
          }
          bucket.push_back(&x);
        }
      }
    }
  }
  std::ostringstream d;
  d << pairs << " within-structure pairs, " << partition_checks << " cross-structure checks, "
    << orbit_checks << " orbit checks, " << bad << " discrepancies" << first_bad.str();
  return {bad == 0 && pairs > 0, d.str()};
}

Outcome eta_hierarchy() {
  auto run = [](const std::string& name, std::size_t eta) {
    const CatalogEntry e = find_catalog_entry(name);
    const auto corpus = e.exhaustive(e.exhaustive_bound);
    return audit_multiuniversal(*e.cls, corpus, eta, exhaustive_config(e.exhaustive_bound));
  };
  const auto us1 = run("US1", 2);
  const auto eq3 = run("EQ3", 3);
  const auto eq3_low = run("EQ3", 2);
  std::ostringstream d;
  d << "US1 eta 2: " << us1.instances << " triples, " << us1.violations.size()
    << " violations; EQ3 eta 3: " << eq3.instances << " triples, " << eq3.violations.size()
    << " violations; EQ3 eta 2: " << eq3_low.violations.size() << " witnesses";
  if (!eq3_low.violations.empty()) {
    const auto& w = eq3_low.violations.front();
    d << " (first: N#" << w.structure << " A " << w.params.to_string() << " b " << w.element
      << " with " << w.count << " realizations)";
  }
  return {us1.passed() && eq3.passed() && !eq3_low.violations.empty() && us1.instances > 0,
          d.str()};
}

// Pointed closure in its own labels. Two inputs with equal pointed closures
// give identical gluing problems, so each is checked once.
struct PointedClosure {
  std::size_t structure;
  Tuple tuple;
  std::size_t closure_size;
  std::vector<std::size_t> row_counts;
};

std::string shape_key(const PointedClosure& p) {
  std::string key = std::to_string(p.closure_size) + "/";
  for (std::size_t c : p.row_counts) key += std::to_string(c) + ",";
  for (std::size_t i = 0; i < p.tuple.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) key += p.tuple[i] == p.tuple[j] ? '=' : '!';
  }
  return key;
}

Outcome shortness() {
  Stopwatch clock;
  std::size_t inputs = 0, pairs = 0, glued = 0, bad = 0;
  std::ostringstream first_bad;
  for (const auto& e : positive_entries()) {
    const AecClass& k = *e.cls;
    const auto corpus = e.exhaustive(std::min(kShortMaxSize, e.exhaustive_bound));
    for (std::size_t len = 1; len <= kShortMaxTuple; ++len) {
      std::map<std::pair<std::string, Tuple>, PointedClosure> distinct;
      for (std::size_t si = 0; si < corpus.size(); ++si) {
        const FiniteStructure& n = corpus[si];
        for (const Tuple& t : tuples_of_length(n.size(), len)) {
          const Induced m = *induced_substructure(n, closure(k, n, set_of(t)));
          Tuple local;
          for (Element v : t) local.push_back(*m.local(v));
          std::vector<std::size_t> rows;
          for (std::size_t r = 0; r < m.structure.relation_count(); ++r) {
            rows.push_back(m.structure.tuples(r).size());
          }
          distinct.try_emplace({emit_corpus(std::span(&m.structure, 1)), local},
                               PointedClosure{si, t, m.structure.size(), rows});
        }
      }
      inputs += distinct.size();
      // An isomorphism preserves closure size, row counts and the equality
      // pattern; glue only returns verified isomorphisms and the restriction
      // check includes the full index set, so pairs of different shape are
      // negative on every route.
      std::map<std::string, std::vector<const PointedClosure*>> shapes;
      for (const auto& [key, p] : distinct) shapes[shape_key(p)].push_back(&p);
      for (const auto& [shape, members] : shapes) {
        for (const PointedClosure* x : members) {
          for (const PointedClosure* y : members) {
            ++pairs;
            GluingProblem p(k, corpus[x->structure], x->tuple, corpus[y->structure], y->tuple);
            const GlueResult g = glue(p);
            const RestrictionVerdict rv = check_finite_restrictions(p, len);
            bool iso = false;
            std::optional<PartialMap> anchor;
            if (p.base_map()) {
              anchor = PartialMap::from_tuples(p.to_m1(x->tuple), p.to_m2(y->tuple));
              iso = !find_isomorphisms(p.m1().structure, p.m2().structure, *anchor, 1).empty();
            }
            bool maps_ok = g.success == !g.maps.empty();
            for (const PartialMap& f : g.maps) {
              std::vector<std::pair<Element, Element>> local;
              for (const auto& [u, v] : f.pairs()) local.emplace_back(*p.m1().local(u), *p.m2().local(v));
              const PartialMap fl(std::move(local));
              maps_ok &= anchor && fl.extends(*anchor) &&
                         is_isomorphism(p.m1().structure, p.m2().structure, fl);
            }
            glued += g.success;
            if (g.success != rv.pass || g.success != iso || !maps_ok) {
              if (bad++ == 0) {
                first_bad << "; first discrepancy: " << e.name() << " N#" << x->structure
                          << " vs N#" << y->structure << " glue " << g.success << " restrictions "
                          << rv.pass << " iso " << iso;
              }
            }
          }
        }
      }
    }
  }
  const double s = clock.seconds();
  std::ostringstream d;
  d << inputs << " distinct pointed closures, " << pairs << " same-shape pairs, " << glued
    << " glued, " << bad << " discrepancies, " << fmt_seconds(s) << first_bad.str();
  return {bad == 0 && pairs > 0 && s <= kShortnessSeconds, d.str()};
}

std::size_t default_corpus_size(const CatalogEntry& e) {
  std::size_t smallest = 0;
  for (const auto& m : e.exhaustive(e.exhaustive_bound)) {
    if (m.size() > 0) {
      smallest = m.size();
      break;
    }
  }
  return std::min(e.exhaustive_bound, std::max<std::size_t>(4, smallest));
}

Outcome isolation() {
  std::size_t instances = 0, isolated = 0;
  std::ostringstream d, first_bad;
  for (const auto& e : positive_entries()) {
    const AecClass& k = *e.cls;
    std::size_t here = 0;
    for (const auto& m : e.exhaustive(default_corpus_size(e))) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m.size()); ++bits) {
        const ElementSet a = set_from_bits(bits);
        if (a.size() > kIsolationMaxBase) continue;
        const auto cl = closure(k, m, a).elements();
        for (std::size_t len = 1; len <= kIsolationMaxTuple; ++len) {
          for (const Tuple& b : tuples_of_length(cl, len)) {
            ++here;
            bool ok = false;
            try {
              const IsolationResult r = find_isolating_base(k, m, a, b);
              ok = r.a1.is_subset_of(a) && isolates(k, m, a, r.a1, b);
            } catch (const Error& err) {
              if (first_bad.str().empty()) first_bad << "; first failure: " << err.what();
            }
            isolated += ok;
          }
        }
      }
    }
    instances += here;
    d << e.name() << " " << here << " ";
  }
  d << "instances, " << isolated << "/" << instances << " isolated" << first_bad.str();
  return {instances > 0 && isolated == instances, d.str()};
}

Outcome morleyization() {
  const CatalogEntry cg = find_catalog_entry("CG");
  const auto corpus = cg.exhaustive(kMorleyMaxSize);
  const Morleyization mz = morleyize(TypeCatalog::build(cg.cls, corpus, kMorleyArity));
  const auto qf = check_qf_equals_galois(*mz.cls, mz.expanded, kMorleyArity);
  const auto mc = check_model_complete(*mz.cls, mz.expanded);

  // Raw class: an endpoint of a 2-edge path and an isolated vertex.
  StructureBuilder p3(cg.cls->vocab, 3);
  p3.add("E", {0, 1}).add("E", {1, 0}).add("E", {1, 2}).add("E", {2, 1});
  const FiniteStructure path = p3.build();
  const FiniteStructure point = StructureBuilder(cg.cls->vocab, 1).build();
  const Tuple b{0};
  const bool raw_qf = qf_type(path, {}, b) == qf_type(point, {}, b);
  const bool raw_galois = type_equal(*cg.cls, TypeLocator(path, {}, b), TypeLocator(point, {}, b));
  const std::vector<FiniteStructure> pair{path, point};
  const auto raw_report = check_qf_equals_galois(*cg.cls, pair, 1);

  std::ostringstream d;
  d << mz.catalog.entries().size() << " symbols; qf/Galois " << qf.pairs << " pairs, "
    << qf.mismatches.size() << " mismatches; model completeness " << mc.pairs << " pairs, "
    << mc.mismatches.size() << " mismatches; raw endpoint vs isolated vertex: qf "
    << (raw_qf ? "equal" : "different") << ", Galois " << (raw_galois ? "equal" : "different")
    << ", " << raw_report.mismatches.size() << " raw mismatches";
  return {qf.passed() && mc.passed() && qf.pairs > 0 && raw_qf && !raw_galois &&
              !raw_report.passed(),
          d.str()};
}

Outcome chain() {
  std::ostringstream d;
  bool ok = true;
  std::size_t built = 0, incompatible = 0;
  for (const ChainScenario& s : builtin_chain_scenarios()) {
    const AecClass& k = *s.cls;
    if (s.expected_violation) {
      ++incompatible;
      try {
        compactness_chain(k, scripted_oracle(s.records), s.depth);
        ok = false;
        d << s.name << ": no error; ";
      } catch (const Error& err) {
        const bool named = err.code() == ErrorCode::kCompletenessViolation &&
                           std::string(err.what()).find(*s.expected_violation) != std::string::npos;
        ok &= named;
        d << s.name << ": " << (named ? "names " + *s.expected_violation : err.what()) << "; ";
      }
      continue;
    }
    ok &= s.depth == kChainDepth;
    const ChainResult r = compactness_chain(k, scripted_oracle(s.records), s.depth);
    check_coherence(r.system);
    std::vector<std::size_t> full(s.depth);
    for (std::size_t i = 0; i < s.depth; ++i) full[i] = i;
    const auto witness = scripted_oracle(s.records)(full);
    const TypeLocator top(r.system.objects.back(), {}, r.tuples.back());
    bool match = false;
    if (witness) {
      const TypeLocator w(witness->structure, {}, witness->tuple);
      const bool by_cert = canonical_certificate(k, top) == canonical_certificate(k, w);
      match = by_cert && type_equal(k, top, w);
    }
    ok &= match && r.system.objects.size() == s.depth;
    ++built;
    d << s.name << ": " << (match ? "certificate matches" : "certificate differs") << "; ";
  }
  ok &= built == 3 && incompatible == 1;
  d << built << " chains to depth " << kChainDepth;
  return {ok, d.str()};
}

Outcome determinism() {
  Stopwatch clock;
  const Report first = run_suite("all", SuiteConfig{});
  const Report second = run_suite("all", SuiteConfig{});
  const std::string a = first.to_yaml(), b = second.to_yaml();
  std::ostringstream d;
  d << first.records.size() << " records, " << a.size() << " bytes, "
    << (a == b ? "identical" : "different") << ", " << first.failures() << " failing records, "
    << fmt_seconds(clock.seconds());
  return {a == b && !a.empty(), d.str()};
}

}  // namespace
}  // namespace muaec

int main() {
  using namespace muaec;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"intersection audit", intersections},
      {"closure oracle equivalence", closure_oracle},
      {"type machinery", type_machinery},
      {"eta hierarchy", eta_hierarchy},
      {"shortness", shortness},
      {"isolation", isolation},
      {"morleyization", morleyization},
      {"compactness chain", chain},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
