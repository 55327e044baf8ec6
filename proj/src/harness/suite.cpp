#include "muaec/harness/suite.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include "muaec/catalog/catalog.hpp"
#include "muaec/core/isomorphism.hpp"
#include "muaec/core/parallel.hpp"
#include "muaec/galois/types.hpp"
#include "muaec/harness/corpus_io.hpp"
#include "muaec/isolation/isolation.hpp"
#include "muaec/morley/morleyize.hpp"
#include "muaec/shortness/gluing.hpp"

namespace muaec {

namespace {

constexpr std::size_t kMaxRecordsPerCheck = 20;
constexpr std::size_t kMaxTupleLength = 2;
// Morleyized corpora grow fast with size; the suite stops at 3.
constexpr std::size_t kMorleySizeCap = 3;
constexpr std::size_t kMaxIsolationBase = 6;
constexpr std::size_t kNoCap = ~std::size_t{0};

const std::map<std::string, std::string>& claims() {
  static const std::map<std::string, std::string> c{
      {"intersections", "the closure of every subset is a strong substructure"},
      {"class-contract", "membership and strong substructure form an ordering"},
      {"fast-closure", "the class-specific closure equals the intersection of strong subsets"},
      {"transport", "closures computed in a strong substructure agree with the ambient ones"},
      {"multiuniversality", "every element of cl(A) has fewer than eta realizations over A"},
      {"eta-hierarchy", "some element of a closure has eta-1 realizations, so eta-1 fails"},
      {"realization-counts", "largest realization count inside closures"},
      {"shortness", "closures glue exactly when every finite restriction has one type"},
      {"glue-oracle", "staged gluing agrees with direct anchored isomorphism search"},
      {"isolation", "a finite part of A isolates the type of each tuple of cl(A)"},
      {"qf-galois", "after expansion, quantifier-free types coincide with Galois types"},
      {"model-complete", "after expansion, member substructures are strong"},
      {"raw-qf-galois", "before expansion, some quantifier-free type splits into Galois types"},
      {"raw-model-complete", "before expansion, some member substructure is not strong"},
      {"chain", "a finitely satisfiable type is realized at the top of a coherent chain"},
  };
  return c;
}

std::string tuple_text(std::span<const Element> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::vector<Tuple> all_tuples(std::size_t n, std::size_t len) {
  std::vector<Tuple> out;
  if (n == 0) return out;
  Tuple t(len, 0);
  while (true) {
    out.push_back(t);
    std::size_t pos = len;
    while (pos > 0 && ++t[pos - 1] == n) t[--pos] = 0;
    if (pos == 0) return out;
  }
}

std::vector<Tuple> tuples_from(ElementSet pool, std::size_t len) {
  const auto elems = pool.elements();
  std::vector<Tuple> out;
  for (const Tuple& idx : all_tuples(elems.size(), len)) {
    Tuple t;
    for (Element i : idx) t.push_back(elems[i]);
    out.push_back(std::move(t));
  }
  return out;
}

/// Collects violations of one check on one class into records.
class CheckRecorder {
 public:
  CheckRecorder(Report& report, std::string cls, std::string check, bool negative = false)
      : report_(report), cls_(std::move(cls)), check_(std::move(check)), negative_(negative) {}

  void instance() { ++instances_; }
  void instances(std::size_t n) { instances_ += n; }

  void violation(std::string structure, std::string subset, std::string detail) {
    if (violations_++ < kMaxRecordsPerCheck) {
      report_.records.push_back({cls_, std::move(structure), std::move(subset), check_,
                                 negative_ ? "expected-fail" : "fail", claim(),
                                 std::move(detail)});
    }
  }

  void finish(std::string extra = {}) {
    std::string detail = std::to_string(instances_) + " instances, " +
                         std::to_string(violations_) + " violations";
    if (violations_ > kMaxRecordsPerCheck) {
      detail += " (first " + std::to_string(kMaxRecordsPerCheck) + " listed)";
    }
    if (!extra.empty()) detail += "; " + extra;
    const bool bad = negative_ ? violations_ == 0 : violations_ > 0;
    std::string verdict = bad ? "fail" : (negative_ ? "expected-fail" : "pass");
    report_.records.push_back({cls_, "*", "*", check_, verdict, claim(), detail});
  }

  std::size_t violations() const { return violations_; }

 private:
  std::string claim() const { return claims().at(check_); }

  Report& report_;
  std::string cls_, check_;
  bool negative_;
  std::size_t instances_ = 0, violations_ = 0;
};

void record_audit(Report& report, const CatalogEntry& e, const AuditReport& audit,
                  bool negative = false) {
  CheckRecorder rec(report, e.name(), audit.check, negative);
  rec.instances(audit.instances);
  for (const auto& v : audit.violations) {
    rec.violation(structure_id(v.structure), v.subset.to_string(), v.detail);
  }
  rec.finish(negative ? "documented witness: " + e.documented_witness : std::string{});
}

struct Context {
  const SuiteConfig& config;
  std::vector<CatalogEntry> entries;
  std::optional<std::vector<FiniteStructure>> user_corpus;

  AuditConfig audit() const {
    AuditConfig a;
    a.seed = config.seed;
    a.jobs = config.jobs;
    return a;
  }

  /// With `whole_bound`, an unset max_size means the exhaustive bound.
  std::vector<FiniteStructure> corpus(const CatalogEntry& e, std::size_t cap,
                                      bool whole_bound = false) const {
    if (user_corpus) return *user_corpus;
    std::size_t size = config.max_size ? *config.max_size
                       : whole_bound   ? e.exhaustive_bound
                                       : default_size(e);
    return e.exhaustive(std::min({cap, size, e.exhaustive_bound}));
  }

  static std::size_t default_size(const CatalogEntry& e) {
    std::size_t smallest = e.exhaustive_bound;
    for (const auto& s : e.exhaustive(e.exhaustive_bound)) {
      if (s.size() > 0) smallest = std::min(smallest, s.size());
    }
    return std::max<std::size_t>(4, smallest);
  }
};

Context make_context(const SuiteConfig& config) {
  Context ctx{config, {}, std::nullopt};
  if (config.class_name.empty()) {
    if (!config.corpus.empty()) fail(ErrorCode::kUsage, "--corpus needs --class");
    ctx.entries = full_catalog();
  } else {
    try {
      ctx.entries = {find_catalog_entry(config.class_name)};
    } catch (const Error&) {
      fail(ErrorCode::kUsage, "unknown class " + config.class_name);
    }
  }
  if (!config.corpus.empty()) {
    ctx.user_corpus = read_corpus(config.corpus);
    const AecClass& k = *ctx.entries[0].cls;
    for (std::size_t i = 0; i < ctx.user_corpus->size(); ++i) {
      const auto& s = (*ctx.user_corpus)[i];
      if (!(s.vocab() == *k.vocab) || !k.member(s)) {
        fail(ErrorCode::kUsage,
             "corpus structure " + std::to_string(i) + " is not a member of " + k.name);
      }
    }
  }
  return ctx;
}

void suite_intersections(const Context& ctx, Report& report) {
  const AuditConfig cfg = ctx.audit();
  for (const auto& e : ctx.entries) {
    const auto corpus = ctx.corpus(e, kNoCap, true);
    if (e.negative_control()) {
      const AuditReport a = e.designated_failure == "transport"
                                ? audit_transport(*e.cls, corpus, cfg)
                                : audit_intersections(*e.cls, corpus, cfg);
      record_audit(report, e, a, true);
      continue;
    }
    record_audit(report, e, audit_class_contract(*e.cls, corpus, cfg));
    record_audit(report, e, audit_intersections(*e.cls, corpus, cfg));
    record_audit(report, e, audit_fast_closure(*e.cls, corpus, cfg));
    record_audit(report, e, audit_transport(*e.cls, corpus, cfg));
  }
}

void suite_multiuniversality(const Context& ctx, Report& report) {
  const AuditConfig cfg = ctx.audit();
  for (const auto& e : ctx.entries) {
    if (e.negative_control()) continue;
    const auto corpus = ctx.corpus(e, kNoCap, true);
    const auto eta = ctx.config.eta ? ctx.config.eta : e.expected_eta;
    std::size_t max_count = 0;
    if (eta) {
      auto r = audit_multiuniversal(*e.cls, corpus, *eta, cfg);
      max_count = r.max_count;
      CheckRecorder rec(report, e.name(), "multiuniversality");
      rec.instances(r.instances);
      for (const auto& v : r.violations) {
        rec.violation(structure_id(v.structure), v.params.to_string(),
                      "element " + std::to_string(v.element) + " has " +
                          std::to_string(v.count) + " realizations");
      }
      rec.finish("eta " + std::to_string(*eta));
      if (!ctx.config.eta && *eta >= 3) {
        auto below = audit_multiuniversal(*e.cls, corpus, *eta - 1, cfg);
        CheckRecorder h(report, e.name(), "eta-hierarchy", true);
        h.instances(below.instances);
        for (const auto& v : below.violations) {
          h.violation(structure_id(v.structure), v.params.to_string(),
                      "element " + std::to_string(v.element) + " has " +
                          std::to_string(v.count) + " realizations");
        }
        h.finish("eta " + std::to_string(*eta - 1));
      }
    } else {
      max_count = audit_multiuniversal(*e.cls, corpus, kNoCap, cfg).max_count;
    }
    report.records.push_back({e.name(), "*", "*", "realization-counts", "info",
                              claims().at("realization-counts"),
                              "max " + std::to_string(max_count)});
  }
}

void suite_shortness(const Context& ctx, Report& report) {
  for (const auto& e : ctx.entries) {
    if (e.negative_control()) continue;
    const auto corpus = ctx.corpus(e, kNoCap);
    struct Part {
      std::size_t instances = 0;
      std::vector<std::pair<std::string, std::string>> shortness, oracle;  // (structures, detail)
    };
    std::vector<Part> parts(corpus.size());
    GlueOptions options;
    options.node_budget = ctx.config.budget;
    parallel_for(corpus.size(), ctx.config.jobs, [&](std::size_t i) {
      for (std::size_t j = 0; j < corpus.size(); ++j) {
        const std::string ids = structure_id(i) + "," + structure_id(j);
        for (std::size_t len = 1; len <= kMaxTupleLength; ++len) {
          for (const Tuple& a1 : all_tuples(corpus[i].size(), len)) {
            for (const Tuple& a2 : all_tuples(corpus[j].size(), len)) {
              GluingProblem p(*e.cls, corpus[i], a1, corpus[j], a2);
              const GlueResult g = glue(p, options);
              const bool restrictions = check_finite_restrictions(p, len).pass;
              auto anchor = PartialMap::from_tuples(p.to_m1(a1), p.to_m2(a2));
              const bool direct = anchor && are_isomorphic(p.m1().structure, p.m2().structure, *anchor);
              ++parts[i].instances;
              const std::string what = tuple_text(a1) + " -> " + tuple_text(a2);
              if (g.success != restrictions) {
                parts[i].shortness.emplace_back(ids, what + ": glue " + (g.success ? "succeeds" : "fails") +
                                                         " but restrictions " +
                                                         (restrictions ? "match" : "differ"));
              }
              if (g.success != direct) {
                parts[i].oracle.emplace_back(ids, what + ": glue and direct search disagree");
              }
            }
          }
        }
      }
    });
    CheckRecorder s(report, e.name(), "shortness"), o(report, e.name(), "glue-oracle");
    for (const auto& part : parts) {
      s.instances(part.instances);
      o.instances(part.instances);
      for (const auto& [ids, d] : part.shortness) s.violation(ids, "*", d);
      for (const auto& [ids, d] : part.oracle) o.violation(ids, "*", d);
    }
    s.finish("tuples up to length " + std::to_string(kMaxTupleLength));
    o.finish();
  }
}

void suite_isolation(const Context& ctx, Report& report) {
  for (const auto& e : ctx.entries) {
    if (e.negative_control()) continue;
    const auto corpus = ctx.corpus(e, kNoCap);
    struct Part {
      std::size_t instances = 0;
      std::vector<std::array<std::string, 2>> bad;  // (subset, detail)
    };
    std::vector<Part> parts(corpus.size());
    parallel_for(corpus.size(), ctx.config.jobs, [&](std::size_t i) {
      const FiniteStructure& m = corpus[i];
      for (ElementSet a : subsets_by_size(m.universe())) {
        if (a.size() > kMaxIsolationBase) continue;
        const ElementSet cl = closure(*e.cls, m, a);
        for (std::size_t len = 1; len <= kMaxTupleLength; ++len) {
          for (const Tuple& b : tuples_from(cl, len)) {
            ++parts[i].instances;
            try {
              auto r = find_isolating_base(*e.cls, m, a, b);
              if (r.a1.size() > r.budget) {
                parts[i].bad.push_back({a.to_string(), tuple_text(b) + ": A1 " + r.a1.to_string() +
                                                           " exceeds budget " + std::to_string(r.budget)});
              }
            } catch (const Error& err) {
              if (err.code() != ErrorCode::kInternalContradiction) throw;
              parts[i].bad.push_back({a.to_string(), tuple_text(b) + ": " + err.what()});
            }
          }
        }
      }
    });
    CheckRecorder rec(report, e.name(), "isolation");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      rec.instances(parts[i].instances);
      for (const auto& [subset, d] : parts[i].bad) rec.violation(structure_id(i), subset, d);
    }
    rec.finish();
  }
}

FiniteStructure path_graph(const VocabularyPtr& vocab, std::size_t n) {
  StructureBuilder b(vocab, n);
  for (Element i = 0; i + 1 < n; ++i) {
    b.add(0, Tuple{i, i + 1});
    b.add(0, Tuple{i + 1, i});
  }
  return b.build();
}

void suite_morleyization(const Context& ctx, Report& report) {
  for (const auto& e : ctx.entries) {
    if (e.negative_control()) continue;
    const auto corpus = ctx.corpus(e, kMorleySizeCap);
    auto catalog = TypeCatalog::build(e.cls, corpus, kMaxTupleLength, ctx.config.jobs);
    auto mz = morleyize(catalog);
    const std::string extra = std::to_string(catalog.entries().size()) + " symbols";

    auto qf = check_qf_equals_galois(*mz.cls, mz.expanded, kMaxTupleLength, ctx.config.jobs);
    CheckRecorder q(report, e.name(), "qf-galois");
    q.instances(qf.pairs);
    for (const auto& m : qf.mismatches) {
      q.violation(structure_id(m.structure1) + "," + structure_id(m.structure2), m.params.to_string(),
                  tuple_text(m.tuple1) + " vs " + tuple_text(m.tuple2));
    }
    q.finish(extra);

    auto mc = check_model_complete(*mz.cls, mz.expanded, ctx.config.jobs);
    CheckRecorder c(report, e.name(), "model-complete");
    c.instances(mc.pairs);
    for (const auto& m : mc.mismatches) {
      c.violation(structure_id(m.structure), m.subset.to_string(), "member substructure not strong");
    }
    c.finish(extra);
  }

  // The unexpanded component class: a 2-edge path against a lone vertex.
  if (std::any_of(ctx.entries.begin(), ctx.entries.end(),
                  [](const CatalogEntry& e) { return e.name() == "CG"; })) {
    auto cg = make_component_graph_class();
    const std::vector<FiniteStructure> raw{path_graph(cg->vocab, 3), path_graph(cg->vocab, 1)};
    auto qf = check_qf_equals_galois(*cg, raw, 1);
    CheckRecorder q(report, "CG", "raw-qf-galois", true);
    q.instances(qf.pairs);
    for (const auto& m : qf.mismatches) {
      q.violation(structure_id(m.structure1) + "," + structure_id(m.structure2), m.params.to_string(),
                  tuple_text(m.tuple1) + " vs " + tuple_text(m.tuple2) +
                      (m.qf_equal ? ": same qf type, different Galois type" : ""));
    }
    q.finish();
    auto mc = check_model_complete(*cg, std::span(raw).first(1));
    CheckRecorder c(report, "CG", "raw-model-complete", true);
    c.instances(mc.pairs);
    for (const auto& m : mc.mismatches) {
      c.violation(structure_id(m.structure), m.subset.to_string(), "member substructure not strong");
    }
    c.finish();
  }
}

void suite_chain(const Context& ctx, Report& report) {
  for (const auto& s : builtin_chain_scenarios()) {
    const bool selected = std::any_of(ctx.entries.begin(), ctx.entries.end(),
                                      [&](const CatalogEntry& e) { return e.name() == s.cls->name; });
    if (!selected) continue;
    CheckRecorder rec(report, s.cls->name, "chain", s.expected_violation.has_value());
    rec.instance();
    std::string extra = s.name + ", depth " + std::to_string(s.depth);
    try {
      auto r = compactness_chain(*s.cls, scripted_oracle(s.records), s.depth);
      if (s.expected_violation) {
        rec.violation(s.name, "*", "no completeness violation raised");
      }
      extra += ", top size " + std::to_string(r.system.objects.back().size()) + ", tuple " +
               tuple_text(r.tuples.back());
    } catch (const Error& err) {
      const bool expected = s.expected_violation &&
                            err.code() == ErrorCode::kCompletenessViolation &&
                            std::string(err.what()).find(*s.expected_violation) != std::string::npos;
      if (expected) {
        // A negative scenario counts its designated failure as a violation.
        rec.violation(s.name, *s.expected_violation, err.what());
      } else {
        if (s.expected_violation) {
          report.records.push_back({s.cls->name, s.name, "*", "chain", "fail",
                                    claims().at("chain"), err.what()});
        } else {
          rec.violation(s.name, "*", err.what());
        }
      }
    }
    rec.finish(extra);
  }
}

using SuiteFn = std::function<void(const Context&, Report&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"intersections", suite_intersections}, {"multiuniversality", suite_multiuniversality},
      {"shortness", suite_shortness},         {"isolation", suite_isolation},
      {"morleyization", suite_morleyization}, {"chain", suite_chain},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

Report run_suite(const std::string& suite, const SuiteConfig& config) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    fail(ErrorCode::kUsage, "unknown suite " + suite);
  }
  const Context ctx = make_context(config);
  Report report;
  report.suite = suite;
  report.seed = config.seed;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) fn(ctx, report);
  }
  std::sort(report.records.begin(), report.records.end());
  return report;
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir.string());
  write_text(dir / "report.yaml", report.to_yaml());
  write_text(dir / "summary.txt", report.summary());
}

int exit_code(const Report& report) { return report.failures() == 0 ? 0 : 1; }

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kIo:
      return 3;
    case ErrorCode::kBudgetExceeded:
      return 4;
    case ErrorCode::kInternalContradiction:
    case ErrorCode::kCompletenessViolation:
    case ErrorCode::kAmalgamationFailure:
      return 1;
    default:
      return 2;
  }
}

namespace {

FiniteStructure copies_of_path(const VocabularyPtr& vocab, std::size_t copies) {
  FiniteStructure out(vocab);
  for (std::size_t i = 0; i < copies; ++i) out = disjoint_union(out, path_graph(vocab, 3));
  return out;
}

}  // namespace

std::vector<ChainScenario> builtin_chain_scenarios() {
  std::vector<ChainScenario> out;

  auto us1 = find_catalog_entry("US1").cls;
  StructureBuilder fixed(us1->vocab, 1);
  fixed.set(0, Tuple{0}, 0);
  const FiniteStructure point = fixed.build();
  out.push_back({"constant-sequence", us1,
                 {{{0}, {point, {0}}}, {{0, 1}, {point, {0, 0}}}, {{0, 1, 2}, {point, {0, 0, 0}}}},
                 3, std::nullopt});

  auto cg = find_catalog_entry("CG").cls;
  out.push_back({"separate-path-endpoints", cg,
                 {{{0}, {copies_of_path(cg->vocab, 1), {0}}},
                  {{0, 1}, {copies_of_path(cg->vocab, 2), {0, 3}}},
                  {{0, 1, 2}, {copies_of_path(cg->vocab, 3), {0, 3, 6}}},
                  {{1, 2}, {copies_of_path(cg->vocab, 2), {2, 5}}}},
                 3, std::nullopt});

  auto eq3 = find_catalog_entry("EQ3");
  const FiniteStructure block = eq3.exhaustive(3).back();
  out.push_back({"one-block", eq3.cls,
                 {{{0}, {block, {0}}}, {{0, 1}, {block, {1, 2}}}, {{0, 1, 2}, {block, {2, 0, 1}}}},
                 3, std::nullopt});

  out.push_back({"disagreeing-witnesses", cg,
                 {{{0}, {path_graph(cg->vocab, 1), {0}}},
                  {{0, 1}, {copies_of_path(cg->vocab, 2), {0, 3}}},
                  {{0, 1, 2}, {copies_of_path(cg->vocab, 3), {0, 3, 6}}}},
                 3, std::string("{0,1}")});
  return out;
}

}  // namespace muaec
