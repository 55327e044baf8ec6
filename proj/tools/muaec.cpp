// Command-line front end: single-instance queries and the audit suites.

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include <iostream>

#include "muaec/catalog/catalog.hpp"
#include "muaec/galois/types.hpp"
#include "muaec/harness/corpus_io.hpp"
#include "muaec/harness/suite.hpp"
#include "muaec/isolation/isolation.hpp"
#include "muaec/morley/chain.hpp"
#include "muaec/morley/morleyize.hpp"
#include "muaec/shortness/gluing.hpp"

namespace fs = std::filesystem;
using namespace muaec;

namespace {

struct ModelArg {
  std::string file;
  std::size_t index = 0;
};

FiniteStructure load_model(const ModelArg& arg) {
  auto corpus = read_corpus(arg.file);
  if (arg.index >= corpus.size()) {
    fail(ErrorCode::kUsage, arg.file + " holds " + std::to_string(corpus.size()) +
                                " structure(s); index " + std::to_string(arg.index) +
                                " requested");
  }
  return corpus[arg.index];
}

AecClassPtr load_class(const std::string& name) {
  try {
    return find_catalog_entry(name).cls;
  } catch (const Error&) {
    fail(ErrorCode::kUsage, "unknown class " + name + " (see `muaec classes`)");
  }
}

void require_member(const AecClass& k, const FiniteStructure& m, const std::string& what) {
  if (!(m.vocab() == *k.vocab) || !k.member(m)) {
    fail(ErrorCode::kUsage, what + " is not a member of " + k.name);
  }
}

ElementSet to_set(const std::vector<Element>& xs) {
  ElementSet s;
  for (Element x : xs) s.insert(x);
  return s;
}

std::string tuple_text(std::span<const Element> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::vector<OracleRecord> load_chain_script(const fs::path& path) {
  const std::string text = read_text(path);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    fail(ErrorCode::kParse, path.string() + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  auto bad = [&](const YAML::Node& n, const std::string& msg) {
    fail(ErrorCode::kParse,
         path.string() + ":" + std::to_string(n.Mark().line + 1) + ": " + msg);
  };
  if (!root.IsSequence()) bad(root, "an oracle script is a list of records");
  std::vector<OracleRecord> out;
  for (const auto& item : root) {
    if (!item.IsMap() || !item["index_set"] || !item["tuple"]) {
      bad(item, "records need index_set, tuple and witness or structure");
    }
    OracleRecord r{{}, {FiniteStructure(make_vocabulary({})), {}}};
    try {
      r.index_set = item["index_set"].as<std::vector<std::size_t>>();
      r.witness.tuple = item["tuple"].as<std::vector<Element>>();
    } catch (const YAML::Exception&) {
      bad(item, "index_set and tuple must be lists of indices");
    }
    if (item["witness"]) {
      const std::string file = item["witness"].as<std::string>();
      auto corpus = read_corpus(path.parent_path() / file);
      if (corpus.empty()) bad(item, file + " holds no structure");
      r.witness.structure = corpus[0];
    } else if (item["structure"]) {
      YAML::Emitter e;
      e << item["structure"];
      auto corpus = parse_corpus(e.c_str(), path.string());
      if (corpus.size() != 1) bad(item, "inline structure must be one document");
      r.witness.structure = corpus[0];
    } else {
      bad(item, "record has neither witness nor structure");
    }
    out.push_back(std::move(r));
  }
  return out;
}

int run_classes() {
  for (const auto& e : full_catalog()) {
    std::cout << e.name() << "\n";
    std::cout << "  signature: " << e.cls->vocab->signature() << "\n";
    std::cout << "  eta: " << (e.expected_eta ? std::to_string(*e.expected_eta) : "none") << "\n";
    std::cout << "  exhaustive bound: " << e.exhaustive_bound << "\n";
    if (e.negative_control()) {
      std::cout << "  negative control, fails: " << e.designated_failure << " on "
                << e.documented_witness << "\n";
    }
    std::cout << "  " << e.cls->docs << "\n";
    std::cout << "  origin: " << e.provenance << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closure, type and gluing audits on finite structures"};
  app.require_subcommand(1);

  std::string cls_name;
  ModelArg model, model2;
  std::vector<Element> params, tuple, tuple2;
  std::size_t eta = 2, depth = 0, arity = 1;
  bool all_solutions = false;
  std::optional<std::size_t> stream_depth;
  std::string out_dir, script;
  SuiteConfig suite_cfg;
  std::string suite_name;
  std::string corpus_path;

  auto add_class = [&](CLI::App* sub) { sub->add_option("--class", cls_name, "class name")->required(); };
  auto add_model = [&](CLI::App* sub, ModelArg& m, const std::string& flag) {
    sub->add_option(flag, m.file, "corpus file")->required();
    sub->add_option(flag + "-index", m.index, "document index in the file");
  };

  auto* classes = app.add_subcommand("classes", "list the class catalog");

  auto* type_eq = app.add_subcommand("type-eq", "compare two Galois types over A");
  add_class(type_eq);
  add_model(type_eq, model, "--model");
  type_eq->add_option("--model2", model2.file, "second structure (default: --model)");
  type_eq->add_option("--model2-index", model2.index);
  type_eq->add_option("--params", params)->delimiter(',');
  type_eq->add_option("--tuple1", tuple)->delimiter(',')->required();
  type_eq->add_option("--tuple2", tuple2)->delimiter(',')->required();

  auto* algebraic = app.add_subcommand("algebraic", "test eta-algebraicity of a type over A");
  add_class(algebraic);
  add_model(algebraic, model, "--model");
  algebraic->add_option("--params", params)->delimiter(',');
  algebraic->add_option("--tuple", tuple)->delimiter(',')->required();
  algebraic->add_option("--eta", eta)->required();

  auto* glue_cmd = app.add_subcommand("glue", "glue the closures of two tuples");
  add_class(glue_cmd);
  add_model(glue_cmd, model, "--model1");
  add_model(glue_cmd, model2, "--model2");
  glue_cmd->add_option("--tuple1", tuple)->delimiter(',')->required();
  glue_cmd->add_option("--tuple2", tuple2)->delimiter(',')->required();
  glue_cmd->add_flag("--all", all_solutions, "list every gluing");
  glue_cmd->add_option("--stream", stream_depth, "also print survivor counts to this depth");
  glue_cmd->add_option("--budget", suite_cfg.budget, "search node budget");

  auto* isolate = app.add_subcommand("isolate", "find a finite isolating base");
  add_class(isolate);
  add_model(isolate, model, "--model");
  isolate->add_option("--params", params)->delimiter(',');
  isolate->add_option("--tuple", tuple)->delimiter(',')->required();

  auto* morley = app.add_subcommand("morleyize", "expand a corpus by its types over the empty set");
  add_class(morley);
  morley->add_option("--corpus", corpus_path)->required();
  morley->add_option("--arity", arity);
  morley->add_option("--out", out_dir)->required();

  auto* chain = app.add_subcommand("chain", "build a chain from an oracle script");
  add_class(chain);
  chain->add_option("--type", script, "oracle script")->required();
  chain->add_option("--depth", depth)->required();

  auto add_suite_flags = [&](CLI::App* sub) {
    sub->add_option("--class", suite_cfg.class_name);
    sub->add_option("--corpus", corpus_path);
    sub->add_option("--max-size", suite_cfg.max_size);
    sub->add_option("--budget", suite_cfg.budget);
    sub->add_option("--seed", suite_cfg.seed);
    sub->add_option("--jobs", suite_cfg.jobs, "worker threads, 0 = all cores");
    sub->add_option("--out", out_dir, "directory for report.yaml and summary.txt");
  };
  auto* audit_multi = app.add_subcommand("audit-multi", "realization counts inside closures");
  add_suite_flags(audit_multi);
  std::optional<std::size_t> eta_flag;
  audit_multi->add_option("--eta", eta_flag);

  auto* suite = app.add_subcommand("suite", "run an audit suite");
  suite->add_option("name", suite_name, "one of intersections, multiuniversality, shortness, "
                                        "isolation, morleyization, chain, all")
      ->required();
  add_suite_flags(suite);
  suite->add_option("--eta", eta_flag);

  auto* enumerate = app.add_subcommand("enumerate", "write a class's exhaustive corpus");
  add_class(enumerate);
  enumerate->add_option("--max-size", suite_cfg.max_size);
  enumerate->add_option("--out", out_dir, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classes) return run_classes();

    if (*type_eq) {
      auto k = load_class(cls_name);
      const FiniteStructure m1 = load_model(model);
      const FiniteStructure m2 = model2.file.empty() ? m1 : load_model(model2);
      require_member(*k, m1, "first model");
      require_member(*k, m2, "second model");
      const TypeLocator t1(m1, to_set(params), tuple), t2(m2, to_set(params), tuple2);
      const bool eq = type_equal(*k, t1, t2);
      std::cout << (eq ? "equal" : "different") << "\n";
      std::cout << "certificate1: " << canonical_certificate(*k, t1).code << "\n";
      std::cout << "certificate2: " << canonical_certificate(*k, t2).code << "\n";
      return 0;
    }

    if (*algebraic) {
      auto k = load_class(cls_name);
      const FiniteStructure m = load_model(model);
      require_member(*k, m, "model");
      const TypeLocator t(m, to_set(params), tuple);
      const auto cert = canonical_certificate(*k, t);
      const auto reals = realizations(*k, m, to_set(params), cert);
      const bool alg = is_eta_algebraic(*k, t, eta);
      std::cout << (alg ? "algebraic" : "not algebraic") << " (eta " << eta << ", "
                << reals.size() << " realizations)\n";
      for (const Tuple& r : reals) std::cout << "  " << tuple_text(r) << "\n";
      return 0;
    }

    if (*glue_cmd) {
      auto k = load_class(cls_name);
      const FiniteStructure n1 = load_model(model), n2 = load_model(model2);
      require_member(*k, n1, "first model");
      require_member(*k, n2, "second model");
      GluingProblem p(*k, n1, tuple, n2, tuple2);
      GlueOptions opt;
      opt.all_solutions = all_solutions;
      opt.node_budget = suite_cfg.budget;
      const GlueResult r = glue(p, opt);
      std::cout << (r.success ? "glued" : "no gluing") << "\n";
      std::cout << "stages:";
      for (std::size_t x : r.profile) std::cout << " " << x;
      std::cout << "\n";
      for (const auto& f : r.maps) std::cout << "  " << f.to_string() << "\n";
      if (!r.success) {
        std::cout << "stuck at " << r.failing_domain.to_string() << "\n";
        if (r.counterexample) {
          std::cout << "restriction with different types: indices";
          for (std::size_t i : *r.counterexample) std::cout << " " << i;
          std::cout << "\n";
        }
      }
      if (stream_depth) {
        for (const auto& level : glue_staged_stream(p, stage_prefix_oracle(p), *stream_depth)) {
          std::cout << "level " << level.domain.to_string() << ": " << level.family_size
                    << " maps, " << level.survivors << " survive\n";
        }
      }
      return r.success ? 0 : 1;
    }

    if (*isolate) {
      auto k = load_class(cls_name);
      const FiniteStructure m = load_model(model);
      require_member(*k, m, "model");
      const auto r = find_isolating_base(*k, m, to_set(params), tuple);
      std::cout << "A0 " << r.a0.to_string() << "\n";
      std::cout << "A1 " << r.a1.to_string() << "\n";
      std::cout << "realizations over A0 (type over A):\n";
      for (const auto& row : r.table) {
        std::cout << "  " << tuple_text(row.tuple) << " " << row.type_over_a << "\n";
      }
      return 0;
    }

    if (*morley) {
      auto k = load_class(cls_name);
      auto corpus = read_corpus(corpus_path);
      auto cat = TypeCatalog::build(k, corpus, arity);
      auto mz = morleyize(cat);
      fs::create_directories(out_dir);
      write_text(fs::path(out_dir) / "corpus.yaml", emit_corpus(mz.expanded));
      YAML::Emitter e;
      e << YAML::BeginSeq;
      for (const auto& entry : cat.entries()) {
        e << YAML::BeginMap << YAML::Key << "symbol" << YAML::Value << entry.symbol << YAML::Key
          << "arity" << YAML::Value << entry.arity << YAML::Key << "type" << YAML::Value
          << entry.certificate.code << YAML::EndMap;
      }
      e << YAML::EndSeq;
      write_text(fs::path(out_dir) / "symbols.yaml", std::string(e.c_str()) + "\n");
      std::cout << cat.entries().size() << " symbols, " << mz.expanded.size() << " structures\n";
      return 0;
    }

    if (*chain) {
      auto k = load_class(cls_name);
      auto r = compactness_chain(*k, scripted_oracle(load_chain_script(script)), depth);
      for (std::size_t i = 0; i < r.system.objects.size(); ++i) {
        std::cout << "stage " << i + 1 << ": size " << r.system.objects[i].size() << ", tuple "
                  << tuple_text(r.tuples[i]) << "\n";
      }
      std::cout << emit_corpus(std::span(&r.system.objects.back(), 1));
      return 0;
    }

    if (*audit_multi || *suite) {
      if (*audit_multi && suite_cfg.class_name.empty()) {
        fail(ErrorCode::kUsage, "audit-multi needs --class");
      }
      suite_cfg.corpus = corpus_path;
      suite_cfg.eta = eta_flag;
      const Report report = run_suite(*suite ? suite_name : "multiuniversality", suite_cfg);
      if (!out_dir.empty()) write_report(report, out_dir);
      std::cout << report.summary();
      return exit_code(report);
    }

    if (*enumerate) {
      const CatalogEntry e = find_catalog_entry(cls_name);
      const std::string text = emit_corpus(e.exhaustive(suite_cfg.max_size.value_or(e.exhaustive_bound)));
      if (out_dir.empty()) {
        std::cout << text;
      } else {
        write_text(out_dir, text);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
