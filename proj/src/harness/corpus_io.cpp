#include "muaec/harness/corpus_io.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "muaec/core/error.hpp"

namespace muaec {

namespace {

[[noreturn]] void parse_error(std::string_view source, const YAML::Mark& mark,
                              const std::string& msg) {
  std::string where(source);
  if (!mark.is_null()) {
    where += ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1);
  }
  fail(ErrorCode::kParse, where + ": " + msg);
}

class DocumentReader {
 public:
  DocumentReader(std::string_view source, const YAML::Node& doc) : source_(source), doc_(doc) {}

  FiniteStructure read() {
    if (!doc_.IsMap()) parse_error(source_, doc_.Mark(), "a structure must be a map");
    for (const auto& kv : doc_) {
      const std::string key = scalar(kv.first, "key");
      static const std::set<std::string> known{"vocab", "size", "rels", "funs"};
      if (!known.count(key)) parse_error(source_, kv.first.Mark(), "unknown key '" + key + "'");
    }
    auto vocab = read_vocab(required("vocab"));
    const std::size_t n = count(required("size"), "size");
    StructureBuilder builder(vocab, n);
    if (auto rels = doc_["rels"]) read_relations(rels, *vocab, n, builder);
    if (auto funs = doc_["funs"]) read_functions(funs, *vocab, n, builder);
    for (std::size_t f = 0; f < vocab->functions().size(); ++f) {
      if (!seen_functions_.count(f)) {
        parse_error(source_, doc_.Mark(),
                    "function " + vocab->functions()[f].name + " has no table");
      }
    }
    return builder.build();
  }

 private:
  YAML::Node required(const char* key) {
    YAML::Node node = doc_[key];
    if (!node) parse_error(source_, doc_.Mark(), std::string("missing key '") + key + "'");
    return node;
  }

  std::string scalar(const YAML::Node& node, const std::string& what) {
    if (!node.IsScalar()) parse_error(source_, node.Mark(), what + " must be a scalar");
    return node.Scalar();
  }

  std::size_t count(const YAML::Node& node, const std::string& what) {
    const std::string text = scalar(node, what);
    if (text.empty() || !std::all_of(text.begin(), text.end(), ::isdigit) || text.size() > 9) {
      parse_error(source_, node.Mark(), what + " must be a non-negative integer");
    }
    return std::stoul(text);
  }

  std::vector<Symbol> read_symbols(const YAML::Node& list, const std::string& what) {
    std::vector<Symbol> out;
    if (!list) return out;
    if (!list.IsSequence()) parse_error(source_, list.Mark(), what + " must be a list");
    for (const auto& item : list) {
      if (!item.IsMap() || !item["name"] || !item["arity"]) {
        parse_error(source_, item.Mark(), what + " entries need 'name' and 'arity'");
      }
      out.push_back({scalar(item["name"], "name"), count(item["arity"], "arity")});
    }
    return out;
  }

  VocabularyPtr read_vocab(const YAML::Node& node) {
    if (!node.IsMap()) parse_error(source_, node.Mark(), "vocab must be a map");
    try {
      return make_vocabulary(read_symbols(node["relations"], "relations"),
                             read_symbols(node["functions"], "functions"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      parse_error(source_, node.Mark(), e.what());
    }
  }

  Tuple read_tuple(const YAML::Node& node, std::size_t length, std::size_t n) {
    if (!node.IsSequence() || node.size() != length) {
      parse_error(source_, node.Mark(), "expected a list of " + std::to_string(length) +
                                            " indices");
    }
    Tuple t;
    for (const auto& x : node) {
      const std::size_t v = count(x, "index");
      if (v >= n) {
        parse_error(source_, x.Mark(), "index " + std::to_string(v) + " is outside a universe of size " +
                                           std::to_string(n));
      }
      t.push_back(static_cast<Element>(v));
    }
    return t;
  }

  void read_relations(const YAML::Node& rels, const Vocabulary& vocab, std::size_t n,
                      StructureBuilder& builder) {
    if (!rels.IsMap()) parse_error(source_, rels.Mark(), "rels must be a map");
    for (const auto& kv : rels) {
      const std::string name = scalar(kv.first, "relation name");
      auto r = vocab.relation_index(name);
      if (!r) parse_error(source_, kv.first.Mark(), "unknown relation " + name);
      if (!kv.second.IsSequence()) parse_error(source_, kv.second.Mark(), "tuples must be a list");
      for (const auto& t : kv.second) {
        builder.add(*r, read_tuple(t, vocab.relations()[*r].arity, n));
      }
    }
  }

  void read_functions(const YAML::Node& funs, const Vocabulary& vocab, std::size_t n,
                      StructureBuilder& builder) {
    if (!funs.IsMap()) parse_error(source_, funs.Mark(), "funs must be a map");
    for (const auto& kv : funs) {
      const std::string name = scalar(kv.first, "function name");
      auto f = vocab.function_index(name);
      if (!f) parse_error(source_, kv.first.Mark(), "unknown function " + name);
      if (!kv.second.IsSequence()) parse_error(source_, kv.second.Mark(), "rows must be a list");
      const std::size_t arity = vocab.functions()[*f].arity;
      std::set<Tuple> args_seen;
      for (const auto& row : kv.second) {
        Tuple t = read_tuple(row, arity + 1, n);
        const Element value = t.back();
        t.pop_back();
        if (!args_seen.insert(t).second) {
          parse_error(source_, row.Mark(), "function " + name + " has two rows for one argument");
        }
        builder.set(*f, t, value);
      }
      std::size_t expected = n == 0 ? 0 : 1;
      for (std::size_t i = 0; i < arity && n > 0; ++i) expected *= n;
      if (args_seen.size() != expected) {
        parse_error(source_, kv.second.Mark(),
                    "function " + name + " is not total: " + std::to_string(args_seen.size()) +
                        " of " + std::to_string(expected) + " rows");
      }
      seen_functions_.insert(*f);
    }
  }

  std::string_view source_;
  const YAML::Node& doc_;
  std::set<std::size_t> seen_functions_;
};

void emit_symbols(YAML::Emitter& out, const std::vector<Symbol>& symbols) {
  out << YAML::BeginSeq;
  for (const auto& s : symbols) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "name" << YAML::Value << s.name
        << YAML::Key << "arity" << YAML::Value << s.arity << YAML::EndMap;
  }
  out << YAML::EndSeq;
}

void emit_rows(YAML::Emitter& out, const std::vector<Tuple>& rows) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const Tuple& t : rows) {
    out << YAML::Flow << YAML::BeginSeq;
    for (Element x : t) out << x;
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
}

}  // namespace

std::vector<FiniteStructure> parse_corpus(std::string_view text, std::string_view source) {
  std::vector<YAML::Node> docs;
  try {
    docs = YAML::LoadAll(std::string(text));
  } catch (const YAML::ParserException& e) {
    parse_error(source, e.mark, e.msg);
  }
  std::vector<FiniteStructure> out;
  for (const auto& doc : docs) {
    if (doc.IsNull()) continue;
    try {
      out.push_back(DocumentReader(source, doc).read());
    } catch (const YAML::Exception& e) {
      parse_error(source, e.mark, e.msg);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      parse_error(source, doc.Mark(), e.what());
    }
  }
  return out;
}

std::string emit_corpus(std::span<const FiniteStructure> structures) {
  YAML::Emitter out;
  for (const FiniteStructure& s : structures) {
    const Vocabulary& v = s.vocab();
    out << YAML::BeginDoc << YAML::BeginMap;
    out << YAML::Key << "vocab" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "relations" << YAML::Value;
    emit_symbols(out, v.relations());
    out << YAML::Key << "functions" << YAML::Value;
    emit_symbols(out, v.functions());
    out << YAML::EndMap;
    out << YAML::Key << "size" << YAML::Value << s.size();
    out << YAML::Key << "rels" << YAML::Value << YAML::BeginMap;
    for (std::size_t r = 0; r < s.relation_count(); ++r) {
      out << YAML::Key << v.relations()[r].name << YAML::Value;
      emit_rows(out, s.tuples(r));
    }
    out << YAML::EndMap;
    out << YAML::Key << "funs" << YAML::Value << YAML::BeginMap;
    for (std::size_t f = 0; f < s.function_count(); ++f) {
      const std::size_t arity = v.functions()[f].arity;
      std::vector<Tuple> rows;
      const auto& table = s.function_table(f);
      for (std::size_t i = 0; i < table.size() && s.size() > 0; ++i) {
        Tuple row = s.table_args(i, arity);
        row.push_back(table[i]);
        rows.push_back(std::move(row));
      }
      out << YAML::Key << v.functions()[f].name << YAML::Value;
      emit_rows(out, rows);
    }
    out << YAML::EndMap << YAML::EndMap;
  }
  std::string text = out.c_str();
  if (!text.empty() && text.back() != '\n') text += '\n';
  return text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
}

std::vector<FiniteStructure> read_corpus(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(path, ec)) {
      const auto ext = e.path().extension();
      if (e.is_regular_file() && (ext == ".yaml" || ext == ".yml")) files.push_back(e.path());
    }
    if (ec) fail(ErrorCode::kIo, "cannot list " + path.string());
    std::sort(files.begin(), files.end());
    std::vector<FiniteStructure> out;
    for (const auto& f : files) {
      auto part = parse_corpus(read_text(f), f.string());
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  return parse_corpus(read_text(path), path.string());
}

}  // namespace muaec
