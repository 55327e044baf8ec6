#include "muaec/core/structure.hpp"

#include <algorithm>
#include <sstream>

#include "muaec/core/error.hpp"

namespace muaec {

// ---------------------------------------------------------------- Vocabulary

Vocabulary::Vocabulary(std::vector<Symbol> relations, std::vector<Symbol> functions)
    : relations_(std::move(relations)), functions_(std::move(functions)) {
  std::vector<std::string> names;
  for (const auto& s : relations_) names.push_back(s.name);
  for (const auto& s : functions_) names.push_back(s.name);
  std::sort(names.begin(), names.end());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) fail(ErrorCode::kInvalidArgument, "empty symbol name");
    if (i > 0 && names[i] == names[i - 1]) {
      fail(ErrorCode::kInvalidArgument, "duplicate symbol name '" + names[i] + "'");
    }
  }
}

std::optional<std::size_t> Vocabulary::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Vocabulary::function_index(std::string_view name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    if (functions_[i].name == name) return i;
  }
  return std::nullopt;
}

bool Vocabulary::has_constants() const {
  return std::any_of(functions_.begin(), functions_.end(),
                     [](const Symbol& s) { return s.arity == 0; });
}

Vocabulary Vocabulary::with_relations(const std::vector<Symbol>& extra) const {
  auto rels = relations_;
  rels.insert(rels.end(), extra.begin(), extra.end());
  return Vocabulary(std::move(rels), functions_);
}

std::string Vocabulary::signature() const {
  std::string out;
  for (const auto& s : relations_) out += s.name + "/" + std::to_string(s.arity) + ";";
  for (const auto& s : functions_) out += s.name + "()/" + std::to_string(s.arity) + ";";
  return out;
}

// ----------------------------------------------------------------- helpers

std::size_t table_size(std::size_t n, std::size_t arity) {
  constexpr std::size_t kLimit = std::size_t{1} << 22;
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (n != 0 && total > kLimit / n) {
      fail(ErrorCode::kBudgetExceeded, "table of arity " + std::to_string(arity) + " over " +
                                           std::to_string(n) + " elements is too large");
    }
    total *= n;
  }
  return total;
}

namespace {

std::size_t mixed_index(std::size_t n, std::span<const Element> args) {
  std::size_t idx = 0;
  for (Element a : args) {
    if (a >= n) fail(ErrorCode::kInvalidArgument, "tuple element out of range");
    idx = idx * n + a;
  }
  return idx;
}

std::vector<Tuple> tuples_from_dense(const std::vector<std::uint8_t>& dense, std::size_t n,
                                     std::size_t arity) {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!dense[i]) continue;
    Tuple t(arity);
    std::size_t rest = i;
    for (std::size_t k = arity; k-- > 0;) {
      t[k] = static_cast<Element>(rest % n);
      rest /= n;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------ FiniteStructure

FiniteStructure::FiniteStructure(VocabularyPtr vocab) : vocab_(std::move(vocab)) {
  if (vocab_->has_constants()) {
    fail(ErrorCode::kInvalidArgument, "empty universe with constant symbols");
  }
  for (const auto& r : vocab_->relations()) {
    relations_.push_back({std::vector<std::uint8_t>(table_size(0, r.arity), 0), {}});
  }
  for (const auto& f : vocab_->functions()) {
    functions_.emplace_back(table_size(0, f.arity), Element{0});
  }
}

FiniteStructure::FiniteStructure(VocabularyPtr vocab, std::size_t size,
                                 const std::vector<std::vector<std::uint8_t>>& relations,
                                 std::vector<std::vector<Element>> functions)
    : vocab_(std::move(vocab)), size_(size), functions_(std::move(functions)) {
  for (std::size_t r = 0; r < relations.size(); ++r) {
    relations_.push_back(
        {relations[r], tuples_from_dense(relations[r], size_, vocab_->relations()[r].arity)});
  }
}

std::size_t FiniteStructure::table_index(std::span<const Element> args) const {
  return mixed_index(size_, args);
}

Tuple FiniteStructure::table_args(std::size_t index, std::size_t arity) const {
  Tuple t(arity);
  for (std::size_t k = arity; k-- > 0;) {
    t[k] = static_cast<Element>(index % size_);
    index /= size_;
  }
  return t;
}

bool FiniteStructure::holds(std::size_t relation, std::span<const Element> args) const {
  const auto& r = vocab_->relations()[relation];
  if (args.size() != r.arity) fail(ErrorCode::kInvalidArgument, "arity mismatch for " + r.name);
  return relations_[relation].dense[table_index(args)] != 0;
}

bool FiniteStructure::holds(std::string_view relation, std::span<const Element> args) const {
  auto idx = vocab_->relation_index(relation);
  if (!idx) fail(ErrorCode::kInvalidArgument, "unknown relation " + std::string(relation));
  return holds(*idx, args);
}

const std::vector<Tuple>& FiniteStructure::tuples(std::string_view relation) const {
  auto idx = vocab_->relation_index(relation);
  if (!idx) fail(ErrorCode::kInvalidArgument, "unknown relation " + std::string(relation));
  return relations_[*idx].tuples;
}

Element FiniteStructure::apply(std::size_t function, std::span<const Element> args) const {
  const auto& f = vocab_->functions()[function];
  if (args.size() != f.arity) fail(ErrorCode::kInvalidArgument, "arity mismatch for " + f.name);
  return functions_[function][table_index(args)];
}

Element FiniteStructure::apply(std::string_view function, std::span<const Element> args) const {
  auto idx = vocab_->function_index(function);
  if (!idx) fail(ErrorCode::kInvalidArgument, "unknown function " + std::string(function));
  return apply(*idx, args);
}

std::size_t FiniteStructure::hash() const {
  std::size_t h = std::hash<std::string>{}(vocab_->signature()) ^ (size_ * 0x9E3779B97F4A7C15ULL);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2); };
  for (const auto& r : relations_) {
    for (std::size_t i = 0; i < r.dense.size(); ++i) {
      if (r.dense[i]) mix(i);
    }
    mix(0xABCDEFULL);
  }
  for (const auto& f : functions_) {
    for (Element v : f) mix(v);
  }
  return h;
}

bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.size_ != b.size_) return false;
  if (a.vocab_ != b.vocab_ && !(*a.vocab_ == *b.vocab_)) return false;
  for (std::size_t i = 0; i < a.relations_.size(); ++i) {
    if (a.relations_[i].dense != b.relations_[i].dense) return false;
  }
  return a.functions_ == b.functions_;
}

std::string FiniteStructure::debug_string() const {
  std::ostringstream os;
  os << "size=" << size_;
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    os << " " << vocab_->relations()[r].name << "={";
    bool first = true;
    for (const auto& t : relations_[r].tuples) {
      if (!first) os << ",";
      first = false;
      os << "(";
      for (std::size_t k = 0; k < t.size(); ++k) os << (k ? "," : "") << t[k];
      os << ")";
    }
    os << "}";
  }
  for (std::size_t f = 0; f < functions_.size(); ++f) {
    os << " " << vocab_->functions()[f].name << "=[";
    for (std::size_t k = 0; k < functions_[f].size(); ++k) {
      os << (k ? "," : "") << functions_[f][k];
    }
    os << "]";
  }
  return os.str();
}

// ----------------------------------------------------------- StructureBuilder

StructureBuilder::StructureBuilder(VocabularyPtr vocab, std::size_t size)
    : vocab_(std::move(vocab)), size_(size) {
  if (size_ > ElementSet::kCapacity) {
    fail(ErrorCode::kInvalidArgument, "universes are limited to 64 elements");
  }
  for (const auto& r : vocab_->relations()) {
    relations_.emplace_back(table_size(size_, r.arity), 0);
  }
  for (const auto& f : vocab_->functions()) {
    functions_.emplace_back(table_size(size_, f.arity), kUnset);
  }
}

StructureBuilder::StructureBuilder(const FiniteStructure& base)
    : vocab_(base.vocab_ptr()), size_(base.size()) {
  for (std::size_t r = 0; r < base.relation_count(); ++r) relations_.push_back(base.indicator(r));
  for (std::size_t f = 0; f < base.function_count(); ++f) {
    functions_.push_back(base.function_table(f));
  }
}

std::size_t StructureBuilder::index(std::span<const Element> args) const {
  return mixed_index(size_, args);
}

StructureBuilder& StructureBuilder::add(std::size_t relation, std::span<const Element> args) {
  if (relation >= relations_.size()) fail(ErrorCode::kInvalidArgument, "no such relation");
  if (args.size() != vocab_->relations()[relation].arity) {
    fail(ErrorCode::kInvalidArgument,
         "arity mismatch for relation " + vocab_->relations()[relation].name);
  }
  relations_[relation][index(args)] = 1;
  return *this;
}

StructureBuilder& StructureBuilder::add(std::string_view relation,
                                        std::initializer_list<Element> args) {
  return add(relation, std::span<const Element>(args.begin(), args.size()));
}

StructureBuilder& StructureBuilder::add(std::string_view relation, std::span<const Element> args) {
  auto idx = vocab_->relation_index(relation);
  if (!idx) fail(ErrorCode::kInvalidArgument, "unknown relation " + std::string(relation));
  return add(*idx, args);
}

StructureBuilder& StructureBuilder::remove(std::size_t relation, std::span<const Element> args) {
  relations_.at(relation)[index(args)] = 0;
  return *this;
}

StructureBuilder& StructureBuilder::set(std::size_t function, std::span<const Element> args,
                                        Element value) {
  if (function >= functions_.size()) fail(ErrorCode::kInvalidArgument, "no such function");
  if (args.size() != vocab_->functions()[function].arity) {
    fail(ErrorCode::kInvalidArgument,
         "arity mismatch for function " + vocab_->functions()[function].name);
  }
  if (value >= size_) fail(ErrorCode::kInvalidArgument, "function value out of range");
  functions_[function][index(args)] = value;
  return *this;
}

StructureBuilder& StructureBuilder::set(std::string_view function,
                                        std::initializer_list<Element> args, Element value) {
  auto idx = vocab_->function_index(function);
  if (!idx) fail(ErrorCode::kInvalidArgument, "unknown function " + std::string(function));
  return set(*idx, std::span<const Element>(args.begin(), args.size()), value);
}

StructureBuilder& StructureBuilder::set_table(std::size_t function, std::vector<Element> values) {
  if (values.size() != functions_.at(function).size()) {
    fail(ErrorCode::kInvalidArgument, "function table has the wrong number of rows");
  }
  for (Element v : values) {
    if (v >= size_) fail(ErrorCode::kInvalidArgument, "function value out of range");
  }
  functions_[function] = std::move(values);
  return *this;
}

FiniteStructure StructureBuilder::build() const {
  if (size_ == 0) return FiniteStructure(vocab_);
  for (std::size_t f = 0; f < functions_.size(); ++f) {
    for (std::size_t i = 0; i < functions_[f].size(); ++i) {
      if (functions_[f][i] == kUnset) {
        fail(ErrorCode::kInvalidArgument,
             "function " + vocab_->functions()[f].name + " is not total (row " +
                 std::to_string(i) + " unset)");
      }
    }
  }
  return FiniteStructure(vocab_, size_, relations_, functions_);
}

}  // namespace muaec
