#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace muaec {

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// A finite signature. Relation and function symbols share one namespace;
/// constants are 0-ary functions. Symbol order is part of the identity.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<Symbol> relations, std::vector<Symbol> functions);

  const std::vector<Symbol>& relations() const { return relations_; }
  const std::vector<Symbol>& functions() const { return functions_; }

  std::optional<std::size_t> relation_index(std::string_view name) const;
  std::optional<std::size_t> function_index(std::string_view name) const;
  bool has_constants() const;
  bool is_relational() const { return functions_.empty(); }

  /// A copy with `extra` relation symbols appended.
  Vocabulary with_relations(const std::vector<Symbol>& extra) const;

  /// Compact signature text, e.g. "E/2;s()/1".
  std::string signature() const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<Symbol> relations_;
  std::vector<Symbol> functions_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

inline VocabularyPtr make_vocabulary(std::vector<Symbol> relations,
                                     std::vector<Symbol> functions = {}) {
  return std::make_shared<const Vocabulary>(std::move(relations), std::move(functions));
}

}  // namespace muaec
