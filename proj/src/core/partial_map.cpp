#include "muaec/core/partial_map.hpp"

#include <algorithm>

#include "muaec/core/error.hpp"

namespace muaec {

PartialMap::PartialMap(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (std::size_t i = 1; i < pairs_.size(); ++i) {
    if (pairs_[i].first == pairs_[i - 1].first) {
      fail(ErrorCode::kInvalidArgument,
           "partial map is not functional at " + std::to_string(pairs_[i].first));
    }
  }
  std::vector<Element> targets;
  for (const auto& p : pairs_) targets.push_back(p.second);
  std::sort(targets.begin(), targets.end());
  if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) {
    fail(ErrorCode::kInvalidArgument, "partial map is not injective");
  }
}

PartialMap PartialMap::identity(ElementSet domain) {
  std::vector<Pair> pairs;
  for (Element e : domain) pairs.emplace_back(e, e);
  PartialMap m;
  m.pairs_ = std::move(pairs);
  return m;
}

PartialMap PartialMap::from_images(std::span<const Element> images) {
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < images.size(); ++i) {
    pairs.emplace_back(static_cast<Element>(i), images[i]);
  }
  return PartialMap(std::move(pairs));
}

std::optional<PartialMap> PartialMap::from_tuples(std::span<const Element> from,
                                                  std::span<const Element> to) {
  if (from.size() != to.size()) return std::nullopt;
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < from.size(); ++i) pairs.emplace_back(from[i], to[i]);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) return std::nullopt;
  }
  std::vector<Element> targets;
  for (const auto& p : pairs) targets.push_back(p.second);
  std::sort(targets.begin(), targets.end());
  if (std::adjacent_find(targets.begin(), targets.end()) != targets.end()) return std::nullopt;
  PartialMap m;
  m.pairs_ = std::move(pairs);
  return m;
}

std::optional<Element> PartialMap::operator()(Element x) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{x, 0});
  if (it == pairs_.end() || it->first != x) return std::nullopt;
  return it->second;
}

Element PartialMap::at(Element x) const {
  auto v = (*this)(x);
  if (!v) fail(ErrorCode::kPrecondition, std::to_string(x) + " is outside the map's domain");
  return *v;
}

Tuple PartialMap::apply(std::span<const Element> xs) const {
  Tuple out;
  out.reserve(xs.size());
  for (Element x : xs) out.push_back(at(x));
  return out;
}

ElementSet PartialMap::domain() const {
  ElementSet s;
  for (const auto& p : pairs_) s.insert(p.first);
  return s;
}

ElementSet PartialMap::range() const {
  ElementSet s;
  for (const auto& p : pairs_) s.insert(p.second);
  return s;
}

PartialMap PartialMap::after(const PartialMap& inner) const {
  std::vector<Pair> pairs;
  for (const auto& [x, y] : inner.pairs_) {
    if (auto z = (*this)(y)) pairs.emplace_back(x, *z);
  }
  return PartialMap(std::move(pairs));
}

PartialMap PartialMap::inverse() const {
  std::vector<Pair> pairs;
  for (const auto& [x, y] : pairs_) pairs.emplace_back(y, x);
  return PartialMap(std::move(pairs));
}

PartialMap PartialMap::restricted_to(ElementSet domain) const {
  PartialMap m;
  for (const auto& p : pairs_) {
    if (domain.contains(p.first)) m.pairs_.push_back(p);
  }
  return m;
}

bool PartialMap::extends(const PartialMap& smaller) const {
  return std::all_of(smaller.pairs_.begin(), smaller.pairs_.end(), [&](const Pair& p) {
    auto v = (*this)(p.first);
    return v && *v == p.second;
  });
}

std::optional<PartialMap> PartialMap::merged(const PartialMap& other) const {
  std::vector<Pair> pairs = pairs_;
  pairs.insert(pairs.end(), other.pairs_.begin(), other.pairs_.end());
  std::vector<Element> from, to;
  for (const auto& p : pairs) {
    from.push_back(p.first);
    to.push_back(p.second);
  }
  return from_tuples(from, to);
}

std::string PartialMap::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(pairs_[i].first) + "->" + std::to_string(pairs_[i].second);
  }
  return s + "}";
}

namespace {

// Shared check: f total on `a`, injective into `b`, relations reflected on
// f's image, functions commute.
bool preserves_tables(const FiniteStructure& a, const FiniteStructure& b, const PartialMap& f) {
  const std::size_t n = a.size();
  if (!f.is_total_on(n)) return false;
  std::vector<Element> img(n);
  for (const auto& [x, y] : f.pairs()) {
    if (y >= b.size()) return false;
    img[x] = y;
  }
  Tuple args, mapped;
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const std::size_t arity = a.vocab().relations()[r].arity;
    const auto& dense = a.indicator(r);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      args = a.table_args(i, arity);
      mapped.resize(arity);
      for (std::size_t k = 0; k < arity; ++k) mapped[k] = img[args[k]];
      if ((dense[i] != 0) != b.holds(r, mapped)) return false;
    }
    if (arity == 0 && n == 0 && a.indicator(r) != b.indicator(r)) return false;
  }
  for (std::size_t fn = 0; fn < a.function_count(); ++fn) {
    const std::size_t arity = a.vocab().functions()[fn].arity;
    const auto& table = a.function_table(fn);
    if (n == 0) continue;
    for (std::size_t i = 0; i < table.size(); ++i) {
      args = a.table_args(i, arity);
      mapped.resize(arity);
      for (std::size_t k = 0; k < arity; ++k) mapped[k] = img[args[k]];
      if (b.apply(fn, mapped) != img[table[i]]) return false;
    }
  }
  return true;
}

}  // namespace

bool is_isomorphism(const FiniteStructure& a, const FiniteStructure& b, const PartialMap& f) {
  if (!(a.vocab() == b.vocab())) {
    fail(ErrorCode::kVocabularyMismatch, "isomorphism test across distinct signatures");
  }
  return a.size() == b.size() && preserves_tables(a, b, f);
}

bool is_substructure(const FiniteStructure& small, const FiniteStructure& big,
                     const PartialMap& inclusion) {
  if (!(small.vocab() == big.vocab())) {
    fail(ErrorCode::kVocabularyMismatch, "substructure test across distinct signatures");
  }
  return preserves_tables(small, big, inclusion);
}

}  // namespace muaec
