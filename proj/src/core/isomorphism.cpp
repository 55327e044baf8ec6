#include "muaec/core/isomorphism.hpp"

#include <algorithm>
#include <numeric>

#include "muaec/core/error.hpp"
#include "refinement.hpp"

namespace muaec {

namespace {

constexpr Element kNone = ~Element{0};

class IsoSearch {
 public:
  IsoSearch(const FiniteStructure& a, const FiniteStructure& b, const detail::Refiner& refiner,
            std::vector<std::uint32_t> colors, std::optional<std::size_t> limit)
      : a_(a),
        b_(b),
        n_(a.size()),
        nrel_(a.relation_count()),
        refiner_(refiner),
        colors_(std::move(colors)),
        limit_(limit),
        img_(n_, kNone),
        pre_(n_, kNone) {}

  bool assign(Element v, Element w) {
    if (img_[v] != kNone) return img_[v] == w;
    if (pre_[w] != kNone) return false;
    img_[v] = w;
    pre_[w] = v;
    if (!consistent(v, w)) {
      img_[v] = kNone;
      pre_[w] = kNone;
      return false;
    }
    return true;
  }

  void run(std::vector<Element> order) {
    order_ = std::move(order);
    descend(0);
  }

  std::vector<PartialMap> take() { return std::move(found_); }

 private:
  bool done() const { return limit_ && found_.size() >= *limit_; }

  void descend(std::size_t depth) {
    if (done()) return;
    if (depth == order_.size()) {
      PartialMap f = PartialMap::from_images(img_);
      if (is_isomorphism(a_, b_, f)) found_.push_back(std::move(f));
      return;
    }
    const Element v = order_[depth];
    for (Element w = 0; w < n_ && !done(); ++w) {
      if (pre_[w] != kNone || colors_[n_ + w] != colors_[v]) continue;
      img_[v] = w;
      pre_[w] = v;
      if (consistent(v, w)) descend(depth + 1);
      img_[v] = kNone;
      pre_[w] = kNone;
    }
  }

  // Checks every fully-mapped row through v (in a) and through w (in b).
  bool consistent(Element v, Element w) {
    for (const auto& inc : refiner_.incidences(v)) {
      const auto& row = refiner_.rows()[inc.row];
      mapped_.clear();
      bool complete = true;
      for (std::uint32_t u : row.vertices) {
        if (img_[u] == kNone) {
          complete = false;
          break;
        }
        mapped_.push_back(img_[u]);
      }
      if (complete && !row_holds(b_, row.symbol, mapped_)) return false;
    }
    for (const auto& inc : refiner_.incidences(static_cast<std::uint32_t>(n_ + w))) {
      const auto& row = refiner_.rows()[inc.row];
      mapped_.clear();
      bool complete = true;
      for (std::uint32_t u : row.vertices) {
        const Element local = u - static_cast<Element>(n_);
        if (pre_[local] == kNone) {
          complete = false;
          break;
        }
        mapped_.push_back(pre_[local]);
      }
      if (complete && !row_holds(a_, row.symbol, mapped_)) return false;
    }
    return true;
  }

  bool row_holds(const FiniteStructure& s, std::uint32_t symbol, const Tuple& t) const {
    if (symbol < nrel_) return s.holds(symbol, t);
    const std::size_t f = symbol - nrel_;
    const std::span<const Element> args(t.data(), t.size() - 1);
    return s.apply(f, args) == t.back();
  }

  const FiniteStructure& a_;
  const FiniteStructure& b_;
  std::size_t n_;
  std::size_t nrel_;
  const detail::Refiner& refiner_;
  std::vector<std::uint32_t> colors_;
  std::optional<std::size_t> limit_;
  std::vector<Element> img_;
  std::vector<Element> pre_;
  std::vector<Element> order_;
  Tuple mapped_;
  std::vector<PartialMap> found_;
};

}  // namespace

std::vector<PartialMap> find_isomorphisms(const FiniteStructure& a, const FiniteStructure& b,
                                          const PartialMap& anchor,
                                          std::optional<std::size_t> limit) {
  if (!(a.vocab() == b.vocab())) {
    fail(ErrorCode::kVocabularyMismatch, "isomorphism search across distinct signatures");
  }
  for (const auto& [x, y] : anchor.pairs()) {
    if (x >= a.size() || y >= b.size()) {
      fail(ErrorCode::kPrecondition, "anchor " + anchor.to_string() + " leaves the universes");
    }
  }
  if (limit && *limit == 0) return {};
  const std::size_t n = a.size();
  if (n != b.size()) return {};
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    if (a.tuples(r).size() != b.tuples(r).size()) return {};
  }
  if (n == 0) return {PartialMap{}};

  const FiniteStructure* both[] = {&a, &b};
  detail::Refiner refiner(both);
  std::vector<std::uint32_t> colors(2 * n, 0);
  std::uint32_t next = 1;
  for (const auto& [x, y] : anchor.pairs()) {
    colors[x] = next;
    colors[n + y] = next;
    ++next;
  }
  refiner.refine(colors);

  std::vector<std::size_t> count_a(2 * n + 1, 0), count_b(2 * n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++count_a[colors[v]];
    ++count_b[colors[n + v]];
  }
  if (count_a != count_b) return {};

  IsoSearch search(a, b, refiner, colors, limit);
  for (const auto& [x, y] : anchor.pairs()) {
    if (!search.assign(x, y)) return {};
  }
  std::vector<Element> order;
  for (Element v = 0; v < n; ++v) {
    if (!anchor(v)) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](Element x, Element y) {
    return count_a[colors[x]] < count_a[colors[y]];
  });
  search.run(std::move(order));
  return search.take();
}

bool are_isomorphic(const FiniteStructure& a, const FiniteStructure& b, const PartialMap& anchor) {
  return !find_isomorphisms(a, b, anchor, 1).empty();
}

std::vector<PartialMap> automorphisms(const FiniteStructure& s, ElementSet fixed) {
  return find_isomorphisms(s, s, PartialMap::identity(fixed));
}

// ------------------------------------------------------------- canonical form

namespace {

class CanonicalSearch {
 public:
  CanonicalSearch(const FiniteStructure& s, const detail::Refiner& refiner)
      : s_(s), n_(s.size()), refiner_(refiner) {}

  void run(std::vector<std::uint32_t> colors) {
    std::vector<Element> path;
    descend(std::move(colors), path);
  }

  const std::vector<Element>& best_labeling() const { return best_lab_; }
  const std::vector<std::uint32_t>& best_code() const { return best_code_; }

 private:
  void descend(std::vector<std::uint32_t> colors, std::vector<Element>& path) {
    refiner_.refine(colors);
    const std::size_t cells = detail::count_cells(colors);
    if (cells == n_) {
      leaf(colors);
      return;
    }
    // First cell (lowest colour) with more than one member.
    std::vector<std::size_t> sizes(cells, 0);
    for (auto c : colors) ++sizes[c];
    std::uint32_t target = 0;
    while (sizes[target] < 2) ++target;
    std::vector<Element> members;
    for (Element v = 0; v < n_; ++v) {
      if (colors[v] == target) members.push_back(v);
    }

    std::vector<Element> explored;
    for (Element v : members) {
      if (!explored.empty() && in_explored_orbit(v, explored, path)) continue;
      explored.push_back(v);
      std::vector<std::uint32_t> child(n_);
      for (Element u = 0; u < n_; ++u) {
        child[u] = 2 * colors[u] + ((colors[u] == target && u != v) ? 1 : 0);
      }
      path.push_back(v);
      descend(detail::rank_keys(child), path);
      path.pop_back();
    }
  }

  bool in_explored_orbit(Element v, const std::vector<Element>& explored,
                         const std::vector<Element>& path) const {
    if (generators_.empty()) return false;
    std::vector<Element> parent(n_);
    std::iota(parent.begin(), parent.end(), Element{0});
    auto find = [&](Element x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : generators_) {
      if (!std::all_of(path.begin(), path.end(), [&](Element p) { return g[p] == p; })) continue;
      for (Element x = 0; x < n_; ++x) {
        Element rx = find(x), ry = find(g[x]);
        if (rx != ry) parent[rx] = ry;
      }
    }
    const Element rv = find(v);
    return std::any_of(explored.begin(), explored.end(),
                       [&](Element u) { return find(u) == rv; });
  }

  void leaf(const std::vector<std::uint32_t>& colors) {
    std::vector<Element> lab(colors.begin(), colors.end());
    std::vector<std::uint32_t> code = leaf_code(lab);
    if (!have_best_) {
      have_best_ = true;
      best_lab_ = lab;
      best_code_ = std::move(code);
      first_lab_ = best_lab_;
      first_code_ = best_code_;
      return;
    }
    if (code == best_code_) {
      record_automorphism(best_lab_, lab);
    } else if (code == first_code_) {
      record_automorphism(first_lab_, lab);
    } else if (code < best_code_) {
      best_code_ = std::move(code);
      best_lab_ = lab;
    }
  }

  void record_automorphism(const std::vector<Element>& ref, const std::vector<Element>& lab) {
    std::vector<Element> ref_inverse(n_);
    for (Element v = 0; v < n_; ++v) ref_inverse[ref[v]] = v;
    std::vector<Element> g(n_);
    for (Element v = 0; v < n_; ++v) g[v] = ref_inverse[lab[v]];
    generators_.push_back(std::move(g));
  }

  std::vector<std::uint32_t> leaf_code(const std::vector<Element>& lab) const {
    std::vector<std::uint32_t> code;
    Tuple mapped;
    for (std::size_t r = 0; r < s_.relation_count(); ++r) {
      std::vector<std::uint32_t> idx;
      for (const Tuple& t : s_.tuples(r)) {
        mapped.resize(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) mapped[k] = lab[t[k]];
        idx.push_back(static_cast<std::uint32_t>(s_.table_index(mapped)));
      }
      std::sort(idx.begin(), idx.end());
      code.push_back(static_cast<std::uint32_t>(idx.size()));
      code.insert(code.end(), idx.begin(), idx.end());
    }
    for (std::size_t f = 0; f < s_.function_count(); ++f) {
      const std::size_t arity = s_.vocab().functions()[f].arity;
      const auto& table = s_.function_table(f);
      std::vector<std::uint32_t> values(table.size());
      for (std::size_t i = 0; i < table.size(); ++i) {
        Tuple args = s_.table_args(i, arity);
        for (auto& x : args) x = lab[x];
        values[s_.table_index(args)] = lab[table[i]];
      }
      code.insert(code.end(), values.begin(), values.end());
    }
    return code;
  }

  const FiniteStructure& s_;
  std::size_t n_;
  const detail::Refiner& refiner_;
  bool have_best_ = false;
  std::vector<Element> best_lab_, first_lab_;
  std::vector<std::uint32_t> best_code_, first_code_;
  std::vector<std::vector<Element>> generators_;
};

std::string render_code(const FiniteStructure& s, std::span<const ColorKey> keys,
                        const std::vector<Element>& lab) {
  const std::size_t n = s.size();
  std::vector<Element> inverse(n);
  for (Element v = 0; v < n; ++v) inverse[lab[v]] = v;
  std::string out = std::to_string(n) + "|";
  for (std::size_t p = 0; p < n; ++p) {
    if (p) out += ';';
    const ColorKey& key = keys[inverse[p]];
    for (std::size_t k = 0; k < key.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(key[k]);
    }
  }
  Tuple mapped;
  for (std::size_t r = 0; r < s.relation_count(); ++r) {
    std::vector<std::size_t> idx;
    for (const Tuple& t : s.tuples(r)) {
      mapped.resize(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) mapped[k] = lab[t[k]];
      idx.push_back(n == 0 ? 0 : s.table_index(mapped));
    }
    std::sort(idx.begin(), idx.end());
    out += "|" + s.vocab().relations()[r].name + ":";
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(idx[i]);
    }
  }
  for (std::size_t f = 0; f < s.function_count(); ++f) {
    const std::size_t arity = s.vocab().functions()[f].arity;
    const auto& table = s.function_table(f);
    std::vector<Element> values(n == 0 ? 0 : table.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      Tuple args = s.table_args(i, arity);
      for (auto& x : args) x = lab[x];
      values[s.table_index(args)] = lab[table[i]];
    }
    out += "|" + s.vocab().functions()[f].name + "():";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace

CanonicalForm canonical_form(const FiniteStructure& s, std::span<const ColorKey> keys) {
  const std::size_t n = s.size();
  if (keys.size() != n) fail(ErrorCode::kInvalidArgument, "one colour key per element required");
  if (n == 0) return {{}, render_code(s, keys, {})};
  const FiniteStructure* one[] = {&s};
  detail::Refiner refiner(one);
  std::vector<ColorKey> key_vec(keys.begin(), keys.end());
  CanonicalSearch search(s, refiner);
  search.run(detail::rank_keys(key_vec));
  CanonicalForm out;
  out.labeling = search.best_labeling();
  out.code = render_code(s, keys, out.labeling);
  return out;
}

CanonicalForm canonical_form(const FiniteStructure& s) {
  std::vector<ColorKey> keys(s.size(), ColorKey{});
  return canonical_form(s, keys);
}

}  // namespace muaec
