#include "muaec/morley/chain.hpp"

#include "muaec/core/error.hpp"
#include "muaec/core/isomorphism.hpp"
#include "muaec/galois/types.hpp"

namespace muaec {

namespace {

std::string index_text(const std::vector<std::size_t>& index_set) {
  std::string s = "{";
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    s += (i ? "," : "") + std::to_string(index_set[i]);
  }
  return s + "}";
}

std::vector<std::size_t> prefix(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

ElementSet entries(std::span<const Element> t) {
  ElementSet s;
  for (Element x : t) s.insert(x);
  return s;
}

void validate(const AecClass& k, const SatisfiabilityWitness& w,
              const std::vector<std::size_t>& index_set) {
  const std::string where = "witness for " + index_text(index_set);
  if (!(w.structure.vocab() == *k.vocab) || !k.member(w.structure)) {
    fail(ErrorCode::kInvalidArgument, where + " is not a member of " + k.name);
  }
  if (w.tuple.size() != index_set.size()) {
    fail(ErrorCode::kInvalidArgument, where + " has a tuple of the wrong length");
  }
  for (Element x : w.tuple) {
    if (x >= w.structure.size()) fail(ErrorCode::kInvalidArgument, where + " leaves its universe");
  }
}

SatisfiabilityWitness require(const AecClass& k, const SatisfiabilityOracle& oracle,
                              const std::vector<std::size_t>& index_set) {
  auto w = oracle(index_set);
  if (!w) fail(ErrorCode::kInvalidArgument, "no witness for " + index_text(index_set));
  validate(k, *w, index_set);
  return std::move(*w);
}

std::string type_code(const AecClass& k, const FiniteStructure& m, const Tuple& t) {
  return canonical_certificate(k, TypeLocator(m, {}, t)).code;
}

}  // namespace

SatisfiabilityOracle scripted_oracle(std::vector<OracleRecord> records) {
  return [records = std::move(records)](const std::vector<std::size_t>& index_set)
             -> std::optional<SatisfiabilityWitness> {
    for (const auto& r : records) {
      if (r.index_set == index_set) return r.witness;
    }
    return std::nullopt;
  };
}

ChainResult compactness_chain(const AecClass& k, const SatisfiabilityOracle& oracle,
                              std::size_t depth) {
  if (depth == 0 || depth > 24) {
    fail(ErrorCode::kInvalidArgument, "chain depth must lie in 1..24");
  }

  SatisfiabilityWitness first = require(k, oracle, {0});
  std::vector<FiniteStructure> objects{first.structure};
  std::vector<Tuple> tuples{first.tuple};
  std::vector<PartialMap> steps;
  SatisfiabilityWitness top = first;

  for (std::size_t stage = 1; stage < depth; ++stage) {
    const auto index_set = prefix(stage + 1);
    SatisfiabilityWitness w = require(k, oracle, index_set);
    const FiniteStructure& m = objects.back();
    const Tuple& b = tuples.back();
    const Tuple head(w.tuple.begin(), w.tuple.begin() + static_cast<std::ptrdiff_t>(stage));

    // The witness's first `stage` entries must have the type already built.
    auto cw = induced_substructure(w.structure, closure(k, w.structure, entries(head)));
    auto cm = induced_substructure(m, closure(k, m, entries(b)));
    Tuple from, to;
    for (std::size_t i = 0; i < stage; ++i) {
      from.push_back(*cw->local(head[i]));
      to.push_back(*cm->local(b[i]));
    }
    auto anchor = PartialMap::from_tuples(from, to);
    std::vector<PartialMap> match;
    if (anchor && cw->structure.size() == cm->structure.size()) {
      match = find_isomorphisms(cw->structure, cm->structure, *anchor, 1);
    }
    if (match.empty()) {
      fail(ErrorCode::kCompletenessViolation,
           "witness for " + index_text(index_set) + " disagrees with " +
               index_text(prefix(stage)) + " on the first " + std::to_string(stage) +
               " variables");
    }

    // Free amalgam of W and M over the matched closure C.
    EmbeddingSystem span;
    span.objects = {cw->structure, w.structure, m};
    span.arrows.push_back({0, 1, PartialMap::from_images(cw->embedding)});
    std::vector<Element> into_m(cw->structure.size());
    for (Element x = 0; x < into_m.size(); ++x) into_m[x] = cm->embedding[match[0].at(x)];
    span.arrows.push_back({0, 2, PartialMap::from_images(into_m)});
    std::optional<Colimit> amalgam;
    try {
      amalgam = colimit(span);
    } catch (const Error& e) {
      fail(ErrorCode::kAmalgamationFailure,
           "stage " + std::to_string(stage) + ": " + e.what());
    }
    const FiniteStructure& next = amalgam->structure;
    if (!k.member(next) || !k.strong_sub(m, next, amalgam->cocone[2]) ||
        !k.strong_sub(w.structure, next, amalgam->cocone[1])) {
      fail(ErrorCode::kAmalgamationFailure,
           "stage " + std::to_string(stage) + ": the amalgam over the closure of " +
               index_text(prefix(stage)) + " is not a strong extension");
    }
    Tuple extended = b;
    extended.push_back(amalgam->cocone[1].at(w.tuple[stage]));
    steps.push_back(amalgam->cocone[2]);
    objects.push_back(next);
    tuples.push_back(std::move(extended));
    top = std::move(w);
  }

  ChainResult out{EmbeddingSystem::chain(objects, steps), tuples, {FiniteStructure(k.vocab), {}}};
  check_coherence(out.system);
  out.colimit = colimit(out.system);

  const FiniteStructure& md = out.system.objects.back();
  const Tuple& bd = out.tuples.back();
  if (type_code(k, md, bd) != type_code(k, top.structure, top.tuple)) {
    fail(ErrorCode::kInternalContradiction, "final tuple does not realize the last witness's type");
  }
  // Every other record on file must agree with the restriction of b̄_d.
  const std::size_t subsets = std::size_t{1} << depth;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::vector<std::size_t> index_set;
    Tuple restricted;
    for (std::size_t i = 0; i < depth; ++i) {
      if (mask >> i & 1) {
        index_set.push_back(i);
        restricted.push_back(bd[i]);
      }
    }
    auto w = oracle(index_set);
    if (!w) continue;
    validate(k, *w, index_set);
    if (type_code(k, w->structure, w->tuple) != type_code(k, md, restricted)) {
      fail(ErrorCode::kCompletenessViolation,
           "witness for " + index_text(index_set) + " disagrees with the chain's realization");
    }
  }
  return out;
}

}  // namespace muaec
