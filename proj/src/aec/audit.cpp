#include "muaec/aec/audit.hpp"

#include <random>

#include "muaec/core/parallel.hpp"

namespace muaec {

std::vector<ElementSet> audited_subsets(const FiniteStructure& n, std::size_t index,
                                        const AuditConfig& config) {
  if (n.size() <= config.exhaustive_bound) return subsets_by_size(n.universe());
  std::mt19937_64 rng(config.seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  std::vector<ElementSet> out;
  out.reserve(config.samples);
  for (std::size_t i = 0; i < config.samples; ++i) {
    out.push_back(ElementSet(rng() & n.universe().bits()));
  }
  return out;
}

namespace {

template <typename PerStructure>
AuditReport run_per_structure(std::string check, std::span<const FiniteStructure> corpus,
                              const AuditConfig& config, PerStructure&& body) {
  std::vector<AuditReport> parts(corpus.size());
  parallel_for(corpus.size(), config.jobs, [&](std::size_t i) { body(i, parts[i]); });
  AuditReport report;
  report.check = std::move(check);
  for (auto& part : parts) {
    report.instances += part.instances;
    for (auto& v : part.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

std::string why_not_strong(const AecClass& k, const FiniteStructure& n, ElementSet s) {
  auto sub = induced_substructure(n, s);
  if (!sub) return "not closed under the functions";
  if (!k.member(sub->structure)) return "induced structure is not a member";
  return "induced structure is not strong in N";
}

}  // namespace

AuditReport audit_intersections(const AecClass& k, std::span<const FiniteStructure> corpus,
                                const AuditConfig& config) {
  return run_per_structure(
      "intersections", corpus, config, [&](std::size_t i, AuditReport& part) {
        const FiniteStructure& n = corpus[i];
        StrongFamily family(k, n);
        for (ElementSet a : audited_subsets(n, i, config)) {
          ++part.instances;
          ClosureResult cl = family.closure(a);
          if (cl.no_strong_subset_found) {
            part.violations.push_back({i, a, "no strong subset contains A"});
          } else if (!family.contains(cl.set)) {
            part.violations.push_back(
                {i, a, "closure " + cl.set.to_string() + ": " + why_not_strong(k, n, cl.set)});
          }
        }
      });
}

AuditReport audit_class_contract(const AecClass& k, std::span<const FiniteStructure> corpus,
                                 const AuditConfig& config) {
  return run_per_structure(
      "class-contract", corpus, config, [&](std::size_t i, AuditReport& part) {
        const FiniteStructure& n = corpus[i];
        ++part.instances;
        if (!k.member(n)) {
          part.violations.push_back({i, n.universe(), "corpus structure is not a member"});
          return;
        }
        if (!k.strong_sub(n, n, PartialMap::identity(n.universe()))) {
          part.violations.push_back({i, n.universe(), "strong_sub is not reflexive"});
        }
        if (n.size() > config.exhaustive_bound) return;
        StrongFamily family(k, n);
        for (ElementSet mid : family.strong_subsets()) {
          auto sub = induced_substructure(n, mid);
          if (!is_substructure(sub->structure, n, PartialMap::from_images(sub->embedding))) {
            part.violations.push_back({i, mid, "strong subset is not a substructure"});
          }
          for_each_subset_by_size(sub->structure.universe(), [&](ElementSet local) {
            ++part.instances;
            if (!is_strong_subset(k, sub->structure, local)) return true;
            ElementSet global;
            for (Element e : local) global.insert(sub->embedding[e]);
            if (!family.contains(global)) {
              part.violations.push_back(
                  {i, global, "strong in " + mid.to_string() + " which is strong, but not strong"});
            }
            return true;
          });
        }
      });
}

AuditReport audit_fast_closure(const AecClass& k, std::span<const FiniteStructure> corpus,
                               const AuditConfig& config) {
  if (!k.fast_closure) return AuditReport{"fast-closure", 0, {}};
  return run_per_structure(
      "fast-closure", corpus, config, [&](std::size_t i, AuditReport& part) {
        const FiniteStructure& n = corpus[i];
        StrongFamily family(k, n);
        for (ElementSet a : audited_subsets(n, i, config)) {
          ++part.instances;
          const ElementSet fast = k.fast_closure(n, a);
          const ElementSet slow = family.closure(a).set;
          if (fast != slow) {
            part.violations.push_back(
                {i, a, "fast " + fast.to_string() + " != generic " + slow.to_string()});
          }
        }
      });
}

AuditReport audit_transport(const AecClass& k, std::span<const FiniteStructure> corpus,
                            const AuditConfig& config) {
  return run_per_structure(
      "transport", corpus, config, [&](std::size_t i, AuditReport& part) {
        const FiniteStructure& n = corpus[i];
        StrongFamily family(k, n);
        for (ElementSet s : family.strong_subsets()) {
          auto m = induced_substructure(n, s);
          const PartialMap inclusion = PartialMap::from_images(m->embedding);
          for (ElementSet local : audited_subsets(m->structure, i, config)) {
            ++part.instances;
            if (!transport_closure_check(k, m->structure, n, inclusion, local)) {
              const ElementSet a = image(inclusion, local);
              part.violations.push_back(
                  {i, a, "inside strong " + s.to_string() + " the closure is " +
                             image(inclusion, closure(k, m->structure, local)).to_string() +
                             ", in N it is " + family.closure(a).set.to_string()});
            }
          }
        }
      });
}

}  // namespace muaec
