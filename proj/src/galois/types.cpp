#include "muaec/galois/types.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "muaec/core/error.hpp"
#include "muaec/core/isomorphism.hpp"
#include "muaec/core/parallel.hpp"

namespace muaec {

namespace {

void check_locator(const AecClass& k, const TypeLocator& t) {
  const FiniteStructure& n = *t.structure;
  if (!(n.vocab() == *k.vocab)) {
    fail(ErrorCode::kVocabularyMismatch, "locator structure is not over " + k.name);
  }
  if (!t.params.within_universe(n.size())) {
    fail(ErrorCode::kPrecondition, "parameters " + t.params.to_string() + " leave the universe");
  }
  for (Element b : t.tuple) {
    if (b >= n.size()) fail(ErrorCode::kPrecondition, "tuple entry outside the universe");
  }
}

ElementSet with_tuple(ElementSet a, std::span<const Element> b) {
  for (Element x : b) a.insert(x);
  return a;
}

Induced pointed_closure(const AecClass& k, const TypeLocator& t) {
  const ElementSet cl = closure(k, *t.structure, with_tuple(t.params, t.tuple));
  auto sub = induced_substructure(*t.structure, cl);
  if (!sub) fail(ErrorCode::kInternalContradiction, "closure is not closed under functions");
  return std::move(*sub);
}

std::string join(std::span<const Element> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

bool type_equal(const AecClass& k, const TypeLocator& t1, const TypeLocator& t2) {
  check_locator(k, t1);
  check_locator(k, t2);
  if (t1.params != t2.params) {
    fail(ErrorCode::kParameterMismatch, "types over " + t1.params.to_string() + " and " +
                                            t2.params.to_string() + " are not comparable");
  }
  if (t1.tuple.size() != t2.tuple.size()) return false;
  const Induced c1 = pointed_closure(k, t1);
  const Induced c2 = pointed_closure(k, t2);
  if (c1.structure.size() != c2.structure.size()) return false;
  Tuple from, to;
  for (Element a : t1.params) {
    from.push_back(*c1.local(a));
    to.push_back(*c2.local(a));
  }
  for (std::size_t i = 0; i < t1.tuple.size(); ++i) {
    from.push_back(*c1.local(t1.tuple[i]));
    to.push_back(*c2.local(t2.tuple[i]));
  }
  auto anchor = PartialMap::from_tuples(from, to);
  if (!anchor) return false;
  return are_isomorphic(c1.structure, c2.structure, *anchor);
}

namespace {

// Certificate of b̄ over the parameters of `s`; parameter p is keyed and
// reported by label_of(p), so a relabelled copy of a closure reproduces the
// certificate computed in the original structure.
TypeCertificate certify(const AecClass& k, const FiniteStructure& s, ElementSet params,
                        const std::function<Element(Element)>& label_of,
                        ElementSet param_labels, std::span<const Element> b) {
  const Induced c = pointed_closure(k, TypeLocator(s, params, Tuple(b.begin(), b.end())));
  const std::size_t size = c.structure.size();
  // Key: parameter label (-1 otherwise), then tuple positions.
  std::vector<ColorKey> keys(size);
  for (Element local = 0; local < size; ++local) {
    const Element parent = c.embedding[local];
    keys[local].push_back(params.contains(parent) ? static_cast<std::int64_t>(label_of(parent))
                                                  : -1);
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    keys[*c.local(b[i])].push_back(static_cast<std::int64_t>(i));
  }
  const CanonicalForm form = canonical_form(c.structure, keys);

  TypeCertificate cert{relabel(c.structure, form.labeling), {}, param_labels, {}, {}};
  std::vector<std::pair<Element, Element>> by_label;  // (label, canonical position)
  for (Element p : params) by_label.emplace_back(label_of(p), form.labeling[*c.local(p)]);
  std::sort(by_label.begin(), by_label.end());
  for (const auto& [label, pos] : by_label) cert.params.push_back(pos);
  for (Element x : b) cert.tuple.push_back(form.labeling[*c.local(x)]);
  cert.code = "vocab=" + k.vocab->signature() + " A=" + param_labels.to_string() + " params=[" +
              join(cert.params) + "] tuple=[" + join(cert.tuple) + "] tables=" + form.code;
  return cert;
}

}  // namespace

TypeCertificate canonical_certificate(const AecClass& k, const TypeLocator& t) {
  check_locator(k, t);
  return certify(k, *t.structure, t.params, [](Element p) { return p; }, t.params, t.tuple);
}

std::vector<Tuple> realizations(const AecClass& k, const FiniteStructure& n, ElementSet a,
                                const TypeCertificate& cert) {
  if (a != cert.param_labels) {
    fail(ErrorCode::kParameterMismatch, "certificate is over " + cert.param_labels.to_string() +
                                            ", not " + a.to_string());
  }
  if (!a.within_universe(n.size())) return {};
  const std::size_t len = cert.tuple.size();
  // Inside the certificate: is the tuple in the closure of the parameters?
  ElementSet cert_params;
  for (Element p : cert.params) cert_params.insert(p);
  const ElementSet cert_base = closure(k, cert.structure, cert_params);
  const bool algebraic_tuple = std::all_of(cert.tuple.begin(), cert.tuple.end(),
                                           [&](Element x) { return cert_base.contains(x); });
  const ElementSet pool = algebraic_tuple ? closure(k, n, a) : n.universe();
  const std::vector<Element> candidates = pool.elements();

  std::vector<Tuple> out;
  if (len == 0) {
    if (canonical_certificate(k, TypeLocator(n, a, {})) == cert) out.push_back({});
    return out;
  }
  if (candidates.empty()) return out;

  // Types of proper prefixes of the target, read off the certificate with
  // parameters keyed by their labels in n. A realization's prefixes realize
  // them too, since closures of subsets agree inside strong substructures.
  std::map<Element, Element> label_of;
  {
    const auto labels = a.elements();
    for (std::size_t i = 0; i < cert.params.size(); ++i) label_of[cert.params[i]] = labels[i];
  }
  const auto by_label = [&](Element p) { return label_of.at(p); };
  std::vector<std::string> prefix_codes(len);
  for (std::size_t i = 1; i < len; ++i) {
    prefix_codes[i] =
        certify(k, cert.structure, cert_params, by_label, a, std::span(cert.tuple).first(i)).code;
  }

  Tuple b(len);
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i > 0 && i < len &&
        canonical_certificate(k, TypeLocator(n, a, Tuple(b.begin(), b.begin() + i))).code !=
            prefix_codes[i]) {
      return;
    }
    if (i == len) {
      // A realization's closure has the certificate's size; check that first.
      if (closure(k, n, with_tuple(a, b)).size() == cert.structure.size() &&
          canonical_certificate(k, TypeLocator(n, a, b)) == cert) {
        out.push_back(b);
      }
      return;
    }
    for (Element x : candidates) {
      // The equality pattern of the tuple is part of its type.
      bool pattern_ok = true;
      for (std::size_t j = 0; j < i && pattern_ok; ++j) {
        if ((cert.tuple[i] == cert.tuple[j]) != (x == b[j])) pattern_ok = false;
      }
      if (!pattern_ok) continue;
      b[i] = x;
      extend(i + 1);
    }
  };
  extend(0);
  return out;
}

bool is_eta_algebraic(const AecClass& k, const TypeLocator& t, std::size_t eta) {
  check_locator(k, t);
  const ElementSet base = closure(k, *t.structure, t.params);
  for (Element b : t.tuple) {
    if (!base.contains(b)) {
      fail(ErrorCode::kOutOfClosure, "entry " + std::to_string(b) + " is outside cl(" +
                                         t.params.to_string() + ") = " + base.to_string());
    }
  }
  const auto cert = canonical_certificate(k, t);
  return realizations(k, *t.structure, t.params, cert).size() < eta;
}

MultiuniversalReport audit_multiuniversal(const AecClass& k,
                                          std::span<const FiniteStructure> corpus,
                                          std::size_t eta, const AuditConfig& config) {
  std::vector<MultiuniversalReport> parts(corpus.size());
  parallel_for(corpus.size(), config.jobs, [&](std::size_t i) {
    const FiniteStructure& m = corpus[i];
    auto& part = parts[i];
    for (ElementSet a : audited_subsets(m, i, config)) {
      const ElementSet cl = closure(k, m, a);
      // Every realization of gtp(b/A) with b ∈ cl(A) lies in cl(A), so
      // grouping the closure by certificate counts realizations exactly.
      std::map<std::string, std::vector<Element>> groups;
      for (Element b : cl) {
        groups[canonical_certificate(k, TypeLocator(m, a, {b})).code].push_back(b);
      }
      for (Element b : cl) {
        ++part.instances;
        const std::size_t count =
            groups[canonical_certificate(k, TypeLocator(m, a, {b})).code].size();
        part.max_count = std::max(part.max_count, count);
        if (count >= eta) part.violations.push_back({i, a, b, count});
      }
    }
  });
  MultiuniversalReport report;
  report.eta = eta;
  for (auto& part : parts) {
    report.instances += part.instances;
    report.max_count = std::max(report.max_count, part.max_count);
    report.violations.insert(report.violations.end(), part.violations.begin(),
                             part.violations.end());
  }
  return report;
}

StabilizerOrbit stabilizer_orbit(const AecClass& k, const FiniteStructure& n, ElementSet a,
                                 Element b) {
  const ElementSet cl = closure(k, n, a);
  if (!cl.contains(b)) {
    fail(ErrorCode::kOutOfClosure,
         std::to_string(b) + " is outside cl(" + a.to_string() + ") = " + cl.to_string());
  }
  auto sub = induced_substructure(n, cl);
  ElementSet fixed_local;
  for (Element x : a) fixed_local.insert(*sub->local(x));
  StabilizerOrbit out;
  for (const PartialMap& g : automorphisms(sub->structure, fixed_local)) {
    std::vector<PartialMap::Pair> pairs;
    for (const auto& [x, y] : g.pairs()) pairs.emplace_back(sub->embedding[x], sub->embedding[y]);
    PartialMap lifted(std::move(pairs));
    out.orbit.insert(lifted.at(b));
    out.group.push_back(std::move(lifted));
  }
  return out;
}

}  // namespace muaec
