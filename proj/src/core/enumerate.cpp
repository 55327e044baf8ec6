#include "muaec/core/enumerate.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "muaec/core/error.hpp"
#include "muaec/core/isomorphism.hpp"

namespace muaec {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp && out != kSaturated; ++i) out = sat_mul(out, base);
  if (base == 0 && exp == 0) return 1;
  return out;
}

std::uint64_t cells(std::size_t n, std::size_t arity) {
  return sat_pow(n, arity);
}

}  // namespace

std::uint64_t candidate_count(const Vocabulary& vocab, std::size_t min_size,
                              std::size_t max_size) {
  std::uint64_t total = 0;
  for (std::size_t n = min_size; n <= max_size; ++n) {
    std::uint64_t count = 1;
    for (const auto& r : vocab.relations()) count = sat_mul(count, sat_pow(2, cells(n, r.arity)));
    for (const auto& f : vocab.functions()) count = sat_mul(count, sat_pow(n, cells(n, f.arity)));
    total = (kSaturated - total < count) ? kSaturated : total + count;
  }
  return total;
}

void enumerate_all_structures(const VocabularyPtr& vocab, std::size_t max_size,
                              const StructureFilter& filter,
                              const std::function<bool(const FiniteStructure&)>& visit,
                              const EnumerateOptions& options) {
  const std::uint64_t count = candidate_count(*vocab, options.min_size, max_size);
  if (count > options.budget) {
    fail(ErrorCode::kBudgetExceeded,
         "enumeration needs " + (count == kSaturated ? std::string("more than 2^64")
                                                     : std::to_string(count)) +
             " candidate structures, budget is " + std::to_string(options.budget));
  }
  for (std::size_t n = options.min_size; n <= max_size; ++n) {
    if (n == 0 && vocab->has_constants()) continue;
    std::unordered_set<std::string> seen;
    // Odometer digits: relation cells (radix 2), then function cells (radix n).
    std::vector<std::size_t> radix;
    for (const auto& r : vocab->relations()) radix.insert(radix.end(), cells(n, r.arity), 2);
    for (const auto& f : vocab->functions()) radix.insert(radix.end(), cells(n, f.arity), n);
    if (std::any_of(radix.begin(), radix.end(), [](std::size_t r) { return r == 0; })) continue;
    std::vector<std::size_t> digits(radix.size(), 0);
    while (true) {
      StructureBuilder builder(vocab, n);
      std::size_t d = 0;
      for (std::size_t r = 0; r < vocab->relations().size(); ++r) {
        const std::size_t arity = vocab->relations()[r].arity;
        const std::size_t m = cells(n, arity);
        for (std::size_t i = 0; i < m; ++i, ++d) {
          if (digits[d] == 0) continue;
          Tuple args(arity);
          std::size_t rest = i;
          for (std::size_t k = arity; k-- > 0;) {
            args[k] = static_cast<Element>(rest % n);
            rest /= n;
          }
          builder.add(r, args);
        }
      }
      for (std::size_t f = 0; f < vocab->functions().size(); ++f) {
        const std::size_t m = cells(n, vocab->functions()[f].arity);
        std::vector<Element> values(m);
        for (std::size_t i = 0; i < m; ++i, ++d) values[i] = static_cast<Element>(digits[d]);
        builder.set_table(f, std::move(values));
      }
      FiniteStructure s = builder.build();
      bool keep = !filter || filter(s);
      if (keep && options.dedup_isomorphic) keep = seen.insert(canonical_form(s).code).second;
      if (keep && !visit(s)) return;

      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == radix[pos]) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }
}

std::vector<FiniteStructure> all_structures(const VocabularyPtr& vocab, std::size_t max_size,
                                            const StructureFilter& filter,
                                            const EnumerateOptions& options) {
  std::vector<FiniteStructure> out;
  enumerate_all_structures(
      vocab, max_size, filter,
      [&](const FiniteStructure& s) {
        out.push_back(s);
        return true;
      },
      options);
  return out;
}

}  // namespace muaec
