#pragma once

#include <vector>

namespace muaec {

namespace detail {

// k-combinations of `pool` in lexicographic order, each OR-ed into `base`.
template <typename Fn>
bool for_each_combination(const std::vector<Element>& pool, std::size_t k, ElementSet base,
                          Fn& fn) {
  const std::size_t m = pool.size();
  if (k > m) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    ElementSet s = base;
    for (std::size_t i : idx) s.insert(pool[i]);
    if (!fn(s)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

template <typename Fn>
void for_each_superset(ElementSet base, ElementSet universe, Fn&& fn) {
  const std::vector<Element> pool = universe.minus(base).elements();
  for (std::size_t k = 0; k <= pool.size(); ++k) {
    if (!detail::for_each_combination(pool, k, base, fn)) return;
  }
}

template <typename Fn>
void for_each_subset_by_size(ElementSet set, Fn&& fn) {
  for_each_superset(ElementSet{}, set, std::forward<Fn>(fn));
}

}  // namespace muaec
