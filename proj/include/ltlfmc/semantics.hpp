#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <ltlfmc/formula.hpp>
#include <ltlfmc/props.hpp>

namespace ltlfmc
{
  /// rho, 0 |= f on a finite non-empty trace.  Throws alphabet_error for
  /// atoms not declared by the trace.
  [[nodiscard]] bool evaluate(const formula& f, const trace& t);

  /// Same, letters indexed by `props`.
  [[nodiscard]] bool evaluate(const formula& f, const prop_set& props,
                              std::span<const letter> letters);

  /// Truth of f at every position of the trace (index i = suffix from i).
  [[nodiscard]] std::vector<bool> evaluate_positions(const formula& f, const trace& t);

  /// LTL satisfaction of stem.cycle^omega at position 0.  Supports true,
  /// false, atoms, !, &, |, X, F, G and U (X read as the infinite-word next);
  /// anything else raises fragment_error.
  [[nodiscard]] bool evaluate_ltl_on_lasso(const formula& f, const lasso& w);

  enum class restriction : unsigned char { full, fragment };

  /// Seeded random formula of size <= max_size over `props`.
  [[nodiscard]] formula random_formula(std::uint64_t seed, std::size_t max_size,
                                       const prop_set& props,
                                       restriction r = restriction::full);

  /// Calls fn on every letter sequence of length 1..max_len in
  /// length-then-lexicographic order.
  void for_each_trace(const prop_set& props, std::size_t max_len,
                      const std::function<void(std::span<const letter>)>& fn);

  /// All traces of length 1..max_len (|props| <= 8, max_len <= 8, and at
  /// most 2^24 traces in total).
  [[nodiscard]] std::vector<trace> enumerate_traces(const prop_set& props,
                                                    std::size_t max_len);
}
