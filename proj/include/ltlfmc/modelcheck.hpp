#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <ltlfmc/formula.hpp>
#include <ltlfmc/systems.hpp>

namespace ltlfmc
{
  /// Execution ending in a terminal state.
  struct finite_path
  {
    std::vector<state_id> states;
    bool operator==(const finite_path&) const = default;
  };

  /// Infinite execution stem cycle cycle ...  The checkers end the stem at
  /// the cycle entry and end the cycle at the entry again, so a self-loop on
  /// the initial state reads stem = [s0], cycle = [s0].
  struct lasso_path
  {
    std::vector<state_id> stem;
    std::vector<state_id> cycle;
    bool operator==(const lasso_path&) const = default;
  };

  using counterexample = std::variant<finite_path, lasso_path>;

  enum class outcome : unsigned char { holds, violated };
  [[nodiscard]] const char* to_string(outcome o);

  struct statistics
  {
    std::size_t explored_states = 0;
    std::size_t peak_frontier = 0;
    /// Product states whose prefix token was already rejecting (never expanded).
    std::size_t pruned_states = 0;
    /// Successors generated from rejecting tokens; stays 0.
    std::size_t rejecting_expansions = 0;
    std::size_t automaton_states = 0;
    double seconds = 0;
  };

  struct verdict
  {
    outcome result = outcome::holds;
    std::optional<counterexample> cex;
    statistics stats;
    std::vector<std::string> warnings;
    /// Set by the bounded oracle: "holds" only up to the bound.
    bool bounded = false;
  };

  /// Every finite execution satisfies f.  Violations come with a shortest
  /// path; ties go to the smallest state indices.
  [[nodiscard]] verdict check_terminating(const transition_system& m, const formula& f);

  /// Every infinite execution has a prefix satisfying f.  A violation is a
  /// lasso with the shortest stem, then the shortest cycle.
  [[nodiscard]] verdict check_nonterminating(const transition_system& m, const formula& f);

  /// Dispatches on the system kind.
  [[nodiscard]] verdict check(const transition_system& m, const formula& f);

  struct certification
  {
    enum class failure : unsigned char { none, structural, semantic };
    failure kind = failure::none;
    std::string message;
    /// Letters examined for a lasso.
    std::size_t horizon = 0;
    [[nodiscard]] bool ok() const { return kind == failure::none; }
  };

  /// Replays c on m and confirms it falsifies f without the model-checking
  /// pipeline.  Lassos are checked on every prefix up to
  /// |stem| + |cycle| * (N + 1) letters, N the size of the DFA of f.
  [[nodiscard]] certification certify_counterexample(const transition_system& m, const formula& f,
                                                     const counterexample& c);

  /// Brute force over executions of at most max_len states (terminating)
  /// or lassos with |stem| + |cycle| <= max_len.  Throws bound_error past
  /// 10^6 enumerated paths.
  [[nodiscard]] verdict bounded_oracle_check(const transition_system& m, const formula& f,
                                             system_kind mode, std::size_t max_len);

  /// `cex` text format:
  ///   cex finite            cex lasso
  ///   path s0 s1 ...        stem s0 ...
  ///                         cycle s1 ...
  [[nodiscard]] std::string render_cex(const transition_system& m, const counterexample& c);
  [[nodiscard]] counterexample parse_cex(const transition_system& m, std::string_view text);

  /// Letters read along c; a lasso yields its stem and cycle labels.
  [[nodiscard]] std::vector<letter> path_letters(const transition_system& m,
                                                 const std::vector<state_id>& states);
}
