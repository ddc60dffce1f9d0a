#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <ltlfmc/automata.hpp>
#include <ltlfmc/props.hpp>

namespace ltlfmc
{
  enum class system_kind : unsigned char { terminating, nonterminating };

  [[nodiscard]] const char* to_string(system_kind k);

  /// Labeled transition system.  Terminating systems have a non-empty
  /// terminal set and executions end there; non-terminating systems have no
  /// sink states and executions are infinite.
  class transition_system
  {
  public:
    transition_system(system_kind kind, prop_set props);

    state_id add_state(std::string name, letter label);
    void add_edge(state_id src, state_id dst);
    void add_initial(state_id s);
    void add_terminal(state_id s);
    /// Sorts successor lists and initial states, removes duplicates.
    void canonicalize();
    /// Throws validation_error when an invariant of the kind is broken.
    void validate() const;

    [[nodiscard]] system_kind kind() const noexcept { return kind_; }
    [[nodiscard]] const prop_set& props() const noexcept { return props_; }
    [[nodiscard]] std::size_t num_states() const noexcept { return names_.size(); }
    [[nodiscard]] const std::string& name(state_id s) const { return names_.at(s); }
    [[nodiscard]] letter label(state_id s) const { return labels_.at(s); }
    [[nodiscard]] const std::vector<state_id>& successors(state_id s) const
    {
      return succ_.at(s);
    }
    [[nodiscard]] bool has_edge(state_id src, state_id dst) const;
    [[nodiscard]] const std::vector<state_id>& initial() const noexcept { return initial_; }
    [[nodiscard]] bool is_initial(state_id s) const;
    [[nodiscard]] bool is_terminal(state_id s) const { return terminal_.at(s); }
    [[nodiscard]] std::optional<state_id> find(std::string_view name) const;

  private:
    system_kind kind_;
    prop_set props_;
    std::vector<std::string> names_;
    std::vector<letter> labels_;
    std::vector<std::vector<state_id>> succ_;
    std::vector<state_id> initial_;
    std::vector<bool> terminal_;
  };

  /// `ts` text format:
  ///   system terminating|nonterminating
  ///   props a b
  ///   state <id> { a }
  ///   init <id>+
  ///   edge <src> <dst>
  ///   terminal <id>+
  [[nodiscard]] transition_system parse_ts(std::string_view text);
  [[nodiscard]] std::string render_ts(const transition_system& ts);

  /// Moore transducer: reads an input valuation per step, emits the output
  /// valuation of its current state.
  struct moore_machine
  {
    system_kind kind = system_kind::nonterminating;
    prop_set inputs;
    prop_set outputs;
    std::vector<std::string> states;
    state_id initial = 0;
    std::vector<letter> output;               // per state, over `outputs`
    std::vector<std::vector<state_id>> delta; // per state, per input letter
    std::vector<bool> terminal;
  };

  /// `moore` text format:
  ///   moore [terminating]
  ///   inputs i ...
  ///   outputs o ...
  ///   state <id> outputs { o }
  ///   init <id>
  ///   delta <id> { i } <id>
  ///   delta <id> default <id>
  ///   terminal <id>+
  [[nodiscard]] moore_machine parse_moore(std::string_view text);
  [[nodiscard]] std::string render_moore(const moore_machine& m);

  struct moore_options
  {
    /// Keep the outgoing edges of terminal TS states.
    bool terminal_continue = false;
  };

  /// States are the reachable pairs (q, i); (q, i) is labeled i u G(q) and
  /// steps to (delta(q, i), i') for every input valuation i'.
  [[nodiscard]] transition_system moore_to_ts(const moore_machine& m,
                                              moore_options opts = {});

  /// Seeded random valid system with 1..max_states states over `props`.
  /// Each state gets one or two successors, except that terminal states
  /// may be sinks.
  [[nodiscard]] transition_system random_system(std::uint64_t seed, std::size_t max_states,
                                                system_kind kind, const prop_set& props);
}
