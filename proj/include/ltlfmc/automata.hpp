#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <ltlfmc/props.hpp>

namespace ltlfmc
{
  using state_id = std::uint32_t;

  /// Nondeterministic finite automaton over the explicit alphabet 2^props.
  class nfa
  {
  public:
    nfa(prop_set props, std::size_t num_states);

    state_id add_state(bool accepting = false);
    void add_initial(state_id s);
    void set_accepting(state_id s, bool acc = true);
    void add_edge(state_id src, letter l, state_id dst);
    /// Sorts and deduplicates edges and initial states.
    void canonicalize();

    [[nodiscard]] const prop_set& props() const noexcept { return props_; }
    [[nodiscard]] std::size_t num_states() const noexcept { return accepting_.size(); }
    [[nodiscard]] std::size_t num_edges() const noexcept;
    [[nodiscard]] const std::vector<state_id>& initial() const noexcept { return initial_; }
    [[nodiscard]] bool is_accepting(state_id s) const { return accepting_.at(s); }
    /// (letter, destination) pairs leaving s.
    [[nodiscard]] const std::vector<std::pair<letter, state_id>>& edges(state_id s) const
    {
      return edges_.at(s);
    }

  private:
    prop_set props_;
    std::vector<state_id> initial_;
    std::vector<bool> accepting_;
    std::vector<std::vector<std::pair<letter, state_id>>> edges_;
  };

  /// Complete deterministic automaton: one successor per state and letter.
  class dfa
  {
  public:
    dfa(prop_set props, std::size_t num_states, state_id initial);

    void set_edge(state_id src, letter l, state_id dst);
    void set_accepting(state_id s, bool acc = true);
    /// Throws validation_error unless every transition is defined.
    void check_complete() const;

    [[nodiscard]] const prop_set& props() const noexcept { return props_; }
    [[nodiscard]] std::size_t num_states() const noexcept { return accepting_.size(); }
    [[nodiscard]] std::size_t num_letters() const noexcept { return letters_; }
    [[nodiscard]] state_id initial() const noexcept { return initial_; }
    [[nodiscard]] bool is_accepting(state_id s) const { return accepting_.at(s); }
    [[nodiscard]] state_id succ(state_id s, letter l) const
    {
      return delta_[static_cast<std::size_t>(s) * letters_ + l];
    }
    [[nodiscard]] bool is_sink(state_id s) const;

  private:
    static constexpr state_id undefined = ~state_id{0};
    prop_set props_;
    std::size_t letters_;
    state_id initial_;
    std::vector<bool> accepting_;
    std::vector<state_id> delta_;
  };

  /// Which states of a sink-shaped Buchi automaton are sinks.
  enum class sink_kind : unsigned char
  {
    rejecting,  // safety shape: every non-accepting state is a sink
    accepting,  // complement shape: every accepting state is a sink
  };

  /// Deterministic complete Buchi automaton (carcass DFA + accepting set)
  /// whose states of one polarity are all sinks.  With rejecting sinks the
  /// language is the set of words whose run never enters a rejecting state.
  class safety_dba
  {
  public:
    safety_dba(dfa carcass, sink_kind kind);

    [[nodiscard]] const dfa& carcass() const noexcept { return carcass_; }
    [[nodiscard]] sink_kind kind() const noexcept { return kind_; }
    [[nodiscard]] const prop_set& props() const noexcept { return carcass_.props(); }
    [[nodiscard]] std::size_t num_states() const noexcept { return carcass_.num_states(); }
    [[nodiscard]] state_id initial() const noexcept { return carcass_.initial(); }
    [[nodiscard]] bool is_accepting(state_id s) const { return carcass_.is_accepting(s); }
    [[nodiscard]] state_id succ(state_id s, letter l) const { return carcass_.succ(s, l); }

  private:
    dfa carcass_;
    sink_kind kind_;
  };

  [[nodiscard]] bool nfa_accepts(const nfa& a, const trace& t);
  [[nodiscard]] bool dfa_accepts(const dfa& d, const trace& t);

  /// Subset construction restricted to reachable subsets.  The empty
  /// subset, when reached, is an explicit rejecting sink.
  [[nodiscard]] dfa determinize(const nfa& a);

  /// Reachable part, then partition refinement.
  [[nodiscard]] dfa minimize(const dfa& d);

  /// Accepting states of d become sinks (self-loop on every letter).
  [[nodiscard]] safety_dba make_accepting_sinks(const dfa& d);

  /// Complements the accepting set; the sink kind flips with it.
  [[nodiscard]] safety_dba swap_acceptance(const safety_dba& c);

  /// Buchi acceptance of the unique run over w.
  [[nodiscard]] bool dba_accepts_lasso(const safety_dba& b, const lasso& w);

  /// Re-marks accepting states from which every run is eventually
  /// rejected as rejecting sinks.  Requires the rejecting-sink shape.
  [[nodiscard]] safety_dba safety_tighten(const safety_dba& b);

  /// True iff no infinite word is accepted.
  [[nodiscard]] bool is_empty(const safety_dba& b);

  struct equivalence
  {
    bool equivalent = true;
    /// Present iff not equivalent; accepted by exactly one of the inputs.
    std::optional<lasso> witness;
  };

  /// Language equivalence of two safety-shaped automata over the same props.
  [[nodiscard]] equivalence safety_equiv(const safety_dba& x, const safety_dba& y);

  [[nodiscard]] std::string to_dot(const nfa& a);
  [[nodiscard]] std::string to_dot(const dfa& d);
  [[nodiscard]] std::string to_dot(const safety_dba& b);

  using automaton = std::variant<nfa, dfa, safety_dba>;

  /// Line-based dump:
  ///   nfa|dfa|dba
  ///   props a b
  ///   sinks rejecting|accepting     (dba only)
  ///   state <id> [accepting]
  ///   init <id>+
  ///   edge <src> { <props> } <dst>
  [[nodiscard]] std::string write_aut(const automaton& a);
  [[nodiscard]] automaton parse_aut(std::string_view text);
}
