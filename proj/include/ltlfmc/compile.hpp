#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <ltlfmc/automata.hpp>
#include <ltlfmc/formula.hpp>

namespace ltlfmc
{
  namespace detail
  {
    class progression;
  }

  /// Obligation-set NFA of an LTLf formula, generated on demand.  State 0 is
  /// the initial obligation set; the accepting state is implicit: a step
  /// reports whether the letter read may be the last one.
  class lazy_nfa
  {
  public:
    lazy_nfa(const formula& f, const prop_set& props);
    ~lazy_nfa();
    lazy_nfa(lazy_nfa&&) noexcept;
    lazy_nfa& operator=(lazy_nfa&&) noexcept;

    [[nodiscard]] state_id initial() const;
    /// Successor obligation sets of s on l (sorted).
    [[nodiscard]] const std::vector<state_id>& successors(state_id s, letter l);
    /// True iff a trace may end with l read from s.
    [[nodiscard]] bool accepts(state_id s, letter l);
    [[nodiscard]] std::size_t num_states() const;
    [[nodiscard]] const prop_set& props() const;
    [[nodiscard]] std::string describe(state_id s) const;

  private:
    std::unique_ptr<detail::progression> prog_;
  };

  /// Prefix automaton of f explored on demand.  A token is the subset of
  /// obligation sets of the NFA of !f reached so far; every token in which
  /// !f was already satisfied is merged into one rejecting sink.
  class lazy_safety_automaton
  {
  public:
    using token = std::uint32_t;

    lazy_safety_automaton(const formula& f, const prop_set& props);

    [[nodiscard]] token initial() const { return 0; }
    [[nodiscard]] token step(token t, letter l);
    [[nodiscard]] bool is_rejecting(token t) const { return t == rejecting_; }
    /// Tokens materialized so far (the rejecting sink included once used).
    [[nodiscard]] std::size_t token_count() const;
    [[nodiscard]] const prop_set& props() const { return nfa_.props(); }

  private:
    struct key_hash
    {
      std::size_t operator()(const std::pair<token, letter>& k) const noexcept
      {
        return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
      }
    };
    struct vec_hash
    {
      std::size_t operator()(const std::vector<state_id>& v) const noexcept;
    };

    lazy_nfa nfa_;
    std::vector<std::vector<state_id>> tokens_;
    std::unordered_map<std::vector<state_id>, token, vec_hash> ids_;
    std::unordered_map<std::pair<token, letter>, token, key_hash> memo_;
    token rejecting_ = ~token{0};
    bool rejecting_used_ = false;
  };

  /// NFA accepting exactly the finite traces satisfying f.  The last state
  /// is the unique accepting state and has no outgoing edges.
  [[nodiscard]] nfa ltlf_to_nfa(const formula& f);
  [[nodiscard]] nfa ltlf_to_nfa(const formula& f, const prop_set& props);

  /// determinize(ltlf_to_nfa(f)).
  [[nodiscard]] dfa ltlf_to_dfa(const formula& f);
  [[nodiscard]] dfa ltlf_to_dfa(const formula& f, const prop_set& props);

  /// Infinite words all of whose non-empty prefixes satisfy f:
  /// swap_acceptance(make_accepting_sinks(ltlf_to_dfa(!f))).
  [[nodiscard]] safety_dba prefix_dba(const formula& f);
  [[nodiscard]] safety_dba prefix_dba(const formula& f, const prop_set& props);

  [[nodiscard]] lazy_safety_automaton lazy_prefix_dba(const formula& f, const prop_set& props);

  /// Propositional formula built from atoms, !atom, &, | (and constants).
  [[nodiscard]] bool is_literal(const formula& f);

  /// psi := l | !l | psi & psi | X psi | N psi | F psi | G psi | psi U psi.
  [[nodiscard]] bool in_fragment(const formula& f);

  /// Infinite-word safety formula with the same prefix language.  Throws
  /// fragment_error outside the fragment.
  [[nodiscard]] formula translate_fragment(const formula& f);

  /// Deterministic safety automaton of an LTL formula built from
  /// propositional formulas, &, X and G.  Throws fragment_error otherwise.
  [[nodiscard]] safety_dba image_dba(const formula& f);
  [[nodiscard]] safety_dba image_dba(const formula& f, const prop_set& props);
}
