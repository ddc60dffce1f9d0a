#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <ltlfmc/formula.hpp>
#include <ltlfmc/props.hpp>
#include <ltlfmc/systems.hpp>

namespace ltlfmc
{
  /// Deterministic machine on a tape of 2^(c*|x|) cells.  Symbols are single
  /// characters; symbol 0 is the blank `_`.  Accepting states halt, every
  /// other state has a rule for every symbol.
  struct turing_machine
  {
    struct rule
    {
      std::size_t next = 0;
      std::size_t write = 0;
      bool right = false;
    };

    std::vector<std::string> states;
    std::size_t initial = 0;
    std::vector<bool> accepting;
    std::vector<char> symbols;
    std::vector<std::vector<std::optional<rule>>> delta;  // [state][symbol]
    std::size_t c = 1;

    [[nodiscard]] std::size_t symbol(char ch) const;  // throws on unknown symbols
  };

  /// `tm` text format:
  ///   states q0 q1 ...
  ///   accept q1 ...
  ///   alphabet _ 0 1
  ///   start q0
  ///   rule <q> <sym> <q'> <sym'> L|R
  ///   c <int>
  [[nodiscard]] turing_machine parse_tm(std::string_view text);
  [[nodiscard]] std::string render_tm(const turing_machine& tm);

  enum class tm_outcome : unsigned char { accept, reject, loop };
  [[nodiscard]] const char* to_string(tm_outcome o);

  struct tm_run
  {
    tm_outcome outcome = tm_outcome::loop;
    std::size_t steps = 0;
    std::string reason;
  };

  /// Runs the machine with the head on the blank cell left of the input.
  /// Leaving the tape or repeating a configuration rejects.
  [[nodiscard]] tm_run simulate_tm(const turing_machine& tm, std::string_view input,
                                   std::size_t max_steps = 1'000'000);

  /// `literal` builds the consistency formulas exactly as printed; `corrected`
  /// anchors on the last full cell, guards neighbour rules by the
  /// configuration boundary, uses a weak boundary test in the blank-suffix
  /// formula and adds frame rules next to a departing head.
  enum class reduction_variant : unsigned char { corrected, literal };

  struct tm_instance
  {
    transition_system system;
    formula property;  // !cons | acc
    formula consistency;
    formula acceptance;
    std::size_t cn = 0;
    std::vector<std::string> props;
  };

  /// Non-terminating system and formula such that the system satisfies the
  /// formula iff the machine accepts `input`.  Throws bound_error if
  /// c*|input| > 6.
  [[nodiscard]] tm_instance gen_tm_instance(const turing_machine& tm, std::string_view input,
                                            reduction_variant v = reduction_variant::corrected);

  /// Proposition names of the cell-content and state names of the system.
  [[nodiscard]] std::string cell_prop(const turing_machine& tm, std::optional<std::size_t> state,
                                      std::size_t symbol);

  // ------------------------------------------------------------------
  // One-hot words over {0, 1, #, &}, encoded by the atoms zero, one, hash
  // and amp.

  [[nodiscard]] const prop_set& word_props();
  /// Letters of a string over 0 1 # &.
  [[nodiscard]] std::vector<letter> encode_word(std::string_view w);
  /// Inverse of encode_word; throws validation_error on non one-hot letters.
  [[nodiscard]] std::string decode_word(std::span<const letter> letters);

  /// `literal` uses EndWith = G(Ends -> Appear), which holds vacuously on
  /// traces shorter than n + 2; `corrected` uses F(Ends & Appear).
  enum class phi_variant : unsigned char { corrected, literal };

  /// Formula whose finite models are the words of F_n plus the &-free words.
  /// Requires 1 <= n <= 4.
  [[nodiscard]] formula gen_phi_n(std::size_t n, phi_variant v = phi_variant::corrected);

  /// u & v with every #w# block occurring in v also occurring in u, or no &.
  [[nodiscard]] bool ln_member(const lasso& w, std::size_t n);

  /// u & v such that if v ends with a block #w#, that block occurs in u; or no &.
  [[nodiscard]] bool fn_member(const trace& t, std::size_t n);
}
