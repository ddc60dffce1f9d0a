#pragma once

// Next-normal-form progression of LTLf obligations.
//
// A formula is split, for the letter sigma read at the current position,
// into ends(f, sigma): whether f holds if sigma is the last letter, and
// next(f, sigma): a DNF of obligations that must hold from the following
// position.  Obligation sets ("terms") are the states of the NFA.

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include <ltlfmc/formula.hpp>
#include <ltlfmc/props.hpp>

namespace ltlfmc::detail
{
  using fid = std::uint32_t;

  enum class pkind : unsigned char
  {
    tt, ff, lit, conj, disj, next, weak_next, until, release, eventually, globally,
  };

  struct pnode
  {
    pkind kind;
    bool positive = true;  // literals only
    std::uint32_t bit = 0; // literals only
    std::vector<fid> args;

    friend bool operator==(const pnode&, const pnode&) = default;
  };

  struct pnode_hash
  {
    std::size_t operator()(const pnode& n) const noexcept;
  };

  /// Hash-consed NNF formulas.  Conjunctions and disjunctions are n-ary,
  /// flattened, sorted and constant-folded.
  class pool
  {
  public:
    fid tt() const { return 0; }
    fid ff() const { return 1; }
    pool();

    fid literal(std::uint32_t bit, bool positive);
    fid conj(std::vector<fid> args);
    fid disj(std::vector<fid> args);
    fid unary(pkind k, fid a);
    fid binary(pkind k, fid a, fid b);

    /// Imports an NNF formula; atoms are resolved against props.
    fid import(const formula& nnf, const prop_set& props);

    [[nodiscard]] const pnode& operator[](fid f) const { return nodes_[f]; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] std::string render(fid f, const prop_set& props) const;

  private:
    fid intern(pnode n);
    fid nary(pkind k, std::vector<fid> args);

    std::vector<pnode> nodes_;
    std::unordered_map<pnode, fid, pnode_hash> ids_;
    std::unordered_map<const void*, fid> imported_;
  };

  using term = std::vector<fid>;  // sorted conjunction of obligations
  using dnf = std::vector<term>;  // disjunction of terms; {} = false, {{}} = true

  struct term_hash_t
  {
    std::size_t operator()(const term& t) const noexcept
    {
      std::size_t h = t.size();
      for (fid x : t)
        h = h * 1000003u ^ x;
      return h;
    }
  };

  struct term_step
  {
    std::vector<std::uint32_t> successors;  // term ids, sorted
    bool accepts = false;                   // sigma may be the last letter
  };

  /// Progression engine for one formula over one alphabet.
  class progression
  {
  public:
    progression(const formula& f, const prop_set& props);

    [[nodiscard]] std::uint32_t initial_term() const { return initial_; }
    const term_step& step(std::uint32_t term_id, letter l);
    [[nodiscard]] std::size_t num_terms() const { return terms_.size(); }
    [[nodiscard]] const term& term_of(std::uint32_t id) const { return terms_[id]; }
    [[nodiscard]] const pool& formulas() const { return pool_; }
    [[nodiscard]] const prop_set& props() const { return props_; }

  private:
    bool ends(fid f, letter l);
    const dnf& next(fid f, letter l);
    dnf compute_next(fid f, letter l);
    dnf of_obligation(fid f) const;
    std::uint32_t intern_term(term t);

    struct key_hash
    {
      std::size_t operator()(const std::pair<std::uint64_t, letter>& k) const noexcept
      {
        return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
      }
    };

    prop_set props_;
    pool pool_;
    std::uint32_t initial_;
    std::vector<term> terms_;
    std::unordered_map<term, std::uint32_t, term_hash_t> term_ids_;
    std::unordered_map<std::pair<std::uint64_t, letter>, char, key_hash> ends_memo_;
    std::unordered_map<std::pair<std::uint64_t, letter>, dnf, key_hash> next_memo_;
    std::unordered_map<std::pair<std::uint64_t, letter>, term_step, key_hash> step_memo_;
  };

  /// Conjunction of two DNFs, minimized.
  dnf dnf_and(const dnf& a, const dnf& b);
  /// Removes duplicate and subsumed (superset) terms.
  void dnf_minimize(dnf& d);
}
