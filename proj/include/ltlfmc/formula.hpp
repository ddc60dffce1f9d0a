#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <ltlfmc/props.hpp>

namespace ltlfmc
{
  enum class op : unsigned char
  {
    tt, ff, atom,
    neg, conj, disj, implies, iff,
    next,       // X: strong next
    weak_next,  // N
    until, release, weak_until,
    eventually, globally,
  };

  /// Finite-trace (LTLf) or infinite-word (LTL) reading of the same syntax.
  enum class dialect : unsigned char { ltlf, ltl };

  [[nodiscard]] int arity(op o) noexcept;

  /// Immutable formula tree with shared sub-trees.  Copies are cheap.
  class formula
  {
  public:
    formula();  // true

    static formula tt();
    static formula ff();
    static formula atom(std::string name);
    static formula neg(formula f);
    static formula conj(formula a, formula b);
    static formula disj(formula a, formula b);
    static formula implies(formula a, formula b);
    static formula iff(formula a, formula b);
    static formula next(formula f);
    static formula weak_next(formula f);
    static formula until(formula a, formula b);
    static formula release(formula a, formula b);
    static formula weak_until(formula a, formula b);
    static formula eventually(formula f);
    static formula globally(formula f);
    static formula make(op o, formula a, formula b);

    /// Conjunction/disjunction of a list, left nested; empty gives the unit.
    static formula conj_all(const std::vector<formula>& fs);
    static formula disj_all(const std::vector<formula>& fs);
    /// k-fold strong / weak next.
    static formula next_n(std::size_t k, formula f);
    static formula weak_next_n(std::size_t k, formula f);

    [[nodiscard]] op kind() const noexcept { return node_->kind; }
    [[nodiscard]] const std::string& name() const noexcept { return node_->name; }
    [[nodiscard]] const formula& child(std::size_t i = 0) const { return node_->kids[i]; }
    [[nodiscard]] const formula& lhs() const { return node_->kids[0]; }
    [[nodiscard]] const formula& rhs() const { return node_->kids[1]; }

    /// Number of nodes of the tree (operators, atoms and constants).
    [[nodiscard]] std::size_t size() const noexcept { return node_->size; }
    [[nodiscard]] std::vector<std::string> atoms() const;
    [[nodiscard]] prop_set atom_set() const { return prop_set(atoms()); }

    /// Stable identity of the shared node, for memo tables.
    [[nodiscard]] const void* id() const noexcept { return node_.get(); }

    friend bool operator==(const formula& a, const formula& b);
    friend bool operator!=(const formula& a, const formula& b) { return !(a == b); }

  private:
    struct node
    {
      op kind;
      std::string name;
      std::vector<formula> kids;
      std::size_t size;
    };
    explicit formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}
    static formula build(op o, std::string name, std::vector<formula> kids);

    std::shared_ptr<const node> node_;
  };

  /// Parse the concrete syntax.  Precedence, loosest first:
  /// `<->` (right), `->` (right), `|`, `&`, `U R W` (right), unary `! X N F G`.
  [[nodiscard]] formula parse_formula(std::string_view text,
                                      dialect d = dialect::ltlf);
  /// Minimal parenthesization; parse(render(f)) == f.
  [[nodiscard]] std::string render_formula(const formula& f,
                                           dialect d = dialect::ltlf);

  /// Negation normal form: only atoms are negated.  Implies, iff and W
  /// are expanded; X/N, U/R, F/G are dualized under negation.
  [[nodiscard]] formula to_nnf(const formula& f);

  /// True when f uses only operators defined on infinite words by
  /// evaluate_ltl_on_lasso.
  [[nodiscard]] bool is_propositional(const formula& f);
}
