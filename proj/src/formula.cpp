#include <ltlfmc/formula.hpp>

#include <algorithm>
#include <functional>
#include <unordered_map>

#include <ltlfmc/error.hpp>

namespace ltlfmc
{
  int arity(op o) noexcept
  {
    switch (o)
      {
      case op::tt:
      case op::ff:
      case op::atom:
        return 0;
      case op::neg:
      case op::next:
      case op::weak_next:
      case op::eventually:
      case op::globally:
        return 1;
      default:
        return 2;
      }
  }

  formula formula::build(op o, std::string name, std::vector<formula> kids)
  {
    std::size_t size = 1;
    for (const auto& k : kids)
      size += k.size();
    return formula(std::make_shared<const node>(
        node{o, std::move(name), std::move(kids), size}));
  }

  formula::formula() : formula(tt()) {}

  formula formula::tt()
  {
    static const formula t = build(op::tt, {}, {});
    return t;
  }

  formula formula::ff()
  {
    static const formula f = build(op::ff, {}, {});
    return f;
  }

  formula formula::atom(std::string name)
  {
    if (!is_identifier(name) || name == "true" || name == "false")
      throw parse_error("invalid atom name '" + name + "'", 1, 1);
    return build(op::atom, std::move(name), {});
  }

  formula formula::make(op o, formula a, formula b)
  {
    switch (arity(o))
      {
      case 0:
        throw error("make: nullary operator needs a dedicated constructor");
      case 1:
        return build(o, {}, {std::move(a)});
      default:
        return build(o, {}, {std::move(a), std::move(b)});
      }
  }

  formula formula::neg(formula f) { return build(op::neg, {}, {std::move(f)}); }
  formula formula::conj(formula a, formula b) { return build(op::conj, {}, {std::move(a), std::move(b)}); }
  formula formula::disj(formula a, formula b) { return build(op::disj, {}, {std::move(a), std::move(b)}); }
  formula formula::implies(formula a, formula b) { return build(op::implies, {}, {std::move(a), std::move(b)}); }
  formula formula::iff(formula a, formula b) { return build(op::iff, {}, {std::move(a), std::move(b)}); }
  formula formula::next(formula f) { return build(op::next, {}, {std::move(f)}); }
  formula formula::weak_next(formula f) { return build(op::weak_next, {}, {std::move(f)}); }
  formula formula::until(formula a, formula b) { return build(op::until, {}, {std::move(a), std::move(b)}); }
  formula formula::release(formula a, formula b) { return build(op::release, {}, {std::move(a), std::move(b)}); }
  formula formula::weak_until(formula a, formula b) { return build(op::weak_until, {}, {std::move(a), std::move(b)}); }
  formula formula::eventually(formula f) { return build(op::eventually, {}, {std::move(f)}); }
  formula formula::globally(formula f) { return build(op::globally, {}, {std::move(f)}); }

  formula formula::conj_all(const std::vector<formula>& fs)
  {
    if (fs.empty())
      return tt();
    formula r = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i)
      r = conj(r, fs[i]);
    return r;
  }

  formula formula::disj_all(const std::vector<formula>& fs)
  {
    if (fs.empty())
      return ff();
    formula r = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i)
      r = disj(r, fs[i]);
    return r;
  }

  formula formula::next_n(std::size_t k, formula f)
  {
    for (std::size_t i = 0; i < k; ++i)
      f = next(f);
    return f;
  }

  formula formula::weak_next_n(std::size_t k, formula f)
  {
    for (std::size_t i = 0; i < k; ++i)
      f = weak_next(f);
    return f;
  }

  std::vector<std::string> formula::atoms() const
  {
    std::vector<std::string> out;
    std::vector<const formula*> todo{this};
    std::unordered_map<const void*, bool> seen;
    while (!todo.empty())
      {
        const formula* f = todo.back();
        todo.pop_back();
        if (!seen.emplace(f->id(), true).second)
          continue;
        if (f->kind() == op::atom)
          out.push_back(f->name());
        for (const auto& k : f->node_->kids)
          todo.push_back(&k);
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool operator==(const formula& a, const formula& b)
  {
    if (a.node_ == b.node_)
      return true;
    if (a.kind() != b.kind() || a.size() != b.size() || a.name() != b.name())
      return false;
    const auto& ka = a.node_->kids;
    const auto& kb = b.node_->kids;
    for (std::size_t i = 0; i < ka.size(); ++i)
      if (ka[i] != kb[i])
        return false;
    return true;
  }

  namespace
  {
    // Rewrites f (if positive) or !f (if !positive) into NNF.  Memoized
    // per shared node and polarity so DAG-shaped inputs stay linear.
    class nnf_builder
    {
    public:
      formula run(const formula& f, bool positive)
      {
        auto key = std::make_pair(f.id(), positive);
        auto it = memo_.find(key);
        if (it != memo_.end())
          return it->second;
        formula r = compute(f, positive);
        memo_.emplace(key, r);
        return r;
      }

    private:
      struct key_hash
      {
        std::size_t operator()(const std::pair<const void*, bool>& k) const noexcept
        {
          return std::hash<const void*>()(k.first) * 2 + k.second;
        }
      };

      formula compute(const formula& f, bool pos)
      {
        using F = formula;
        switch (f.kind())
          {
          case op::tt:
            return pos ? F::tt() : F::ff();
          case op::ff:
            return pos ? F::ff() : F::tt();
          case op::atom:
            return pos ? f : F::neg(f);
          case op::neg:
            return run(f.child(), !pos);
          case op::conj:
            return pos ? F::conj(run(f.lhs(), true), run(f.rhs(), true))
                       : F::disj(run(f.lhs(), false), run(f.rhs(), false));
          case op::disj:
            return pos ? F::disj(run(f.lhs(), true), run(f.rhs(), true))
                       : F::conj(run(f.lhs(), false), run(f.rhs(), false));
          case op::implies:
            return pos ? F::disj(run(f.lhs(), false), run(f.rhs(), true))
                       : F::conj(run(f.lhs(), true), run(f.rhs(), false));
          case op::iff:
            // a <-> b  ==  (!a | b) & (!b | a)
            if (pos)
              return F::conj(F::disj(run(f.lhs(), false), run(f.rhs(), true)),
                             F::disj(run(f.rhs(), false), run(f.lhs(), true)));
            return F::disj(F::conj(run(f.lhs(), true), run(f.rhs(), false)),
                           F::conj(run(f.rhs(), true), run(f.lhs(), false)));
          case op::next:
            return pos ? F::next(run(f.child(), true))
                       : F::weak_next(run(f.child(), false));
          case op::weak_next:
            return pos ? F::weak_next(run(f.child(), true))
                       : F::next(run(f.child(), false));
          case op::until:
            return pos ? F::until(run(f.lhs(), true), run(f.rhs(), true))
                       : F::release(run(f.lhs(), false), run(f.rhs(), false));
          case op::release:
            return pos ? F::release(run(f.lhs(), true), run(f.rhs(), true))
                       : F::until(run(f.lhs(), false), run(f.rhs(), false));
          case op::weak_until:
            {
              // a W b  ==  (a U b) | G a
              // !(a W b) == (!a R !b) & F !a
              if (pos)
                return F::disj(F::until(run(f.lhs(), true), run(f.rhs(), true)),
                               F::globally(run(f.lhs(), true)));
              return F::conj(F::release(run(f.lhs(), false), run(f.rhs(), false)),
                             F::eventually(run(f.lhs(), false)));
            }
          case op::eventually:
            return pos ? F::eventually(run(f.child(), true))
                       : F::globally(run(f.child(), false));
          case op::globally:
            return pos ? F::globally(run(f.child(), true))
                       : F::eventually(run(f.child(), false));
          }
        throw error("to_nnf: unknown operator");
      }

      std::unordered_map<std::pair<const void*, bool>, formula, key_hash> memo_;
    };
  }

  formula to_nnf(const formula& f)
  {
    nnf_builder b;
    return b.run(f, true);
  }

  bool is_propositional(const formula& f)
  {
    switch (f.kind())
      {
      case op::tt:
      case op::ff:
      case op::atom:
        return true;
      case op::neg:
      case op::conj:
      case op::disj:
      case op::implies:
      case op::iff:
        for (int i = 0; i < arity(f.kind()); ++i)
          if (!is_propositional(f.child(i)))
            return false;
        return true;
      default:
        return false;
      }
  }
}
