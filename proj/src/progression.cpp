#include "progression.hpp"

#include <algorithm>

#include <ltlfmc/error.hpp>

namespace ltlfmc::detail
{
  std::size_t pnode_hash::operator()(const pnode& n) const noexcept
  {
    std::size_t h = static_cast<std::size_t>(n.kind) * 31 + n.positive;
    h = h * 1000003u ^ n.bit;
    for (fid a : n.args)
      h = h * 1000003u ^ a;
    return h;
  }

  pool::pool()
  {
    intern({pkind::tt, true, 0, {}});
    intern({pkind::ff, true, 0, {}});
  }

  fid pool::intern(pnode n)
  {
    auto [it, fresh] = ids_.emplace(n, static_cast<fid>(nodes_.size()));
    if (fresh)
      nodes_.push_back(std::move(n));
    return it->second;
  }

  fid pool::literal(std::uint32_t bit, bool positive)
  {
    return intern({pkind::lit, positive, bit, {}});
  }

  fid pool::nary(pkind k, std::vector<fid> args)
  {
    const bool is_and = k == pkind::conj;
    const fid unit = is_and ? tt() : ff();
    const fid zero = is_and ? ff() : tt();
    std::vector<fid> flat;
    for (fid a : args)
      {
        if (nodes_[a].kind == k)
          flat.insert(flat.end(), nodes_[a].args.begin(), nodes_[a].args.end());
        else
          flat.push_back(a);
      }
    std::vector<fid> kept;
    for (fid a : flat)
      {
        if (a == zero)
          return zero;
        if (a != unit)
          kept.push_back(a);
      }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    // complementary literals
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (std::size_t j = i + 1; j < kept.size(); ++j)
        {
          const pnode& x = nodes_[kept[i]];
          const pnode& y = nodes_[kept[j]];
          if (x.kind == pkind::lit && y.kind == pkind::lit && x.bit == y.bit
              && x.positive != y.positive)
            return zero;
        }
    if (kept.empty())
      return unit;
    if (kept.size() == 1)
      return kept[0];
    return intern({k, true, 0, std::move(kept)});
  }

  fid pool::conj(std::vector<fid> args) { return nary(pkind::conj, std::move(args)); }
  fid pool::disj(std::vector<fid> args) { return nary(pkind::disj, std::move(args)); }

  fid pool::unary(pkind k, fid a)
  {
    // constant folding that preserves finite-trace semantics
    if (k == pkind::eventually || k == pkind::globally)
      if (a == tt() || a == ff())
        return a;
    if (k == pkind::weak_next && a == tt())
      return tt();
    if (k == pkind::next && a == ff())
      return ff();
    return intern({k, true, 0, {a}});
  }

  fid pool::binary(pkind k, fid a, fid b)
  {
    if (b == tt() || b == ff())
      return b;  // a U true = true, a U false = false; same for R
    return intern({k, true, 0, {a, b}});
  }

  fid pool::import(const formula& f, const prop_set& props)
  {
    auto it = imported_.find(f.id());
    if (it != imported_.end())
      return it->second;
    fid r;
    switch (f.kind())
      {
      case op::tt: r = tt(); break;
      case op::ff: r = ff(); break;
      case op::atom: r = literal(static_cast<std::uint32_t>(props.index(f.name())), true); break;
      case op::neg:
        if (f.child().kind() != op::atom)
          throw error("progression: input is not in negation normal form");
        r = literal(static_cast<std::uint32_t>(props.index(f.child().name())), false);
        break;
      case op::conj: r = conj({import(f.lhs(), props), import(f.rhs(), props)}); break;
      case op::disj: r = disj({import(f.lhs(), props), import(f.rhs(), props)}); break;
      case op::next: r = unary(pkind::next, import(f.child(), props)); break;
      case op::weak_next: r = unary(pkind::weak_next, import(f.child(), props)); break;
      case op::eventually: r = unary(pkind::eventually, import(f.child(), props)); break;
      case op::globally: r = unary(pkind::globally, import(f.child(), props)); break;
      case op::until: r = binary(pkind::until, import(f.lhs(), props), import(f.rhs(), props)); break;
      case op::release: r = binary(pkind::release, import(f.lhs(), props), import(f.rhs(), props)); break;
      default:
        throw error("progression: input is not in negation normal form");
      }
    imported_.emplace(f.id(), r);
    return r;
  }

  std::string pool::render(fid f, const prop_set& props) const
  {
    const pnode& n = nodes_[f];
    auto sub = [&](fid a) { return "(" + render(a, props) + ")"; };
    switch (n.kind)
      {
      case pkind::tt: return "true";
      case pkind::ff: return "false";
      case pkind::lit: return (n.positive ? "" : "!") + props.name(n.bit);
      case pkind::conj:
      case pkind::disj:
        {
          std::string s;
          for (std::size_t i = 0; i < n.args.size(); ++i)
            s += (i ? (n.kind == pkind::conj ? " & " : " | ") : "") + sub(n.args[i]);
          return s;
        }
      case pkind::next: return "X " + sub(n.args[0]);
      case pkind::weak_next: return "N " + sub(n.args[0]);
      case pkind::eventually: return "F " + sub(n.args[0]);
      case pkind::globally: return "G " + sub(n.args[0]);
      case pkind::until: return sub(n.args[0]) + " U " + sub(n.args[1]);
      case pkind::release: return sub(n.args[0]) + " R " + sub(n.args[1]);
      }
    return "?";
  }

  void dnf_minimize(dnf& d)
  {
    std::sort(d.begin(), d.end(), [](const term& a, const term& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    d.erase(std::unique(d.begin(), d.end()), d.end());
    dnf kept;
    for (auto& t : d)
      {
        bool subsumed = false;
        for (const auto& k : kept)
          if (k.size() < t.size() && std::includes(t.begin(), t.end(), k.begin(), k.end()))
            {
              subsumed = true;
              break;
            }
        if (!subsumed)
          kept.push_back(std::move(t));
      }
    d = std::move(kept);
  }

  dnf dnf_and(const dnf& a, const dnf& b)
  {
    dnf out;
    if (a.empty() || b.empty())
      return out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
      for (const auto& y : b)
        {
          term t;
          t.reserve(x.size() + y.size());
          std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(t));
          out.push_back(std::move(t));
        }
    dnf_minimize(out);
    return out;
  }

  progression::progression(const formula& f, const prop_set& props) : props_(props)
  {
    fid root = pool_.import(to_nnf(f), props_);
    dnf d = of_obligation(root);
    // an unsatisfiable root keeps a state of its own with no successors
    initial_ = intern_term(d.empty() ? term{pool_.ff()} : d.front());
  }

  dnf progression::of_obligation(fid f) const
  {
    const pnode& n = pool_[f];
    if (n.kind == pkind::tt)
      return {term{}};
    if (n.kind == pkind::ff)
      return {};
    if (n.kind == pkind::conj)
      return {n.args};
    return {term{f}};
  }

  std::uint32_t progression::intern_term(term t)
  {
    auto [it, fresh] = term_ids_.emplace(t, static_cast<std::uint32_t>(terms_.size()));
    if (fresh)
      terms_.push_back(std::move(t));
    return it->second;
  }

  bool progression::ends(fid f, letter l)
  {
    auto key = std::make_pair(std::uint64_t{f}, l);
    auto it = ends_memo_.find(key);
    if (it != ends_memo_.end())
      return it->second;
    const pnode& n = pool_[f];
    bool r = false;
    switch (n.kind)
      {
      case pkind::tt: r = true; break;
      case pkind::ff: r = false; break;
      case pkind::lit: r = (l >> n.bit & 1) == n.positive; break;
      case pkind::conj:
        r = true;
        for (fid a : pool_[f].args)
          if (!ends(a, l))
            {
              r = false;
              break;
            }
        break;
      case pkind::disj:
        r = false;
        for (fid a : pool_[f].args)
          if (ends(a, l))
            {
              r = true;
              break;
            }
        break;
      case pkind::next: r = false; break;
      case pkind::weak_next: r = true; break;
      case pkind::until:
      case pkind::release: r = ends(n.args[1], l); break;
      case pkind::eventually:
      case pkind::globally: r = ends(n.args[0], l); break;
      }
    ends_memo_.emplace(key, r);
    return r;
  }

  const dnf& progression::next(fid f, letter l)
  {
    auto key = std::make_pair(std::uint64_t{f}, l);
    auto it = next_memo_.find(key);
    if (it != next_memo_.end())
      return it->second;
    dnf r = compute_next(f, l);
    return next_memo_.emplace(key, std::move(r)).first->second;
  }

  dnf progression::compute_next(fid f, letter l)
  {
    const pnode n = pool_[f];  // copy: pool_ is not mutated here, but keep it simple
    auto self = dnf{term{f}};
    auto or_ = [](dnf a, const dnf& b) {
      a.insert(a.end(), b.begin(), b.end());
      dnf_minimize(a);
      return a;
    };
    switch (n.kind)
      {
      case pkind::tt: return {term{}};
      case pkind::ff: return {};
      case pkind::lit:
        if ((l >> n.bit & 1) == n.positive)
          return {term{}};
        return {};
      case pkind::conj:
        {
          dnf acc{term{}};
          for (fid a : n.args)
            {
              acc = dnf_and(acc, next(a, l));
              if (acc.empty())
                break;
            }
          return acc;
        }
      case pkind::disj:
        {
          dnf acc;
          for (fid a : n.args)
            acc.insert(acc.end(), next(a, l).begin(), next(a, l).end());
          dnf_minimize(acc);
          return acc;
        }
      case pkind::next:
      case pkind::weak_next:
        return of_obligation(n.args[0]);
      case pkind::until:
        return or_(next(n.args[1], l), dnf_and(next(n.args[0], l), self));
      case pkind::release:
        return dnf_and(next(n.args[1], l), or_(next(n.args[0], l), self));
      case pkind::eventually:
        return or_(next(n.args[0], l), self);
      case pkind::globally:
        return dnf_and(next(n.args[0], l), self);
      }
    return {};
  }

  const term_step& progression::step(std::uint32_t term_id, letter l)
  {
    auto key = std::make_pair(std::uint64_t{term_id}, l);
    auto it = step_memo_.find(key);
    if (it != step_memo_.end())
      return it->second;
    const term t = terms_[term_id];
    term_step st;
    st.accepts = true;
    for (fid f : t)
      if (!ends(f, l))
        {
          st.accepts = false;
          break;
        }
    dnf acc{term{}};
    for (fid f : t)
      {
        acc = dnf_and(acc, next(f, l));
        if (acc.empty())
          break;
      }
    for (auto& s : acc)
      st.successors.push_back(intern_term(std::move(s)));
    std::sort(st.successors.begin(), st.successors.end());
    st.successors.erase(std::unique(st.successors.begin(), st.successors.end()),
                        st.successors.end());
    return step_memo_.emplace(key, std::move(st)).first->second;
  }
}
