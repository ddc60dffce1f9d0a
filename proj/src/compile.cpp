#include <ltlfmc/compile.hpp>

#include <algorithm>
#include <map>
#include <unordered_map>

#include <ltlfmc/error.hpp>

#include "progression.hpp"

namespace ltlfmc
{
  // ------------------------------------------------------- lazy_nfa

  lazy_nfa::lazy_nfa(const formula& f, const prop_set& props)
    : prog_(std::make_unique<detail::progression>(f, props))
  {
  }

  lazy_nfa::~lazy_nfa() = default;
  lazy_nfa::lazy_nfa(lazy_nfa&&) noexcept = default;
  lazy_nfa& lazy_nfa::operator=(lazy_nfa&&) noexcept = default;

  state_id lazy_nfa::initial() const { return prog_->initial_term(); }

  const std::vector<state_id>& lazy_nfa::successors(state_id s, letter l)
  {
    return prog_->step(s, l).successors;
  }

  bool lazy_nfa::accepts(state_id s, letter l) { return prog_->step(s, l).accepts; }

  std::size_t lazy_nfa::num_states() const { return prog_->num_terms(); }

  const prop_set& lazy_nfa::props() const { return prog_->props(); }

  std::string lazy_nfa::describe(state_id s) const
  {
    const auto& t = prog_->term_of(s);
    if (t.empty())
      return "{}";
    std::string out = "{";
    for (std::size_t i = 0; i < t.size(); ++i)
      out += (i ? ", " : "") + prog_->formulas().render(t[i], prog_->props());
    return out + "}";
  }

  // ------------------------------------------ lazy_safety_automaton

  std::size_t lazy_safety_automaton::vec_hash::operator()(const std::vector<state_id>& v) const noexcept
  {
    std::size_t h = v.size();
    for (state_id x : v)
      h = h * 1000003u ^ x;
    return h;
  }

  lazy_safety_automaton::lazy_safety_automaton(const formula& f, const prop_set& props)
    : nfa_(formula::neg(f), props)
  {
    std::vector<state_id> init{nfa_.initial()};
    ids_.emplace(init, 0);
    tokens_.push_back(std::move(init));
  }

  std::size_t lazy_safety_automaton::token_count() const { return tokens_.size(); }

  lazy_safety_automaton::token lazy_safety_automaton::step(token t, letter l)
  {
    if (t == rejecting_)
      return t;
    auto key = std::make_pair(t, l);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    token r;
    bool hit = false;
    for (state_id s : tokens_[t])
      if (nfa_.accepts(s, l))
        {
          hit = true;
          break;
        }
    if (hit)
      {
        if (!rejecting_used_)
          {
            rejecting_used_ = true;
            rejecting_ = static_cast<token>(tokens_.size());
            tokens_.push_back({~state_id{0}});
          }
        r = rejecting_;
      }
    else
      {
        std::vector<state_id> next;
        for (state_id s : tokens_[t])
          {
            const auto& succ = nfa_.successors(s, l);
            next.insert(next.end(), succ.begin(), succ.end());
          }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        auto [it, fresh] = ids_.emplace(next, static_cast<token>(tokens_.size()));
        if (fresh)
          tokens_.push_back(std::move(next));
        r = it->second;
      }
    memo_.emplace(key, r);
    return r;
  }

  // ------------------------------------------------- eager pipeline

  nfa ltlf_to_nfa(const formula& f, const prop_set& props)
  {
    const std::size_t k = props.letter_count();
    detail::progression prog(f, props);
    struct edge_t
    {
      state_id src;
      letter l;
      state_id dst;  // ~0 = accepting sink
    };
    std::vector<edge_t> edges;
    for (std::uint32_t s = 0; s < prog.num_terms(); ++s)
      for (letter l = 0; l < k; ++l)
        {
          const auto& st = prog.step(s, l);
          for (auto d : st.successors)
            edges.push_back({s, l, d});
          if (st.accepts)
            edges.push_back({s, l, ~state_id{0}});
        }
    const auto accept = static_cast<state_id>(prog.num_terms());
    nfa a(props, prog.num_terms() + 1);
    a.set_accepting(accept);
    a.add_initial(prog.initial_term());
    for (const auto& e : edges)
      a.add_edge(e.src, e.l, e.dst == ~state_id{0} ? accept : e.dst);
    a.canonicalize();
    return a;
  }

  nfa ltlf_to_nfa(const formula& f) { return ltlf_to_nfa(f, f.atom_set()); }

  dfa ltlf_to_dfa(const formula& f, const prop_set& props)
  {
    return determinize(ltlf_to_nfa(f, props));
  }

  dfa ltlf_to_dfa(const formula& f) { return ltlf_to_dfa(f, f.atom_set()); }

  safety_dba prefix_dba(const formula& f, const prop_set& props)
  {
    return swap_acceptance(make_accepting_sinks(ltlf_to_dfa(formula::neg(f), props)));
  }

  safety_dba prefix_dba(const formula& f) { return prefix_dba(f, f.atom_set()); }

  lazy_safety_automaton lazy_prefix_dba(const formula& f, const prop_set& props)
  {
    return lazy_safety_automaton(f, props);
  }

  // ------------------------------------------------------- fragment

  bool is_literal(const formula& f)
  {
    switch (f.kind())
      {
      case op::tt:
      case op::ff:
      case op::atom:
        return true;
      case op::neg:
        return f.child().kind() == op::atom;
      case op::conj:
      case op::disj:
        return is_literal(f.lhs()) && is_literal(f.rhs());
      default:
        return false;
      }
  }

  bool in_fragment(const formula& f)
  {
    if (is_literal(f))
      return true;
    switch (f.kind())
      {
      case op::neg:
        return is_literal(f.child());
      case op::conj:
      case op::until:
        return in_fragment(f.lhs()) && in_fragment(f.rhs());
      case op::next:
      case op::weak_next:
      case op::eventually:
      case op::globally:
        return in_fragment(f.child());
      default:
        return false;
      }
  }

  namespace
  {
    formula translate(const formula& f)
    {
      if (is_literal(f))
        return f;
      switch (f.kind())
        {
        case op::neg:
          if (is_literal(f.child()))
            return f;
          break;
        case op::conj:
          return formula::conj(translate(f.lhs()), translate(f.rhs()));
        case op::next:
          return formula::ff();
        case op::weak_next:
          return formula::next(translate(f.child()));
        case op::eventually:
          return translate(f.child());
        case op::globally:
          return formula::globally(translate(f.child()));
        case op::until:
          return translate(f.rhs());
        default:
          break;
        }
      throw fragment_error("formula outside the fragment (R, W, ->, <->, and | or ! above "
                           "temporal operators are not allowed): "
                           + render_formula(f));
    }

    bool eval_prop(const formula& f, const prop_set& props, letter l)
    {
      switch (f.kind())
        {
        case op::tt: return true;
        case op::ff: return false;
        case op::atom: return l >> props.index(f.name()) & 1;
        case op::neg: return !eval_prop(f.child(), props, l);
        case op::conj: return eval_prop(f.lhs(), props, l) && eval_prop(f.rhs(), props, l);
        case op::disj: return eval_prop(f.lhs(), props, l) || eval_prop(f.rhs(), props, l);
        case op::implies: return !eval_prop(f.lhs(), props, l) || eval_prop(f.rhs(), props, l);
        case op::iff: return eval_prop(f.lhs(), props, l) == eval_prop(f.rhs(), props, l);
        default: throw error("eval_prop: temporal operator");
        }
    }

    bool in_image(const formula& f)
    {
      if (is_propositional(f))
        return true;
      switch (f.kind())
        {
        case op::conj: return in_image(f.lhs()) && in_image(f.rhs());
        case op::next:
        case op::globally: return in_image(f.child());
        default: return false;
        }
    }
  }

  formula translate_fragment(const formula& f)
  {
    if (!in_fragment(f))
      throw fragment_error("formula outside the fragment (R, W, ->, <->, and | or ! above "
                           "temporal operators are not allowed): "
                           + render_formula(f));
    return translate(f);
  }

  safety_dba image_dba(const formula& f, const prop_set& props)
  {
    if (!in_image(f))
      throw fragment_error("image_dba: formula must use only propositional parts, &, X and G: "
                           + render_formula(f, dialect::ltl));
    if (!props.includes(f.atom_set()))
      throw alphabet_error("image_dba: undeclared atom");
    const std::size_t k = props.letter_count();

    // deterministic numbering of sub-formulas
    std::vector<formula> nodes;
    std::unordered_map<const void*, std::uint32_t> index;
    auto number = [&](auto&& self, const formula& g) -> std::uint32_t {
      if (auto it = index.find(g.id()); it != index.end())
        return it->second;
      if (!is_propositional(g))
        for (int i = 0; i < arity(g.kind()); ++i)
          self(self, g.child(i));
      auto id = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back(g);
      index.emplace(g.id(), id);
      return id;
    };
    const std::uint32_t root = number(number, f);

    using obligations = std::vector<std::uint32_t>;
    std::map<obligations, state_id> ids;
    std::vector<obligations> states;
    auto intern = [&](obligations o) {
      auto [it, fresh] = ids.emplace(o, static_cast<state_id>(states.size()));
      if (fresh)
        states.push_back(std::move(o));
      return it->second;
    };
    intern({root});

    constexpr state_id sink_mark = ~state_id{0};
    std::vector<std::vector<state_id>> delta;
    for (std::size_t s = 0; s < states.size(); ++s)
      {
        std::vector<state_id> row(k);
        for (letter l = 0; l < k; ++l)
          {
            bool ok = true;
            obligations next;
            std::vector<std::uint32_t> work = states[s];
            while (!work.empty() && ok)
              {
                std::uint32_t i = work.back();
                work.pop_back();
                const formula& g = nodes[i];
                if (is_propositional(g))
                  ok = eval_prop(g, props, l);
                else if (g.kind() == op::conj)
                  {
                    work.push_back(index.at(g.lhs().id()));
                    work.push_back(index.at(g.rhs().id()));
                  }
                else if (g.kind() == op::next)
                  next.push_back(index.at(g.child().id()));
                else  // globally
                  {
                    work.push_back(index.at(g.child().id()));
                    next.push_back(i);
                  }
              }
            if (!ok)
              row[l] = sink_mark;
            else
              {
                std::sort(next.begin(), next.end());
                next.erase(std::unique(next.begin(), next.end()), next.end());
                row[l] = intern(std::move(next));
              }
          }
        delta.push_back(std::move(row));
      }
    const auto sink = static_cast<state_id>(states.size());
    dfa d(props, states.size() + 1, 0);
    for (state_id s = 0; s < states.size(); ++s)
      {
        d.set_accepting(s);
        for (letter l = 0; l < k; ++l)
          d.set_edge(s, l, delta[s][l] == sink_mark ? sink : delta[s][l]);
      }
    for (letter l = 0; l < k; ++l)
      d.set_edge(sink, l, sink);
    return safety_dba(std::move(d), sink_kind::rejecting);
  }

  safety_dba image_dba(const formula& f) { return image_dba(f, f.atom_set()); }
}
