#include <ltlfmc/automata.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include <ltlfmc/error.hpp>

#include "text.hpp"

namespace ltlfmc
{
  // ---------------------------------------------------------------- nfa

  nfa::nfa(prop_set props, std::size_t num_states)
    : props_(std::move(props)), accepting_(num_states, false), edges_(num_states)
  {
  }

  state_id nfa::add_state(bool accepting)
  {
    accepting_.push_back(accepting);
    edges_.emplace_back();
    return static_cast<state_id>(accepting_.size() - 1);
  }

  void nfa::add_initial(state_id s)
  {
    if (s >= num_states())
      throw validation_error("nfa: initial state out of range");
    initial_.push_back(s);
  }

  void nfa::set_accepting(state_id s, bool acc) { accepting_.at(s) = acc; }

  void nfa::add_edge(state_id src, letter l, state_id dst)
  {
    if (src >= num_states() || dst >= num_states())
      throw validation_error("nfa: edge endpoint out of range");
    if (l & ~props_.full_mask())
      throw alphabet_error("nfa: letter outside the alphabet");
    edges_[src].emplace_back(l, dst);
  }

  void nfa::canonicalize()
  {
    std::sort(initial_.begin(), initial_.end());
    initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
    for (auto& e : edges_)
      {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
      }
  }

  std::size_t nfa::num_edges() const noexcept
  {
    std::size_t n = 0;
    for (const auto& e : edges_)
      n += e.size();
    return n;
  }

  // ---------------------------------------------------------------- dfa

  dfa::dfa(prop_set props, std::size_t num_states, state_id initial)
    : props_(std::move(props)), letters_(props_.letter_count()), initial_(initial),
      accepting_(num_states, false), delta_(num_states * letters_, undefined)
  {
    if (initial >= num_states)
      throw validation_error("dfa: initial state out of range");
  }

  void dfa::set_edge(state_id src, letter l, state_id dst)
  {
    if (src >= num_states() || dst >= num_states() || l >= letters_)
      throw validation_error("dfa: edge out of range");
    delta_[static_cast<std::size_t>(src) * letters_ + l] = dst;
  }

  void dfa::set_accepting(state_id s, bool acc) { accepting_.at(s) = acc; }

  void dfa::check_complete() const
  {
    for (state_id t : delta_)
      if (t == undefined)
        throw validation_error("dfa: transition function is not complete");
  }

  bool dfa::is_sink(state_id s) const
  {
    for (letter l = 0; l < letters_; ++l)
      if (succ(s, l) != s)
        return false;
    return true;
  }

  // --------------------------------------------------------- safety_dba

  safety_dba::safety_dba(dfa carcass, sink_kind kind)
    : carcass_(std::move(carcass)), kind_(kind)
  {
    carcass_.check_complete();
    for (state_id s = 0; s < carcass_.num_states(); ++s)
      {
        bool must_sink = carcass_.is_accepting(s) == (kind_ == sink_kind::accepting);
        if (must_sink && !carcass_.is_sink(s))
          throw validation_error(std::string("sink invariant violated: ")
                                 + (kind_ == sink_kind::rejecting ? "rejecting" : "accepting")
                                 + " state " + std::to_string(s) + " is not a sink");
      }
  }

  // ------------------------------------------------------------ runs

  namespace
  {
    void require_same_props(const prop_set& a, const prop_set& b)
    {
      if (!(a == b))
        throw alphabet_error("alphabet mismatch between automaton and word");
    }
  }

  bool nfa_accepts(const nfa& a, const trace& t)
  {
    require_same_props(a.props(), t.props());
    std::vector<char> cur(a.num_states(), 0), nxt(a.num_states(), 0);
    for (state_id s : a.initial())
      cur[s] = 1;
    for (letter l : t.letters())
      {
        std::fill(nxt.begin(), nxt.end(), 0);
        for (state_id s = 0; s < a.num_states(); ++s)
          if (cur[s])
            for (auto [el, d] : a.edges(s))
              if (el == l)
                nxt[d] = 1;
        cur.swap(nxt);
      }
    for (state_id s = 0; s < a.num_states(); ++s)
      if (cur[s] && a.is_accepting(s))
        return true;
    return false;
  }

  bool dfa_accepts(const dfa& d, const trace& t)
  {
    require_same_props(d.props(), t.props());
    state_id s = d.initial();
    for (letter l : t.letters())
      s = d.succ(s, l);
    return d.is_accepting(s);
  }

  // ------------------------------------------------------ determinize

  namespace
  {
    struct vec_hash
    {
      std::size_t operator()(const std::vector<state_id>& v) const noexcept
      {
        std::size_t h = v.size();
        for (state_id x : v)
          h = h * 1000003u ^ x;
        return h;
      }
    };
  }

  dfa determinize(const nfa& a)
  {
    const std::size_t k = a.props().letter_count();
    std::unordered_map<std::vector<state_id>, state_id, vec_hash> ids;
    std::vector<std::vector<state_id>> subsets;
    auto intern = [&](std::vector<state_id> s) {
      auto [it, fresh] = ids.emplace(s, static_cast<state_id>(subsets.size()));
      if (fresh)
        subsets.push_back(std::move(s));
      return it->second;
    };
    std::vector<state_id> init = a.initial();
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    intern(init);

    std::vector<std::vector<state_id>> delta;  // per subset, per letter
    std::vector<std::vector<state_id>> buckets(k);
    for (std::size_t i = 0; i < subsets.size(); ++i)
      {
        for (auto& b : buckets)
          b.clear();
        for (state_id s : subsets[i])
          for (auto [l, d] : a.edges(s))
            buckets[l].push_back(d);
        std::vector<state_id> row(k);
        for (std::size_t l = 0; l < k; ++l)
          {
            auto& b = buckets[l];
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
            row[l] = intern(b);
          }
        delta.push_back(std::move(row));
      }

    dfa d(a.props(), subsets.size(), 0);
    for (std::size_t i = 0; i < subsets.size(); ++i)
      {
        bool acc = std::any_of(subsets[i].begin(), subsets[i].end(),
                               [&](state_id s) { return a.is_accepting(s); });
        d.set_accepting(static_cast<state_id>(i), acc);
        for (std::size_t l = 0; l < k; ++l)
          d.set_edge(static_cast<state_id>(i), l, delta[i][l]);
      }
    return d;
  }

  // --------------------------------------------------------- minimize

  dfa minimize(const dfa& d)
  {
    const std::size_t k = d.num_letters();
    // reachable states in BFS order
    std::vector<state_id> order;
    std::vector<std::int64_t> pos(d.num_states(), -1);
    order.push_back(d.initial());
    pos[d.initial()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (letter l = 0; l < k; ++l)
        {
          state_id t = d.succ(order[i], l);
          if (pos[t] < 0)
            {
              pos[t] = static_cast<std::int64_t>(order.size());
              order.push_back(t);
            }
        }
    const std::size_t n = order.size();
    std::vector<std::size_t> cls(n);
    for (std::size_t i = 0; i < n; ++i)
      cls[i] = d.is_accepting(order[i]) ? 1 : 0;
    std::size_t num_classes = 0;
    while (true)
      {
        std::vector<std::size_t> next(n);
        // number classes by first occurrence in BFS order
        std::map<std::vector<std::size_t>, std::size_t> numbering;
        for (std::size_t i = 0; i < n; ++i)
          {
            std::vector<std::size_t> sig;
            sig.push_back(cls[i]);
            for (letter l = 0; l < k; ++l)
              sig.push_back(cls[static_cast<std::size_t>(pos[d.succ(order[i], l)])]);
            auto it = numbering.find(sig);
            if (it == numbering.end())
              it = numbering.emplace(std::move(sig), numbering.size()).first;
            next[i] = it->second;
          }
        std::size_t count = numbering.size();
        cls.swap(next);
        if (count == num_classes)
          break;
        num_classes = count;
      }
    dfa m(d.props(), num_classes, static_cast<state_id>(cls[0]));
    for (std::size_t i = 0; i < n; ++i)
      {
        auto c = static_cast<state_id>(cls[i]);
        m.set_accepting(c, d.is_accepting(order[i]));
        for (letter l = 0; l < k; ++l)
          m.set_edge(c, l, static_cast<state_id>(cls[static_cast<std::size_t>(pos[d.succ(order[i], l)])]));
      }
    return m;
  }

  // ------------------------------------------------ sink construction

  safety_dba make_accepting_sinks(const dfa& d)
  {
    d.check_complete();
    dfa c = d;
    for (state_id s = 0; s < c.num_states(); ++s)
      if (c.is_accepting(s))
        for (letter l = 0; l < c.num_letters(); ++l)
          c.set_edge(s, l, s);
    return safety_dba(std::move(c), sink_kind::accepting);
  }

  safety_dba swap_acceptance(const safety_dba& c)
  {
    dfa d = c.carcass();
    for (state_id s = 0; s < d.num_states(); ++s)
      d.set_accepting(s, !d.is_accepting(s));
    return safety_dba(std::move(d), c.kind() == sink_kind::accepting ? sink_kind::rejecting
                                                                      : sink_kind::accepting);
  }

  bool dba_accepts_lasso(const safety_dba& b, const lasso& w)
  {
    require_same_props(b.props(), w.props());
    state_id s = b.initial();
    for (letter l : w.stem())
      s = b.succ(s, l);
    std::vector<std::int64_t> seen_at(b.num_states(), -1);
    std::vector<std::vector<state_id>> visited;  // per iteration
    for (std::int64_t it = 0;; ++it)
      {
        if (seen_at[s] >= 0)
          {
            for (auto j = static_cast<std::size_t>(seen_at[s]); j < visited.size(); ++j)
              for (state_id v : visited[j])
                if (b.is_accepting(v))
                  return true;
            return false;
          }
        seen_at[s] = it;
        std::vector<state_id> round;
        for (letter l : w.cycle())
          {
            s = b.succ(s, l);
            round.push_back(s);
          }
        visited.push_back(std::move(round));
      }
  }

  // ----------------------------------------------------- tightening

  namespace
  {
    std::vector<char> survivable(const safety_dba& b)
    {
      if (b.kind() != sink_kind::rejecting)
        throw validation_error("safety operation on an automaton with accepting sinks");
      const std::size_t n = b.num_states(), k = b.carcass().num_letters();
      std::vector<char> live(n);
      for (state_id s = 0; s < n; ++s)
        live[s] = b.is_accepting(s);
      bool changed = true;
      while (changed)
        {
          changed = false;
          for (state_id s = 0; s < n; ++s)
            if (live[s])
              {
                bool any = false;
                for (letter l = 0; l < k && !any; ++l)
                  any = live[b.succ(s, l)];
                if (!any)
                  {
                    live[s] = 0;
                    changed = true;
                  }
              }
        }
      return live;
    }
  }

  safety_dba safety_tighten(const safety_dba& b)
  {
    auto live = survivable(b);
    dfa d = b.carcass();
    for (state_id s = 0; s < d.num_states(); ++s)
      if (!live[s] && d.is_accepting(s))
        {
          d.set_accepting(s, false);
          for (letter l = 0; l < d.num_letters(); ++l)
            d.set_edge(s, l, s);
        }
    return safety_dba(std::move(d), sink_kind::rejecting);
  }

  bool is_empty(const safety_dba& b)
  {
    return !survivable(b)[b.initial()];
  }

  equivalence safety_equiv(const safety_dba& x0, const safety_dba& y0)
  {
    if (!(x0.props() == y0.props()))
      throw alphabet_error("safety_equiv: automata over different propositions");
    safety_dba x = safety_tighten(x0), y = safety_tighten(y0);
    const std::size_t k = x.carcass().num_letters();
    using pair_t = std::pair<state_id, state_id>;
    std::map<pair_t, std::size_t> index;
    std::vector<pair_t> nodes;
    std::vector<std::pair<std::size_t, letter>> parent;
    auto push = [&](pair_t p, std::size_t par, letter l) {
      if (index.emplace(p, nodes.size()).second)
        {
          nodes.push_back(p);
          parent.emplace_back(par, l);
        }
    };
    push({x.initial(), y.initial()}, 0, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      {
        auto [p, q] = nodes[i];
        if (x.is_accepting(p) != y.is_accepting(q))
          {
            std::vector<letter> stem;
            for (std::size_t j = i; j != 0; j = parent[j].first)
              stem.push_back(parent[j].second);
            std::reverse(stem.begin(), stem.end());
            // continue along survivable states of the accepting side
            const safety_dba& side = x.is_accepting(p) ? x : y;
            state_id s = x.is_accepting(p) ? p : q;
            std::map<state_id, std::size_t> seen;
            std::vector<letter> walk;
            while (!seen.count(s))
              {
                seen.emplace(s, walk.size());
                letter chosen = 0;
                bool found = false;
                for (letter l = 0; l < k && !found; ++l)
                  if (side.is_accepting(side.succ(s, l)))
                    {
                      chosen = l;
                      found = true;
                    }
                if (!found)
                  throw error("safety_equiv: tightened state without survivable successor");
                walk.push_back(chosen);
                s = side.succ(s, chosen);
              }
            std::size_t j = seen[s];
            stem.insert(stem.end(), walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(j));
            std::vector<letter> cycle(walk.begin() + static_cast<std::ptrdiff_t>(j), walk.end());
            return {false, lasso(x.props(), std::move(stem), std::move(cycle))};
          }
        for (letter l = 0; l < k; ++l)
          push({x.succ(p, l), y.succ(q, l)}, i, l);
      }
    return {true, std::nullopt};
  }

  // ------------------------------------------------------------ dot

  namespace
  {
    std::string quote(const std::string& s)
    {
      std::string out = "\"";
      for (char c : s)
        {
          if (c == '"' || c == '\\')
            out += '\\';
          out += c;
        }
      return out + "\"";
    }

    template <class Accepting>
    std::string dot(const std::string& name, const prop_set& props, std::size_t n,
                    const std::vector<state_id>& init, Accepting accepting,
                    const std::map<std::pair<state_id, state_id>, std::vector<letter>>& edges)
    {
      std::ostringstream os;
      os << "digraph " << quote(name) << " {\n";
      os << "  rankdir=LR;\n";
      os << "  node [shape=circle];\n";
      for (std::size_t i = 0; i < init.size(); ++i)
        os << "  init" << i << " [shape=point, label=\"\"];\n";
      for (state_id s = 0; s < n; ++s)
        os << "  " << s << " [shape=" << (accepting(s) ? "doublecircle" : "circle") << "];\n";
      for (std::size_t i = 0; i < init.size(); ++i)
        os << "  init" << i << " -> " << init[i] << ";\n";
      for (const auto& [e, ls] : edges)
        {
          std::string label;
          for (std::size_t i = 0; i < ls.size(); ++i)
            label += (i ? " " : "") + props.format(ls[i]);
          os << "  " << e.first << " -> " << e.second << " [label=" << quote(label) << "];\n";
        }
      os << "}\n";
      return os.str();
    }

    std::map<std::pair<state_id, state_id>, std::vector<letter>> dfa_edges(const dfa& d)
    {
      std::map<std::pair<state_id, state_id>, std::vector<letter>> e;
      for (state_id s = 0; s < d.num_states(); ++s)
        for (letter l = 0; l < d.num_letters(); ++l)
          e[{s, d.succ(s, l)}].push_back(l);
      return e;
    }
  }

  std::string to_dot(const nfa& a)
  {
    std::map<std::pair<state_id, state_id>, std::vector<letter>> e;
    for (state_id s = 0; s < a.num_states(); ++s)
      for (auto [l, d] : a.edges(s))
        e[{s, d}].push_back(l);
    for (auto& [k, v] : e)
      {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      }
    std::vector<state_id> init = a.initial();
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    return dot("nfa", a.props(), a.num_states(), init,
               [&](state_id s) { return a.is_accepting(s); }, e);
  }

  std::string to_dot(const dfa& d)
  {
    return dot("dfa", d.props(), d.num_states(), {d.initial()},
               [&](state_id s) { return d.is_accepting(s); }, dfa_edges(d));
  }

  std::string to_dot(const safety_dba& b)
  {
    return dot("dba", b.props(), b.num_states(), {b.initial()},
               [&](state_id s) { return b.is_accepting(s); }, dfa_edges(b.carcass()));
  }

  // ------------------------------------------------------- aut dump

  namespace
  {
    std::string letter_text(const prop_set& props, letter l)
    {
      std::string s = "{";
      for (const auto& n : props.true_props(l))
        s += " " + n;
      return s + " }";
    }

    void write_header(std::ostringstream& os, const char* kind, const prop_set& props)
    {
      os << kind << "\nprops";
      for (const auto& n : props.names())
        os << ' ' << n;
      os << '\n';
    }

    void write_dfa_body(std::ostringstream& os, const dfa& d)
    {
      for (state_id s = 0; s < d.num_states(); ++s)
        os << "state " << s << (d.is_accepting(s) ? " accepting" : "") << '\n';
      os << "init " << d.initial() << '\n';
      for (state_id s = 0; s < d.num_states(); ++s)
        for (letter l = 0; l < d.num_letters(); ++l)
          os << "edge " << s << ' ' << letter_text(d.props(), l) << ' ' << d.succ(s, l) << '\n';
    }
  }

  std::string write_aut(const automaton& a)
  {
    std::ostringstream os;
    if (const auto* n = std::get_if<nfa>(&a))
      {
        nfa c = *n;
        c.canonicalize();
        write_header(os, "nfa", c.props());
        for (state_id s = 0; s < c.num_states(); ++s)
          os << "state " << s << (c.is_accepting(s) ? " accepting" : "") << '\n';
        os << "init";
        for (state_id s : c.initial())
          os << ' ' << s;
        os << '\n';
        for (state_id s = 0; s < c.num_states(); ++s)
          for (auto [l, d] : c.edges(s))
            os << "edge " << s << ' ' << letter_text(c.props(), l) << ' ' << d << '\n';
      }
    else if (const auto* d = std::get_if<dfa>(&a))
      {
        write_header(os, "dfa", d->props());
        write_dfa_body(os, *d);
      }
    else
      {
        const auto& b = std::get<safety_dba>(a);
        write_header(os, "dba", b.props());
        os << "sinks " << (b.kind() == sink_kind::rejecting ? "rejecting" : "accepting") << '\n';
        write_dfa_body(os, b.carcass());
      }
    return os.str();
  }

  automaton parse_aut(std::string_view text)
  {
    auto lines = detail::tokenize(text);
    if (lines.empty())
      throw parse_error("empty automaton dump", 1, 1);
    const std::string kind = lines[0].at(0);
    if (kind != "nfa" && kind != "dfa" && kind != "dba")
      lines[0].fail("expected header nfa, dfa or dba");
    std::optional<prop_set> props;
    std::optional<sink_kind> sinks;
    std::vector<std::pair<state_id, bool>> states;
    std::vector<state_id> init;
    struct edge_t
    {
      state_id src;
      letter l;
      state_id dst;
    };
    std::vector<edge_t> edges;
    auto number = [](const detail::line& ln, std::size_t i) {
      const std::string& w = ln.at(i);
      if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos)
        ln.fail("expected a state number", i);
      return static_cast<state_id>(std::stoul(w));
    };
    for (std::size_t li = 1; li < lines.size(); ++li)
      {
        const auto& ln = lines[li];
        const std::string& key = ln.at(0);
        if (key == "props")
          {
            std::vector<std::string> names;
            for (std::size_t i = 1; i < ln.words.size(); ++i)
              names.push_back(ln.words[i].text);
            props = prop_set(std::move(names));
          }
        else if (key == "sinks")
          sinks = ln.at(1) == "rejecting" ? sink_kind::rejecting : sink_kind::accepting;
        else if (key == "state")
          states.emplace_back(number(ln, 1), ln.words.size() > 2 && ln.at(2) == "accepting");
        else if (key == "init")
          for (std::size_t i = 1; i < ln.words.size(); ++i)
            init.push_back(number(ln, i));
        else if (key == "edge")
          {
            if (!props)
              ln.fail("edge before props");
            std::size_t i = 2;
            state_id src = number(ln, 1);
            letter l = props->make_letter(detail::read_set(ln, i));
            edges.push_back({src, l, number(ln, i)});
          }
        else
          ln.fail("unknown directive '" + key + "'");
      }
    if (!props)
      throw parse_error("missing props line", 1, 1);
    const std::size_t n = states.size();
    if (kind == "nfa")
      {
        nfa a(*props, n);
        for (auto [s, acc] : states)
          a.set_accepting(s, acc);
        for (state_id s : init)
          a.add_initial(s);
        for (const auto& e : edges)
          a.add_edge(e.src, e.l, e.dst);
        a.canonicalize();
        return a;
      }
    if (init.size() != 1)
      throw parse_error("deterministic automaton needs exactly one initial state", 1, 1);
    dfa d(*props, n, init[0]);
    for (auto [s, acc] : states)
      d.set_accepting(s, acc);
    for (const auto& e : edges)
      d.set_edge(e.src, e.l, e.dst);
    d.check_complete();
    if (kind == "dfa")
      return d;
    return safety_dba(std::move(d), sinks.value_or(sink_kind::rejecting));
  }
}
