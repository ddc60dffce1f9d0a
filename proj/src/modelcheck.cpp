#include <ltlfmc/modelcheck.hpp>

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <ltlfmc/compile.hpp>
#include <ltlfmc/error.hpp>
#include <ltlfmc/semantics.hpp>

#include "text.hpp"

namespace ltlfmc
{
  namespace
  {
    using clock = std::chrono::steady_clock;

    double since(clock::time_point t0)
    {
      return std::chrono::duration<double>(clock::now() - t0).count();
    }

    void require_atoms(const transition_system& m, const formula& f)
    {
      for (const auto& a : f.atoms())
        if (!m.props().contains(a))
          throw alphabet_error("formula atom '" + a + "' is not a proposition of the system");
    }

    void require_kind(const transition_system& m, system_kind k)
    {
      if (m.kind() != k)
        throw validation_error(std::string("expected a ") + to_string(k) + " system, got a "
                               + to_string(m.kind()) + " one");
    }

    std::uint64_t pack(state_id a, std::uint32_t b)
    {
      return std::uint64_t{a} << 32 | b;
    }

    // Decides "no prefix of the lasso satisfies f" by direct evaluation up to
    // a horizon after which the prefix verdicts repeat.
    class lasso_falsifier
    {
    public:
      lasso_falsifier(const formula& f, const prop_set& props) : f_(f), props_(props)
      {
        if (f.atoms().size() <= max_explicit_props)
          dfa_size_ = ltlf_to_dfa(f).num_states();
      }

      std::size_t horizon(const std::vector<letter>& stem, const std::vector<letter>& cycle)
      {
        if (dfa_size_)
          return stem.size() + cycle.size() * (*dfa_size_ + 1);
        // Too many atoms for the explicit DFA: run the deterministic token
        // automaton of f until (token, cycle offset) repeats.
        if (!tokens_)
          tokens_.emplace(lazy_prefix_dba(formula::neg(f_), props_));
        auto& a = *tokens_;
        auto t = a.initial();
        std::unordered_map<std::uint64_t, std::size_t> seen;
        for (std::size_t i = 0;; ++i)
          {
            if (i >= stem.size())
              {
                std::size_t off = (i - stem.size()) % cycle.size();
                if (!seen.emplace(pack(t, static_cast<std::uint32_t>(off)), i).second)
                  return i;
              }
            if (a.is_rejecting(t))
              return i;
            t = a.step(t, i < stem.size() ? stem[i] : cycle[(i - stem.size()) % cycle.size()]);
          }
      }

      /// Index (1-based length) of the first prefix satisfying f, or 0.
      std::size_t first_satisfying_prefix(const std::vector<letter>& stem,
                                          const std::vector<letter>& cycle, std::size_t h)
      {
        std::vector<letter> word;
        word.reserve(h);
        for (std::size_t i = 0; i < h; ++i)
          {
            word.push_back(i < stem.size() ? stem[i] : cycle[(i - stem.size()) % cycle.size()]);
            if (evaluate(f_, props_, word))
              return i + 1;
          }
        return 0;
      }

    private:
      formula f_;
      prop_set props_;
      std::optional<std::size_t> dfa_size_;
      std::optional<lazy_safety_automaton> tokens_;
    };

    // Iterative Tarjan; returns the component index of every node.
    std::vector<std::uint32_t> strongly_connected(const std::vector<std::vector<std::uint32_t>>& adj)
    {
      constexpr std::uint32_t none = ~std::uint32_t{0};
      const std::size_t n = adj.size();
      std::vector<std::uint32_t> index(n, none), low(n), comp(n, none), stack;
      std::vector<bool> on_stack(n, false);
      std::vector<std::pair<std::uint32_t, std::size_t>> call;
      std::uint32_t counter = 0, comps = 0;
      for (std::uint32_t root = 0; root < n; ++root)
        {
          if (index[root] != none)
            continue;
          call.emplace_back(root, 0);
          while (!call.empty())
            {
              auto& [v, next] = call.back();
              if (next == 0)
                {
                  index[v] = low[v] = counter++;
                  stack.push_back(v);
                  on_stack[v] = true;
                }
              if (next < adj[v].size())
                {
                  std::uint32_t w = adj[v][next++];
                  if (index[w] == none)
                    call.emplace_back(w, 0);
                  else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
                  continue;
                }
              if (low[v] == index[v])
                {
                  std::uint32_t w;
                  do
                    {
                      w = stack.back();
                      stack.pop_back();
                      on_stack[w] = false;
                      comp[w] = comps;
                    }
                  while (w != v);
                  ++comps;
                }
              std::uint32_t done = v;
              call.pop_back();
              if (!call.empty())
                {
                  std::uint32_t parent = call.back().first;
                  low[parent] = std::min(low[parent], low[done]);
                }
            }
        }
      return comp;
    }

    constexpr std::size_t path_guard = 1'000'000;
  }

  const char* to_string(outcome o)
  {
    return o == outcome::holds ? "holds" : "violated";
  }

  std::vector<letter> path_letters(const transition_system& m, const std::vector<state_id>& states)
  {
    std::vector<letter> out;
    out.reserve(states.size());
    for (state_id s : states)
      out.push_back(m.label(s));
    return out;
  }

  // ------------------------------------------------------- terminating

  verdict check_terminating(const transition_system& m, const formula& f)
  {
    require_kind(m, system_kind::terminating);
    require_atoms(m, f);
    auto t0 = clock::now();
    verdict v;

    // Reachable terminal states decide vacuity.
    {
      std::vector<bool> seen(m.num_states(), false);
      std::vector<state_id> todo(m.initial().begin(), m.initial().end());
      for (state_id s : todo)
        seen[s] = true;
      bool any_terminal = false;
      while (!todo.empty())
        {
          state_id s = todo.back();
          todo.pop_back();
          any_terminal = any_terminal || m.is_terminal(s);
          for (state_id d : m.successors(s))
            if (!seen[d])
              {
                seen[d] = true;
                todo.push_back(d);
              }
        }
      if (!any_terminal)
        v.warnings.push_back("no terminal state is reachable: the system has no executions and "
                             "every formula holds vacuously");
    }

    lazy_nfa a(formula::neg(f), m.props());
    struct node
    {
      state_id s;
      state_id q;  // obligation set before reading L(s)
      std::uint32_t parent;
    };
    constexpr std::uint32_t root = ~std::uint32_t{0};
    std::vector<node> nodes;
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    auto visit = [&](state_id s, state_id q, std::uint32_t parent) {
      if (ids.emplace(pack(s, q), static_cast<std::uint32_t>(nodes.size())).second)
        nodes.push_back({s, q, parent});
    };
    for (state_id s0 : m.initial())
      visit(s0, a.initial(), root);

    std::optional<std::uint32_t> bad;
    for (std::size_t head = 0; head < nodes.size(); ++head)
      {
        v.stats.peak_frontier = std::max(v.stats.peak_frontier, nodes.size() - head);
        auto [s, q, parent] = nodes[head];
        letter l = m.label(s);
        if (m.is_terminal(s) && a.accepts(q, l))
          {
            bad = static_cast<std::uint32_t>(head);
            break;
          }
        if (m.successors(s).empty())
          continue;
        std::vector<state_id> next = a.successors(q, l);
        for (state_id d : m.successors(s))
          for (state_id q2 : next)
            visit(d, q2, static_cast<std::uint32_t>(head));
      }
    v.stats.explored_states = nodes.size();
    v.stats.automaton_states = a.num_states();
    if (bad)
      {
        finite_path p;
        for (std::uint32_t i = *bad; i != root; i = nodes[i].parent)
          p.states.push_back(nodes[i].s);
        std::reverse(p.states.begin(), p.states.end());
        v.result = outcome::violated;
        v.cex = std::move(p);
      }
    v.stats.seconds = since(t0);
    return v;
  }

  // ---------------------------------------------------- non-terminating

  verdict check_nonterminating(const transition_system& m, const formula& f)
  {
    require_kind(m, system_kind::nonterminating);
    require_atoms(m, f);
    auto t0 = clock::now();
    verdict v;

    // Safe product states: (s, token after reading L(s)).
    lazy_safety_automaton a = lazy_prefix_dba(formula::neg(f), m.props());
    struct node
    {
      state_id s;
      lazy_safety_automaton::token t;
      std::uint32_t parent;
    };
    constexpr std::uint32_t root = ~std::uint32_t{0};
    std::vector<node> nodes;
    std::vector<std::vector<std::uint32_t>> adj;
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    auto visit = [&](state_id s, lazy_safety_automaton::token t,
                     std::uint32_t parent) -> std::optional<std::uint32_t> {
      if (a.is_rejecting(t))
        {
          ++v.stats.pruned_states;
          return std::nullopt;
        }
      auto [it, fresh] = ids.emplace(pack(s, t), static_cast<std::uint32_t>(nodes.size()));
      if (fresh)
        {
          nodes.push_back({s, t, parent});
          adj.emplace_back();
        }
      return it->second;
    };
    for (state_id s0 : m.initial())
      (void)visit(s0, a.step(a.initial(), m.label(s0)), root);
    for (std::size_t head = 0; head < nodes.size(); ++head)
      {
        v.stats.peak_frontier = std::max(v.stats.peak_frontier, nodes.size() - head);
        auto [s, t, parent] = nodes[head];
        if (a.is_rejecting(t))
          ++v.stats.rejecting_expansions;
        for (state_id d : m.successors(s))
          if (auto id = visit(d, a.step(t, m.label(d)), static_cast<std::uint32_t>(head)))
            adj[head].push_back(*id);
      }
    v.stats.explored_states = nodes.size();
    v.stats.automaton_states = a.token_count();

    auto comp = strongly_connected(adj);
    std::vector<std::size_t> comp_size(nodes.size() + 1, 0);
    for (auto c : comp)
      ++comp_size[c];
    // Node indices follow BFS order, so the first cyclic node has the
    // shortest stem.
    std::optional<std::uint32_t> entry;
    for (std::uint32_t i = 0; i < nodes.size() && !entry; ++i)
      if (comp_size[comp[i]] > 1 || std::find(adj[i].begin(), adj[i].end(), i) != adj[i].end())
        entry = i;
    if (entry)
      {
        lasso_path p;
        for (std::uint32_t i = *entry; i != root; i = nodes[i].parent)
          p.stem.push_back(nodes[i].s);
        std::reverse(p.stem.begin(), p.stem.end());

        // Shortest cycle through the entry, inside its component.
        std::unordered_map<std::uint32_t, std::uint32_t> back;
        std::deque<std::uint32_t> todo{*entry};
        bool closed = false;
        std::uint32_t last = *entry;
        while (!todo.empty() && !closed)
          {
            std::uint32_t x = todo.front();
            todo.pop_front();
            for (std::uint32_t y : adj[x])
              {
                if (comp[y] != comp[*entry])
                  continue;
                if (y == *entry)
                  {
                    closed = true;
                    last = x;
                    break;
                  }
                if (back.emplace(y, x).second)
                  todo.push_back(y);
              }
          }
        if (!closed)
          throw error("internal: cyclic product state without a cycle");
        std::vector<state_id> cyc{nodes[*entry].s};
        for (std::uint32_t i = last; i != *entry; i = back.at(i))
          cyc.push_back(nodes[i].s);
        std::reverse(cyc.begin(), cyc.end());
        p.cycle = std::move(cyc);
        v.result = outcome::violated;
        v.cex = std::move(p);
      }
    v.stats.seconds = since(t0);
    return v;
  }

  verdict check(const transition_system& m, const formula& f)
  {
    return m.kind() == system_kind::terminating ? check_terminating(m, f)
                                                : check_nonterminating(m, f);
  }

  // ------------------------------------------------------ certification

  namespace
  {
    std::optional<std::string> replay(const transition_system& m, const std::vector<state_id>& seq)
    {
      if (seq.empty())
        return "empty path";
      for (state_id s : seq)
        if (s >= m.num_states())
          return "state index " + std::to_string(s) + " out of range";
      if (!m.is_initial(seq.front()))
        return "path starts at non-initial state '" + m.name(seq.front()) + "'";
      for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!m.has_edge(seq[i], seq[i + 1]))
          return "no edge " + m.name(seq[i]) + " -> " + m.name(seq[i + 1]);
      return std::nullopt;
    }

    certification structural(std::string msg)
    {
      return {certification::failure::structural, std::move(msg), 0};
    }
  }

  certification certify_counterexample(const transition_system& m, const formula& f,
                                       const counterexample& c)
  {
    require_atoms(m, f);
    if (const auto* p = std::get_if<finite_path>(&c))
      {
        if (m.kind() != system_kind::terminating)
          return structural("finite counterexample for a non-terminating system");
        if (auto err = replay(m, p->states))
          return structural(*err);
        if (!m.is_terminal(p->states.back()))
          return structural("path ends at non-terminal state '" + m.name(p->states.back()) + "'");
        auto letters = path_letters(m, p->states);
        if (!evaluate(formula::neg(f), m.props(), letters))
          return {certification::failure::semantic, "the path's trace satisfies the formula",
                  letters.size()};
        return {certification::failure::none, {}, letters.size()};
      }
    const auto& l = std::get<lasso_path>(c);
    if (m.kind() != system_kind::nonterminating)
      return structural("lasso counterexample for a terminating system");
    if (l.cycle.empty())
      return structural("empty cycle");
    std::vector<state_id> seq = l.stem;
    seq.insert(seq.end(), l.cycle.begin(), l.cycle.end());
    if (auto err = replay(m, seq))
      return structural(*err);
    if (!m.has_edge(l.cycle.back(), l.cycle.front()))
      return structural("cycle does not close: no edge " + m.name(l.cycle.back()) + " -> "
                        + m.name(l.cycle.front()));
    lasso_falsifier lf(f, m.props());
    auto stem = path_letters(m, l.stem), cycle = path_letters(m, l.cycle);
    std::size_t h = lf.horizon(stem, cycle);
    if (std::size_t n = lf.first_satisfying_prefix(stem, cycle, h))
      return {certification::failure::semantic,
              "the prefix of length " + std::to_string(n) + " satisfies the formula", h};
    return {certification::failure::none, {}, h};
  }

  // ----------------------------------------------------- bounded oracle

  verdict bounded_oracle_check(const transition_system& m, const formula& f, system_kind mode,
                               std::size_t max_len)
  {
    require_kind(m, mode);
    require_atoms(m, f);
    auto t0 = clock::now();
    verdict v;
    v.bounded = true;
    std::optional<lasso_falsifier> lf;
    if (mode == system_kind::nonterminating)
      lf.emplace(f, m.props());

    std::vector<state_id> path;
    std::size_t visited = 0;
    // DFS over paths of exactly `len` states; true once a violation is found.
    std::function<bool(std::size_t)> extend = [&](std::size_t len) -> bool {
      if (++visited > path_guard)
        throw bound_error("bounded oracle: more than 10^6 paths");
      if (path.size() == len)
        {
          if (mode == system_kind::terminating)
            {
              if (!m.is_terminal(path.back()))
                return false;
              if (!evaluate(f, m.props(), path_letters(m, path)))
                {
                  v.cex = finite_path{path};
                  return true;
                }
              return false;
            }
          for (std::size_t j = 0; j < len; ++j)
            if (m.has_edge(path.back(), path[j]))
              {
                lasso_path l{{path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j)},
                             {path.begin() + static_cast<std::ptrdiff_t>(j), path.end()}};
                auto stem = path_letters(m, l.stem), cycle = path_letters(m, l.cycle);
                if (lf->first_satisfying_prefix(stem, cycle, lf->horizon(stem, cycle)) == 0)
                  {
                    v.cex = std::move(l);
                    return true;
                  }
              }
          return false;
        }
      for (state_id d : m.successors(path.back()))
        {
          path.push_back(d);
          bool found = extend(len);
          path.pop_back();
          if (found)
            return true;
        }
      return false;
    };
    for (std::size_t len = 1; len <= max_len && !v.cex; ++len)
      for (state_id s0 : m.initial())
        {
          path.assign(1, s0);
          if (extend(len))
            break;
        }
    v.stats.explored_states = visited;
    if (v.cex)
      v.result = outcome::violated;
    v.stats.seconds = since(t0);
    return v;
  }

  // --------------------------------------------------------- cex format

  std::string render_cex(const transition_system& m, const counterexample& c)
  {
    std::ostringstream os;
    auto list = [&](const char* key, const std::vector<state_id>& xs) {
      os << key;
      for (state_id s : xs)
        os << ' ' << m.name(s);
      os << '\n';
    };
    if (const auto* p = std::get_if<finite_path>(&c))
      {
        os << "cex finite\n";
        list("path", p->states);
      }
    else
      {
        const auto& l = std::get<lasso_path>(c);
        os << "cex lasso\n";
        list("stem", l.stem);
        list("cycle", l.cycle);
      }
    return os.str();
  }

  counterexample parse_cex(const transition_system& m, std::string_view text)
  {
    auto lines = detail::tokenize(text);
    if (lines.empty())
      throw parse_error("empty counterexample", 1, 1);
    const auto& head = lines[0];
    if (head.at(0) != "cex" || head.words.size() != 2
        || (head.at(1) != "finite" && head.at(1) != "lasso"))
      head.fail("expected 'cex finite|lasso' header");
    bool finite = head.at(1) == "finite";
    std::optional<std::vector<state_id>> path, stem, cycle;
    for (std::size_t li = 1; li < lines.size(); ++li)
      {
        const auto& ln = lines[li];
        const std::string& key = ln.at(0);
        std::optional<std::vector<state_id>>* slot = nullptr;
        if (finite && key == "path")
          slot = &path;
        else if (!finite && key == "stem")
          slot = &stem;
        else if (!finite && key == "cycle")
          slot = &cycle;
        else
          ln.fail("unexpected line '" + key + "'");
        if (slot->has_value())
          ln.fail("duplicate '" + key + "' line");
        std::vector<state_id> xs;
        for (std::size_t i = 1; i < ln.words.size(); ++i)
          {
            auto s = m.find(ln.words[i].text);
            if (!s)
              ln.fail("unknown state '" + ln.words[i].text + "'", i);
            xs.push_back(*s);
          }
        *slot = std::move(xs);
      }
    if (finite)
      {
        if (!path)
          throw parse_error("missing 'path' line", 1, 1);
        return finite_path{*path};
      }
    if (!cycle)
      throw parse_error("missing 'cycle' line", 1, 1);
    return lasso_path{stem.value_or(std::vector<state_id>{}), *cycle};
  }
}
