#include <ltlfmc/systems.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include <ltlfmc/error.hpp>

#include "text.hpp"

namespace ltlfmc
{
  namespace
  {
    bool valid_state_name(std::string_view s)
    {
      if (s.empty())
        return false;
      return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')
               || c == '_' || c == '.' || c == '@' || c == '-' || c == '+';
      });
    }
  }

  const char* to_string(system_kind k)
  {
    return k == system_kind::terminating ? "terminating" : "nonterminating";
  }

  // ------------------------------------------------ transition_system

  transition_system::transition_system(system_kind kind, prop_set props)
    : kind_(kind), props_(std::move(props))
  {
  }

  state_id transition_system::add_state(std::string name, letter label)
  {
    if (!valid_state_name(name))
      throw validation_error("invalid state name '" + name + "'");
    if (find(name))
      throw validation_error("duplicate state '" + name + "'");
    if (label & ~props_.full_mask())
      throw alphabet_error("label of '" + name + "' uses undeclared propositions");
    names_.push_back(std::move(name));
    labels_.push_back(label);
    succ_.emplace_back();
    terminal_.push_back(false);
    return static_cast<state_id>(names_.size() - 1);
  }

  void transition_system::add_edge(state_id src, state_id dst)
  {
    if (src >= num_states() || dst >= num_states())
      throw validation_error("dangling edge");
    succ_[src].push_back(dst);
  }

  void transition_system::add_initial(state_id s)
  {
    if (s >= num_states())
      throw validation_error("initial state does not exist");
    initial_.push_back(s);
  }

  void transition_system::add_terminal(state_id s)
  {
    if (s >= num_states())
      throw validation_error("terminal state does not exist");
    if (kind_ != system_kind::terminating)
      throw validation_error("terminal states in a non-terminating system");
    terminal_[s] = true;
  }

  void transition_system::canonicalize()
  {
    for (auto& v : succ_)
      {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      }
    std::sort(initial_.begin(), initial_.end());
    initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
  }

  void transition_system::validate() const
  {
    if (initial_.empty())
      throw validation_error("no initial state");
    if (kind_ == system_kind::terminating
        && std::none_of(terminal_.begin(), terminal_.end(), [](bool b) { return b; }))
      throw validation_error("terminating system with an empty terminal set");
    for (state_id s = 0; s < num_states(); ++s)
      if (succ_[s].empty())
        {
          if (kind_ == system_kind::nonterminating)
            throw validation_error("state '" + names_[s]
                                   + "' has no successor in a non-terminating system");
          if (!terminal_[s])
            throw validation_error("non-terminal state '" + names_[s] + "' has no successor");
        }
  }

  bool transition_system::has_edge(state_id src, state_id dst) const
  {
    const auto& v = succ_.at(src);
    return std::find(v.begin(), v.end(), dst) != v.end();
  }

  bool transition_system::is_initial(state_id s) const
  {
    return std::find(initial_.begin(), initial_.end(), s) != initial_.end();
  }

  std::optional<state_id> transition_system::find(std::string_view name) const
  {
    for (state_id s = 0; s < names_.size(); ++s)
      if (names_[s] == name)
        return s;
    return std::nullopt;
  }

  // ------------------------------------------------------------ ts I/O

  transition_system parse_ts(std::string_view text)
  {
    auto lines = detail::tokenize(text);
    if (lines.empty())
      throw parse_error("empty system description", 1, 1);
    const auto& head = lines[0];
    if (head.at(0) != "system" || head.words.size() != 2)
      head.fail("expected 'system terminating|nonterminating' header");
    system_kind kind;
    if (head.at(1) == "terminating")
      kind = system_kind::terminating;
    else if (head.at(1) == "nonterminating")
      kind = system_kind::nonterminating;
    else
      head.fail("unknown system kind '" + head.at(1) + "'", 1);

    std::vector<std::string> props;
    bool saw_props = false;
    struct pending_state
    {
      std::string name;
      std::vector<std::string> label;
      const detail::line* where;
    };
    std::vector<pending_state> states;
    std::vector<std::pair<std::string, const detail::line*>> inits, terminals;
    std::vector<std::tuple<std::string, std::string, const detail::line*>> edges;
    for (std::size_t li = 1; li < lines.size(); ++li)
      {
        const auto& ln = lines[li];
        const std::string& key = ln.at(0);
        if (key == "props")
          {
            saw_props = true;
            for (std::size_t i = 1; i < ln.words.size(); ++i)
              props.push_back(ln.words[i].text);
          }
        else if (key == "state")
          {
            std::size_t i = 2;
            std::vector<std::string> label =
                ln.words.size() > 2 ? detail::read_set(ln, i) : std::vector<std::string>{};
            if (i != ln.words.size())
              ln.fail("trailing input after state label", i);
            states.push_back({ln.at(1), std::move(label), &ln});
          }
        else if (key == "init" || key == "terminal")
          {
            if (ln.words.size() < 2)
              ln.fail("expected at least one state");
            for (std::size_t i = 1; i < ln.words.size(); ++i)
              (key == "init" ? inits : terminals).emplace_back(ln.words[i].text, &ln);
          }
        else if (key == "edge")
          {
            if (ln.words.size() != 3)
              ln.fail("expected 'edge <src> <dst>'");
            edges.emplace_back(ln.at(1), ln.at(2), &ln);
          }
        else if (key == "system")
          ln.fail("duplicate header");
        else
          ln.fail("unknown directive '" + key + "'");
      }
    if (!saw_props)
      throw parse_error("missing 'props' line", 1, 1);
    prop_set ps(props);
    transition_system ts(kind, ps);
    for (const auto& st : states)
      {
        letter l = 0;
        for (const auto& p : st.label)
          {
            auto i = ps.find(p);
            if (!i)
              st.where->fail("undeclared prop '" + p + "' in label of '" + st.name + "'");
            l |= letter{1} << *i;
          }
        if (ts.find(st.name))
          st.where->fail("duplicate state '" + st.name + "'", 1);
        if (!valid_state_name(st.name))
          st.where->fail("invalid state name '" + st.name + "'", 1);
        ts.add_state(st.name, l);
      }
    auto lookup = [&](const std::string& n, const detail::line* where, const char* what) {
      auto s = ts.find(n);
      if (!s)
        where->fail(std::string(what) + " refers to undeclared state '" + n + "'");
      return *s;
    };
    for (const auto& [src, dst, where] : edges)
      ts.add_edge(lookup(src, where, "dangling edge:"), lookup(dst, where, "dangling edge:"));
    for (const auto& [n, where] : inits)
      ts.add_initial(lookup(n, where, "init"));
    for (const auto& [n, where] : terminals)
      {
        if (kind != system_kind::terminating)
          where->fail("terminal states in a non-terminating system");
        ts.add_terminal(lookup(n, where, "terminal"));
      }
    ts.canonicalize();
    ts.validate();
    return ts;
  }

  std::string render_ts(const transition_system& ts)
  {
    std::ostringstream os;
    os << "system " << to_string(ts.kind()) << "\nprops";
    for (const auto& p : ts.props().names())
      os << ' ' << p;
    os << '\n';
    for (state_id s = 0; s < ts.num_states(); ++s)
      {
        os << "state " << ts.name(s) << " {";
        for (const auto& p : ts.props().true_props(ts.label(s)))
          os << ' ' << p;
        os << " }\n";
      }
    os << "init";
    for (state_id s : ts.initial())
      os << ' ' << ts.name(s);
    os << '\n';
    if (ts.kind() == system_kind::terminating)
      {
        os << "terminal";
        for (state_id s = 0; s < ts.num_states(); ++s)
          if (ts.is_terminal(s))
            os << ' ' << ts.name(s);
        os << '\n';
      }
    for (state_id s = 0; s < ts.num_states(); ++s)
      for (state_id d : ts.successors(s))
        os << "edge " << ts.name(s) << ' ' << ts.name(d) << '\n';
    return os.str();
  }

  // --------------------------------------------------------- moore I/O

  moore_machine parse_moore(std::string_view text)
  {
    auto lines = detail::tokenize(text);
    if (lines.empty())
      throw parse_error("empty machine description", 1, 1);
    const auto& head = lines[0];
    moore_machine m;
    if (head.at(0) != "moore")
      head.fail("expected 'moore [terminating]' header");
    if (head.words.size() == 2 && head.at(1) == "terminating")
      m.kind = system_kind::terminating;
    else if (head.words.size() != 1)
      head.fail("expected 'moore [terminating]' header", 1);

    std::vector<std::string> inputs, outputs;
    struct state_decl
    {
      std::string name;
      std::vector<std::string> out;
      const detail::line* where;
    };
    std::vector<state_decl> decls;
    struct row
    {
      std::string src;
      std::optional<std::vector<std::string>> in;  // nullopt = default
      std::string dst;
      const detail::line* where;
    };
    std::vector<row> rows;
    std::vector<std::pair<std::string, const detail::line*>> inits, terminals;
    for (std::size_t li = 1; li < lines.size(); ++li)
      {
        const auto& ln = lines[li];
        const std::string& key = ln.at(0);
        if (key == "inputs" || key == "outputs")
          for (std::size_t i = 1; i < ln.words.size(); ++i)
            (key == "inputs" ? inputs : outputs).push_back(ln.words[i].text);
        else if (key == "state")
          {
            std::vector<std::string> out;
            if (ln.words.size() > 2)
              {
                if (ln.at(2) != "outputs")
                  ln.fail("expected 'outputs'", 2);
                std::size_t i = 3;
                out = detail::read_set(ln, i);
                if (i != ln.words.size())
                  ln.fail("trailing input", i);
              }
            decls.push_back({ln.at(1), std::move(out), &ln});
          }
        else if (key == "init")
          {
            if (ln.words.size() != 2)
              ln.fail("expected 'init <id>'");
            inits.emplace_back(ln.at(1), &ln);
          }
        else if (key == "terminal")
          {
            if (ln.words.size() < 2)
              ln.fail("expected at least one state");
            for (std::size_t i = 1; i < ln.words.size(); ++i)
              terminals.emplace_back(ln.words[i].text, &ln);
          }
        else if (key == "delta")
          {
            if (ln.at(2) == "default")
              {
                if (ln.words.size() != 4)
                  ln.fail("expected 'delta <id> default <id>'");
                rows.push_back({ln.at(1), std::nullopt, ln.at(3), &ln});
              }
            else
              {
                std::size_t i = 2;
                auto in = detail::read_set(ln, i);
                if (i + 1 != ln.words.size())
                  ln.fail("expected 'delta <id> { inputs } <id>'");
                rows.push_back({ln.at(1), std::move(in), ln.at(i), &ln});
              }
          }
        else
          ln.fail("unknown directive '" + key + "'");
      }
    m.inputs = prop_set(inputs);
    m.outputs = prop_set(outputs);
    for (const auto& n : m.inputs.names())
      if (m.outputs.contains(n))
        throw validation_error("proposition '" + n + "' is both an input and an output");
    if (m.inputs.size() > max_explicit_props)
      throw bound_error("more than 8 inputs");
    const std::size_t k = m.inputs.letter_count();
    std::map<std::string, state_id> ids;
    for (const auto& d : decls)
      {
        if (!valid_state_name(d.name))
          d.where->fail("invalid state name '" + d.name + "'", 1);
        if (!ids.emplace(d.name, static_cast<state_id>(m.states.size())).second)
          d.where->fail("duplicate state '" + d.name + "'", 1);
        m.states.push_back(d.name);
        letter o = 0;
        for (const auto& p : d.out)
          {
            auto i = m.outputs.find(p);
            if (!i)
              d.where->fail("undeclared output '" + p + "'");
            o |= letter{1} << *i;
          }
        m.output.push_back(o);
      }
    if (m.states.empty())
      throw validation_error("machine without states");
    auto lookup = [&](const std::string& n, const detail::line* where) {
      auto it = ids.find(n);
      if (it == ids.end())
        where->fail("undeclared state '" + n + "'");
      return it->second;
    };
    if (inits.size() != 1)
      throw validation_error("exactly one 'init' line is required");
    m.initial = lookup(inits[0].first, inits[0].second);
    constexpr state_id unset = ~state_id{0};
    std::vector<std::vector<state_id>> explicit_rows(m.states.size(), std::vector<state_id>(k, unset));
    std::vector<state_id> defaults(m.states.size(), unset);
    for (const auto& r : rows)
      {
        state_id src = lookup(r.src, r.where), dst = lookup(r.dst, r.where);
        if (!r.in)
          {
            if (defaults[src] != unset)
              r.where->fail("second default row for '" + r.src + "'");
            defaults[src] = dst;
            continue;
          }
        letter l = 0;
        for (const auto& p : *r.in)
          {
            auto i = m.inputs.find(p);
            if (!i)
              r.where->fail("undeclared input '" + p + "'");
            l |= letter{1} << *i;
          }
        if (explicit_rows[src][l] != unset)
          r.where->fail("overlapping rows for '" + r.src + "' on " + m.inputs.format(l));
        explicit_rows[src][l] = dst;
      }
    m.delta.assign(m.states.size(), std::vector<state_id>(k));
    for (state_id q = 0; q < m.states.size(); ++q)
      for (letter l = 0; l < k; ++l)
        {
          state_id d = explicit_rows[q][l] != unset ? explicit_rows[q][l] : defaults[q];
          if (d == unset)
            throw validation_error("missing transition for state '" + m.states[q] + "' on input "
                                   + m.inputs.format(l));
          m.delta[q][l] = d;
        }
    m.terminal.assign(m.states.size(), false);
    for (const auto& [n, where] : terminals)
      {
        if (m.kind != system_kind::terminating)
          where->fail("terminal states in a non-terminating machine");
        m.terminal[lookup(n, where)] = true;
      }
    if (m.kind == system_kind::terminating
        && std::none_of(m.terminal.begin(), m.terminal.end(), [](bool b) { return b; }))
      throw validation_error("terminating machine with an empty terminal set");
    return m;
  }

  std::string render_moore(const moore_machine& m)
  {
    std::ostringstream os;
    os << "moore" << (m.kind == system_kind::terminating ? " terminating" : "") << "\ninputs";
    for (const auto& p : m.inputs.names())
      os << ' ' << p;
    os << "\noutputs";
    for (const auto& p : m.outputs.names())
      os << ' ' << p;
    os << '\n';
    for (state_id q = 0; q < m.states.size(); ++q)
      {
        os << "state " << m.states[q] << " outputs {";
        for (const auto& p : m.outputs.true_props(m.output[q]))
          os << ' ' << p;
        os << " }\n";
      }
    os << "init " << m.states[m.initial] << '\n';
    if (m.kind == system_kind::terminating)
      {
        os << "terminal";
        for (state_id q = 0; q < m.states.size(); ++q)
          if (m.terminal[q])
            os << ' ' << m.states[q];
        os << '\n';
      }
    for (state_id q = 0; q < m.states.size(); ++q)
      for (letter l = 0; l < m.delta[q].size(); ++l)
        {
          os << "delta " << m.states[q] << " {";
          for (const auto& p : m.inputs.true_props(l))
            os << ' ' << p;
          os << " } " << m.states[m.delta[q][l]] << '\n';
        }
    return os.str();
  }

  // -------------------------------------------------------- conversion

  transition_system moore_to_ts(const moore_machine& m, moore_options opts)
  {
    if (m.inputs.size() > max_explicit_props)
      throw bound_error("more than 8 inputs");
    const std::size_t k = m.inputs.letter_count();
    prop_set props = merge(m.inputs, m.outputs);
    transition_system ts(m.kind, props);
    std::map<std::pair<state_id, letter>, state_id> ids;
    std::vector<std::pair<state_id, letter>> order;
    auto name_of = [&](state_id q, letter i) {
      std::string n = m.states[q];
      if (m.inputs.size() > 0)
        {
          n += '@';
          for (std::size_t b = 0; b < m.inputs.size(); ++b)
            n += (i >> b & 1) ? '1' : '0';
        }
      return n;
    };
    auto intern = [&](state_id q, letter i) {
      auto [it, fresh] = ids.emplace(std::make_pair(q, i), 0);
      if (fresh)
        {
          letter label = m.inputs.project(i, props) | m.outputs.project(m.output[q], props);
          it->second = ts.add_state(name_of(q, i), label);
          order.emplace_back(q, i);
        }
      return it->second;
    };
    for (letter i = 0; i < k; ++i)
      ts.add_initial(intern(m.initial, i));
    for (std::size_t n = 0; n < order.size(); ++n)
      {
        auto [q, i] = order[n];
        auto s = static_cast<state_id>(n);
        state_id q2 = m.delta[q][i];
        bool terminal = m.kind == system_kind::terminating && m.terminal[q2];
        if (terminal)
          ts.add_terminal(s);
        if (terminal && !opts.terminal_continue)
          continue;
        for (letter i2 = 0; i2 < k; ++i2)
          ts.add_edge(s, intern(q2, i2));
      }
    ts.canonicalize();
    ts.validate();
    return ts;
  }

  transition_system random_system(std::uint64_t seed, std::size_t max_states, system_kind kind,
                                  const prop_set& props)
  {
    if (max_states == 0)
      throw validation_error("random_system needs at least one state");
    std::mt19937_64 rng(seed);
    const std::size_t n = 1 + rng() % max_states;
    const bool term = kind == system_kind::terminating;
    transition_system ts(kind, props);
    std::vector<bool> terminal(n, false);
    for (std::size_t s = 0; s < n; ++s)
      {
        (void)ts.add_state("s" + std::to_string(s), rng() & props.full_mask());
        terminal[s] = term && rng() % 3 == 0;
      }
    if (term)
      terminal[rng() % n] = true;
    ts.add_initial(0);
    if (n > 1 && rng() % 3 == 0)
      ts.add_initial(1);
    for (std::size_t s = 0; s < n; ++s)
      {
        if (terminal[s])
          ts.add_terminal(static_cast<state_id>(s));
        std::size_t k = (terminal[s] && rng() % 2 == 0) ? 0 : 1 + rng() % 2;
        for (std::size_t e = 0; e < k; ++e)
          ts.add_edge(static_cast<state_id>(s), static_cast<state_id>(rng() % n));
      }
    ts.canonicalize();
    ts.validate();
    return ts;
  }
}
