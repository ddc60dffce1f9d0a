#include <ltlfmc/hardness.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <ltlfmc/error.hpp>

#include "text.hpp"

namespace ltlfmc
{
  // --------------------------------------------------------- tm format

  std::size_t turing_machine::symbol(char ch) const
  {
    auto it = std::find(symbols.begin(), symbols.end(), ch);
    if (it == symbols.end())
      throw validation_error(std::string("unknown tape symbol '") + ch + "'");
    return static_cast<std::size_t>(it - symbols.begin());
  }

  turing_machine parse_tm(std::string_view text)
  {
    auto lines = detail::tokenize(text);
    turing_machine tm;
    std::optional<std::string> start;
    std::vector<std::string> accept;
    struct pending
    {
      std::string q, sym, q2, sym2, dir;
      const detail::line* where;
    };
    std::vector<pending> rules;
    bool saw_alphabet = false, saw_c = false;
    for (const auto& ln : lines)
      {
        const std::string& key = ln.at(0);
        if (key == "states")
          for (std::size_t i = 1; i < ln.words.size(); ++i)
            {
              const auto& s = ln.words[i].text;
              if (!is_identifier(s))
                ln.fail("invalid state name '" + s + "'", i);
              if (std::find(tm.states.begin(), tm.states.end(), s) != tm.states.end())
                ln.fail("duplicate state '" + s + "'", i);
              tm.states.push_back(s);
            }
        else if (key == "accept")
          for (std::size_t i = 1; i < ln.words.size(); ++i)
            accept.push_back(ln.words[i].text);
        else if (key == "alphabet")
          {
            saw_alphabet = true;
            tm.symbols.push_back('_');
            for (std::size_t i = 1; i < ln.words.size(); ++i)
              {
                const auto& s = ln.words[i].text;
                if (s == "_")
                  continue;
                if (s.size() != 1 || !std::isalnum(static_cast<unsigned char>(s[0])))
                  ln.fail("tape symbols are single letters or digits", i);
                if (std::find(tm.symbols.begin(), tm.symbols.end(), s[0]) != tm.symbols.end())
                  ln.fail("duplicate symbol '" + s + "'", i);
                tm.symbols.push_back(s[0]);
              }
          }
        else if (key == "start")
          {
            if (ln.words.size() != 2)
              ln.fail("expected 'start <state>'");
            start = ln.at(1);
          }
        else if (key == "rule")
          {
            if (ln.words.size() != 6)
              ln.fail("expected 'rule <q> <sym> <q'> <sym'> L|R'");
            rules.push_back({ln.at(1), ln.at(2), ln.at(3), ln.at(4), ln.at(5), &ln});
          }
        else if (key == "c")
          {
            if (ln.words.size() != 2)
              ln.fail("expected 'c <int>'");
            try
              {
                std::size_t pos = 0;
                long v = std::stol(ln.at(1), &pos);
                if (pos != ln.at(1).size() || v < 1)
                  throw std::invalid_argument("c");
                tm.c = static_cast<std::size_t>(v);
              }
            catch (const std::exception&)
              {
                ln.fail("c must be a positive integer", 1);
              }
            saw_c = true;
          }
        else
          ln.fail("unknown directive '" + key + "'");
      }
    if (tm.states.empty())
      throw validation_error("machine without states");
    if (!saw_alphabet)
      tm.symbols.push_back('_');
    (void)saw_c;
    auto state_of = [&](const std::string& s, const detail::line* where) {
      auto it = std::find(tm.states.begin(), tm.states.end(), s);
      if (it == tm.states.end())
        {
          if (where)
            where->fail("undeclared state '" + s + "'");
          throw validation_error("undeclared state '" + s + "'");
        }
      return static_cast<std::size_t>(it - tm.states.begin());
    };
    auto symbol_of = [&](const std::string& s, const detail::line* where) {
      if (s.size() != 1)
        where->fail("unknown tape symbol '" + s + "'");
      auto it = std::find(tm.symbols.begin(), tm.symbols.end(), s[0]);
      if (it == tm.symbols.end())
        where->fail("unknown tape symbol '" + s + "'");
      return static_cast<std::size_t>(it - tm.symbols.begin());
    };
    if (!start)
      throw validation_error("missing 'start' line");
    tm.initial = state_of(*start, nullptr);
    tm.accepting.assign(tm.states.size(), false);
    for (const auto& a : accept)
      tm.accepting[state_of(a, nullptr)] = true;
    tm.delta.assign(tm.states.size(),
                    std::vector<std::optional<turing_machine::rule>>(tm.symbols.size()));
    for (const auto& r : rules)
      {
        std::size_t q = state_of(r.q, r.where), g = symbol_of(r.sym, r.where);
        if (tm.accepting[q])
          r.where->fail("accepting state '" + r.q + "' halts and takes no rules");
        if (r.dir != "L" && r.dir != "R")
          r.where->fail("direction must be L or R", 5);
        if (tm.delta[q][g])
          r.where->fail("second rule for (" + r.q + ", " + r.sym + ")");
        tm.delta[q][g] = turing_machine::rule{state_of(r.q2, r.where), symbol_of(r.sym2, r.where),
                                              r.dir == "R"};
      }
    for (std::size_t q = 0; q < tm.states.size(); ++q)
      if (!tm.accepting[q])
        for (std::size_t g = 0; g < tm.symbols.size(); ++g)
          if (!tm.delta[q][g])
            throw validation_error("no rule for (" + tm.states[q] + ", "
                                   + std::string(1, tm.symbols[g]) + ")");
    return tm;
  }

  std::string render_tm(const turing_machine& tm)
  {
    std::ostringstream os;
    os << "states";
    for (const auto& s : tm.states)
      os << ' ' << s;
    os << "\naccept";
    for (std::size_t q = 0; q < tm.states.size(); ++q)
      if (tm.accepting[q])
        os << ' ' << tm.states[q];
    os << "\nalphabet";
    for (char ch : tm.symbols)
      os << ' ' << ch;
    os << "\nstart " << tm.states[tm.initial] << "\nc " << tm.c << '\n';
    for (std::size_t q = 0; q < tm.states.size(); ++q)
      for (std::size_t g = 0; g < tm.symbols.size(); ++g)
        if (const auto& r = tm.delta[q][g])
          os << "rule " << tm.states[q] << ' ' << tm.symbols[g] << ' ' << tm.states[r->next] << ' '
             << tm.symbols[r->write] << ' ' << (r->right ? 'R' : 'L') << '\n';
    return os.str();
  }

  // --------------------------------------------------------- simulator

  const char* to_string(tm_outcome o)
  {
    switch (o)
      {
      case tm_outcome::accept:
        return "accept";
      case tm_outcome::reject:
        return "reject";
      case tm_outcome::loop:
        break;
      }
    return "loop";
  }

  namespace
  {
    std::size_t tape_cells(const turing_machine& tm, std::size_t n)
    {
      std::size_t cn = tm.c * n;
      if (n == 0)
        throw validation_error("the input word must be non-empty");
      if (cn > 6)
        throw bound_error("c * |input| = " + std::to_string(cn) + " exceeds the limit of 6");
      return std::size_t{1} << cn;
    }
  }

  tm_run simulate_tm(const turing_machine& tm, std::string_view input, std::size_t max_steps)
  {
    const std::size_t cells = tape_cells(tm, input.size());
    std::vector<std::size_t> tape(cells, 0);
    for (std::size_t i = 0; i < input.size(); ++i)
      {
        std::size_t g = tm.symbol(input[i]);
        if (g == 0)
          throw validation_error("the input word may not contain the blank");
        tape[i + 1] = g;
      }
    std::size_t q = tm.initial, head = 0;
    std::set<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>> seen;
    tm_run run;
    for (;;)
      {
        if (tm.accepting[q])
          {
            run.outcome = tm_outcome::accept;
            run.reason = "reached accepting state " + tm.states[q];
            return run;
          }
        if (!seen.emplace(q, head, tape).second)
          {
            run.outcome = tm_outcome::reject;
            run.reason = "configuration repeated";
            return run;
          }
        if (run.steps == max_steps)
          {
            run.outcome = tm_outcome::loop;
            run.reason = "step limit reached";
            return run;
          }
        const auto& r = *tm.delta[q][tape[head]];
        tape[head] = r.write;
        q = r.next;
        ++run.steps;
        if ((!r.right && head == 0) || (r.right && head + 1 == cells))
          {
            run.outcome = tm_outcome::reject;
            run.reason = "head left the tape";
            return run;
          }
        head = r.right ? head + 1 : head - 1;
      }
  }

  // --------------------------------------------------------- reduction

  std::string cell_prop(const turing_machine& tm, std::optional<std::size_t> state,
                        std::size_t symbol)
  {
    std::string sym = symbol == 0 ? "blank" : std::string(1, tm.symbols.at(symbol));
    return state ? "cell_" + tm.states.at(*state) + "_" + sym : "cell_" + sym;
  }

  namespace
  {
    using F = formula;

    F X(std::size_t k, F f) { return F::next_n(k, std::move(f)); }
    F N(std::size_t k, F f) { return F::weak_next_n(k, std::move(f)); }
    F last() { return F::neg(F::next(F::tt())); }
    F implies(F a, F b) { return F::implies(std::move(a), std::move(b)); }
    F conj(std::vector<F> fs) { return F::conj_all(fs); }
    F disj(std::vector<F> fs) { return F::disj_all(fs); }

    // f holds i positions before the end (i = 1: last position).
    F before_end(std::size_t i, F f)
    {
      return F::eventually(F::conj(std::move(f), X(i - 1, last())));
    }

    struct builder
    {
      const turing_machine& tm;
      std::string_view input;
      reduction_variant variant;
      std::size_t cn, P;

      F part(std::size_t i) const { return F::atom("part_" + std::to_string(i)); }
      F bit() const { return F::atom("bit"); }
      F plain(std::size_t g) const { return F::atom(cell_prop(tm, std::nullopt, g)); }
      F head(std::size_t q, std::size_t g) const { return F::atom(cell_prop(tm, q, g)); }
      bool live(std::size_t q) const { return !tm.accepting[q]; }

      F new_config(bool weak) const
      {
        std::vector<F> fs{part(0)};
        for (std::size_t i = 1; i <= cn; ++i)
          fs.push_back(weak ? N(i, F::neg(bit())) : X(i, F::neg(bit())));
        return conj(fs);
      }

      // content of the last full cell of the prefix
      F at_last_cell(F f) const
      {
        return before_end(variant == reduction_variant::corrected ? P : cn, std::move(f));
      }

      F match_last_cell() const
      {
        F nc = new_config(false);
        std::vector<F> fs{part(0), at_last_cell(part(0))};
        for (std::size_t i = 1; i <= cn; ++i)
          fs.push_back(F::iff(X(i, bit()), at_last_cell(X(i, bit()))));
        fs.push_back(F::next(F::until(F::neg(nc), F::conj(nc, F::next(F::globally(F::neg(nc)))))));
        return conj(fs);
      }

      F succ() const
      {
        auto b = [&](std::size_t i) { return X(i, bit()); };
        auto b2 = [&](std::size_t i) { return X(cn + 1 + i, bit()); };
        std::vector<F> fs{F::iff(b2(1), F::neg(b(1)))};
        for (std::size_t i = 2; i <= cn; ++i)
          {
            F carry = F::conj(b(i - 1), F::neg(b2(i - 1)));
            fs.push_back(F::iff(b2(i), F::neg(F::iff(b(i), carry))));
          }
        return conj(fs);
      }

      F c1() const
      {
        std::vector<F> zero;
        for (std::size_t i = 1; i <= cn; ++i)
          zero.push_back(X(i, F::neg(bit())));
        return F::conj(implies(X(cn, F::tt()), conj(zero)),
                       F::globally(implies(F::conj(part(0), X(2 * cn + 1, F::tt())), succ())));
      }

      F c2() const
      {
        const std::size_t n = input.size();
        std::vector<F> cells;
        for (std::size_t i = 1; i <= n; ++i)
          cells.push_back(X(P * i, plain(tm.symbol(input[i - 1]))));
        F blanks = F::weak_until(implies(part(0), plain(0)),
                                 new_config(variant == reduction_variant::corrected));
        return F::conj(implies(X(P * n, F::tt()), conj(cells)),
                       implies(X(P * (n + 1), F::tt()), X(P * (n + 1), blanks)));
      }

      F movers(bool right) const
      {
        std::vector<F> fs;
        for (std::size_t q = 0; q < tm.states.size(); ++q)
          if (live(q))
            for (std::size_t g = 0; g < tm.symbols.size(); ++g)
              if (tm.delta[q][g]->right == right)
                fs.push_back(head(q, g));
        return disj(fs);
      }

      F c3() const
      {
        const std::size_t G = tm.symbols.size();
        F mlc = match_last_cell();
        F nc = new_config(false);
        std::vector<F> self, from_right, from_left, frame;
        for (std::size_t q = 0; q < tm.states.size(); ++q)
          if (live(q))
            for (std::size_t g = 0; g < G; ++g)
              {
                const auto& r = *tm.delta[q][g];
                self.push_back(implies(head(q, g), at_last_cell(plain(r.write))));
                for (std::size_t other = 0; other < G; ++other)
                  if (r.right)
                    from_left.push_back(implies(F::conj(head(q, g), X(P, plain(other))),
                                                at_last_cell(head(r.next, other))));
                  else
                    from_right.push_back(implies(F::conj(plain(other), X(P, head(q, g))),
                                                 at_last_cell(head(r.next, other))));
              }
        if (variant == reduction_variant::literal)
          {
            for (std::size_t g1 = 0; g1 < G; ++g1)
              for (std::size_t g2 = 0; g2 < G; ++g2)
                for (std::size_t g3 = 0; g3 < G; ++g3)
                  frame.push_back(implies(conj({plain(g1), X(P, plain(g2)), X(2 * P, plain(g3))}),
                                          at_last_cell(plain(g2))));
            return conj({F::globally(implies(mlc, conj(self))),
                         F::globally(implies(mlc, conj(from_right))),
                         F::globally(implies(X(P, mlc), conj(from_left))),
                         F::globally(implies(X(P, mlc), conj(frame)))});
          }
        // A neighbour exists only inside the same configuration.
        F right_inside = X(P, F::neg(nc));
        F left_mover = movers(false), right_mover = movers(true);
        std::vector<F> keep_first, keep_inner;
        for (std::size_t g = 0; g < G; ++g)
          {
            keep_first.push_back(
                implies(F::conj(plain(g), F::neg(F::conj(right_inside, X(P, left_mover)))),
                        at_last_cell(plain(g))));
            keep_inner.push_back(implies(
                conj({X(P, plain(g)), F::neg(right_mover),
                      F::neg(F::conj(X(2 * P, F::neg(nc)), X(2 * P, left_mover)))}),
                at_last_cell(plain(g))));
          }
        F left_anchor = F::conj(X(P, mlc), right_inside);
        return conj({F::globally(implies(mlc, conj(self))),
                     F::globally(implies(F::conj(mlc, right_inside), conj(from_right))),
                     F::globally(implies(left_anchor, conj(from_left))),
                     F::globally(implies(F::conj(mlc, nc), conj(keep_first))),
                     F::globally(implies(left_anchor, conj(keep_inner)))});
      }

      F acc() const
      {
        std::vector<F> fs;
        for (std::size_t q = 0; q < tm.states.size(); ++q)
          if (tm.accepting[q])
            for (std::size_t g = 0; g < tm.symbols.size(); ++g)
              fs.push_back(F::eventually(head(q, g)));
        return disj(fs);
      }
    };
  }

  tm_instance gen_tm_instance(const turing_machine& tm, std::string_view input,
                              reduction_variant v)
  {
    (void)tape_cells(tm, input.size());
    for (char ch : input)
      if (tm.symbol(ch) == 0)
        throw validation_error("the input word may not contain the blank");
    const std::size_t cn = tm.c * input.size();
    builder b{tm, input, v, cn, cn + 1};

    std::vector<std::string> names;
    for (std::size_t i = 0; i <= cn; ++i)
      names.push_back("part_" + std::to_string(i));
    names.push_back("bit");
    struct content
    {
      std::optional<std::size_t> q;
      std::size_t g;
    };
    std::vector<content> contents;
    for (std::size_t g = 0; g < tm.symbols.size(); ++g)
      contents.push_back({std::nullopt, g});
    for (std::size_t q = 0; q < tm.states.size(); ++q)
      for (std::size_t g = 0; g < tm.symbols.size(); ++g)
        contents.push_back({q, g});
    for (const auto& c : contents)
      names.push_back(cell_prop(tm, c.q, c.g));
    prop_set props(names);
    if (props.size() != names.size())
      throw validation_error("state and symbol names produce clashing propositions");
    if (props.size() > max_props)
      throw bound_error("the instance needs more than 64 propositions");

    transition_system ts(system_kind::nonterminating, props);
    std::vector<state_id> cell_states;
    for (const auto& c : contents)
      {
        std::string p = cell_prop(tm, c.q, c.g);
        cell_states.push_back(ts.add_state("c" + p.substr(4), props.make_letter({"part_0", p})));
      }
    std::vector<std::array<state_id, 2>> bits(cn + 1);
    for (std::size_t i = 1; i <= cn; ++i)
      for (int bv = 0; bv < 2; ++bv)
        {
          std::vector<std::string> label{"part_" + std::to_string(i)};
          if (bv)
            label.push_back("bit");
          bits[i][bv] = ts.add_state("b" + std::to_string(i) + "_" + std::to_string(bv),
                                     props.make_letter(label));
        }
    for (state_id s : cell_states)
      for (int bv = 0; bv < 2; ++bv)
        ts.add_edge(s, bits[1][bv]);
    for (std::size_t i = 1; i <= cn; ++i)
      for (int bv = 0; bv < 2; ++bv)
        {
          if (i < cn)
            for (int bv2 = 0; bv2 < 2; ++bv2)
              ts.add_edge(bits[i][bv], bits[i + 1][bv2]);
          else
            for (state_id s : cell_states)
              ts.add_edge(bits[i][bv], s);
        }
    ts.add_initial(cell_states[tm.symbols.size() * (1 + tm.initial)]);
    ts.canonicalize();
    ts.validate();

    formula cons = F::conj_all({b.c1(), b.c2(), b.c3()});
    formula acc = b.acc();
    formula prop = F::disj(F::neg(cons), acc);
    return {std::move(ts), prop, cons, acc, cn, props.names()};
  }

  // ------------------------------------------------------- word family

  const prop_set& word_props()
  {
    static const prop_set p({"zero", "one", "hash", "amp"});
    return p;
  }

  namespace
  {
    constexpr std::string_view word_symbols = "01#&";
    const char* word_atom(char ch)
    {
      switch (ch)
        {
        case '0':
          return "zero";
        case '1':
          return "one";
        case '#':
          return "hash";
        case '&':
          return "amp";
        default:
          throw validation_error(std::string("'") + ch + "' is not one of 0 1 # &");
        }
    }

    char symbol_of(letter l)
    {
      for (char ch : word_symbols)
        if (l == letter{1} << word_props().index(word_atom(ch)))
          return ch;
      throw validation_error("letter " + word_props().format(l) + " is not one-hot");
    }
  }

  std::vector<letter> encode_word(std::string_view w)
  {
    std::vector<letter> out;
    for (char ch : w)
      out.push_back(letter{1} << word_props().index(word_atom(ch)));
    return out;
  }

  std::string decode_word(std::span<const letter> letters)
  {
    std::string out;
    for (letter l : letters)
      out += symbol_of(l);
    return out;
  }

  formula gen_phi_n(std::size_t n, phi_variant v)
  {
    if (n < 1 || n > 4)
      throw bound_error("n must be between 1 and 4");
    F zero = F::atom("zero"), one = F::atom("one"), hash = F::atom("hash"), amp = F::atom("amp");
    auto only = [&](F p, std::vector<F> others) {
      std::vector<F> negs;
      for (auto& o : others)
        negs.push_back(F::neg(o));
      return F::globally(implies(p, conj(negs)));
    };
    F only_one = conj({only(zero, {one, amp, hash}), only(one, {zero, amp, hash}),
                       only(amp, {zero, one, hash}), only(hash, {zero, one, amp}),
                       F::globally(disj({zero, one, amp, hash}))});
    F exact_amp = F::until(
        F::neg(amp),
        F::conj(amp, F::disj(F::neg(F::next(F::tt())), F::next(F::globally(F::neg(amp))))));
    F ends = X(n + 1, last());
    std::vector<F> appear_parts{hash, X(n + 1, hash)};
    for (std::size_t i = 1; i <= n; ++i)
      appear_parts.push_back(X(i, F::disj(zero, one)));
    F appear = conj(appear_parts);
    F end_with = v == phi_variant::literal ? F::globally(implies(ends, appear))
                                           : F::eventually(F::conj(ends, appear));
    std::vector<F> same;
    for (std::size_t i = 1; i <= n; ++i)
      same.push_back(
          F::disj(F::conj(X(i, zero), F::globally(implies(ends, X(i, zero)))),
                  F::conj(X(i, one), F::globally(implies(ends, X(i, one))))));
    std::vector<F> before{appear, F::eventually(amp)};
    before.insert(before.end(), same.begin(), same.end());
    F appears_before = F::eventually(conj(before));
    return F::conj(only_one, implies(F::eventually(amp),
                                     F::conj(exact_amp, implies(end_with, appears_before))));
  }

  namespace
  {
    bool is_block(std::string_view s, std::size_t n)
    {
      if (s.size() != n + 2 || s.front() != '#' || s.back() != '#')
        return false;
      return std::all_of(s.begin() + 1, s.end() - 1, [](char c) { return c == '0' || c == '1'; });
    }

    bool occurs(std::string_view hay, std::string_view block)
    {
      return hay.find(block) != std::string_view::npos;
    }

    std::vector<letter> projected(const prop_set& from, const std::vector<letter>& ls)
    {
      std::vector<letter> out;
      for (letter l : ls)
        out.push_back(from.project(l, word_props()));
      return out;
    }
  }

  bool ln_member(const lasso& w, std::size_t n)
  {
    std::string stem = decode_word(projected(w.props(), w.stem()));
    std::string cycle = decode_word(projected(w.props(), w.cycle()));
    if (cycle.find('&') != std::string::npos)
      return false;
    auto amp = stem.find('&');
    if (amp == std::string::npos)
      return true;
    if (stem.find('&', amp + 1) != std::string::npos)
      return false;
    std::string u = stem.substr(0, amp);
    // v = rest . cycle^omega; every window start repeats after |rest| + |cycle|
    std::string v = stem.substr(amp + 1);
    std::size_t starts = v.size() + cycle.size();
    while (v.size() < starts + n + 2)
      v += cycle;
    for (std::size_t i = 0; i < starts; ++i)
      {
        std::string_view win(v.data() + i, n + 2);
        if (is_block(win, n) && !occurs(u, win))
          return false;
      }
    return true;
  }

  bool fn_member(const trace& t, std::size_t n)
  {
    std::string s = decode_word(projected(t.props(), t.letters()));
    auto amp = s.find('&');
    if (amp == std::string::npos)
      return true;
    if (s.find('&', amp + 1) != std::string::npos)
      return false;
    std::string_view u(s.data(), amp), v(s.data() + amp + 1, s.size() - amp - 1);
    if (v.size() < n + 2)
      return true;
    std::string_view tail = v.substr(v.size() - (n + 2));
    return !is_block(tail, n) || occurs(u, tail);
  }
}
