#include "fuzz.hpp"

#include <ostream>
#include <random>
#include <string>

#include <ltlfmc/compile.hpp>
#include <ltlfmc/modelcheck.hpp>
#include <ltlfmc/semantics.hpp>

namespace ltlfmc::tool
{
  namespace
  {
    struct tally
    {
      explicit tally(const char* n) : name(n) {}

      const char* name;
      std::size_t ok = 0, total = 0;
      std::string first_failure;

      void record(bool pass, const std::string& what)
      {
        ++total;
        if (pass)
          ++ok;
        else if (first_failure.empty())
          first_failure = what;
      }
      void print(std::ostream& out) const
      {
        out << name << ": " << ok << "/" << total << " agree";
        if (!first_failure.empty())
          out << " (first failure: " << first_failure << ")";
        out << '\n';
      }
    };

    prop_set make_props(std::size_t k)
    {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < k; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
      return prop_set(names);
    }
  }

  bool run_fuzz(const fuzz_options& o, std::ostream& out)
  {
    const prop_set props = make_props(o.props);
    // Exhaustive trace length shrinks as the alphabet grows.
    const std::size_t trace_len = o.props <= 2 ? 4 : 3;
    tally nfa_t{"nfa-vs-evaluator"}, shape_t{"prefix-dba-shape"}, lasso_t{"prefix-dba-lassos"},
        term_t{"terminating-vs-oracle"}, nonterm_t{"nonterminating-vs-oracle"};
    std::mt19937_64 rng(o.seed);
    for (std::size_t trial = 0; trial < o.trials; ++trial)
      {
        formula f = random_formula(rng(), o.max_size, props);
        const std::string text = render_formula(f);

        nfa a = ltlf_to_nfa(f, props);
        bool agree = true;
        for_each_trace(props, trace_len, [&](std::span<const letter> w) {
          std::vector<letter> v(w.begin(), w.end());
          agree = agree && nfa_accepts(a, trace(props, v)) == evaluate(f, props, w);
        });
        nfa_t.record(agree, text);

        safety_dba d = prefix_dba(f, props);
        bool shape = true;
        try
          {
            d.carcass().check_complete();
            safety_dba(d.carcass(), d.kind());
          }
        catch (const std::exception&)
          {
            shape = false;
          }
        shape_t.record(shape, text);

        // swap(sinks(DFA(!f))) and sinks(DFA(!f)) split every lasso.
        safety_dba bad = make_accepting_sinks(ltlf_to_dfa(formula::neg(f), props));
        bool split = true;
        for (int i = 0; i < 20; ++i)
          {
            std::size_t stem = rng() % 4, cyc = 1 + rng() % 3;
            std::vector<letter> s, c;
            for (std::size_t j = 0; j < stem; ++j)
              s.push_back(rng() % props.letter_count());
            for (std::size_t j = 0; j < cyc; ++j)
              c.push_back(rng() % props.letter_count());
            lasso w(props, s, c);
            split = split && dba_accepts_lasso(d, w) != dba_accepts_lasso(bad, w);
          }
        lasso_t.record(split, text);

        for (auto kind : {system_kind::terminating, system_kind::nonterminating})
          {
            const bool term = kind == system_kind::terminating;
            const std::size_t bound = term ? 6 : 5;
            auto m = random_system(rng(), 6, kind, props);
            auto v = check(m, f);
            auto oracle = bounded_oracle_check(m, f, kind, bound);
            bool ok = true;
            if (oracle.result == outcome::violated)
              ok = v.result == outcome::violated;
            if (v.result == outcome::violated)
              {
                ok = ok && certify_counterexample(m, f, *v.cex).ok();
                std::size_t len = std::visit(
                    [](const auto& c) {
                      if constexpr (std::is_same_v<std::decay_t<decltype(c)>, finite_path>)
                        return c.states.size();
                      else
                        return c.stem.size() + c.cycle.size();
                    },
                    *v.cex);
                if (len > bound)
                  oracle = bounded_oracle_check(m, f, kind, len);
                ok = ok && oracle.result == outcome::violated;
              }
            (term ? term_t : nonterm_t).record(ok, text + " on\n" + render_ts(m));
          }
      }
    bool all = true;
    for (const tally* t : {&nfa_t, &shape_t, &lasso_t, &term_t, &nonterm_t})
      {
        t->print(out);
        all = all && t->ok == t->total;
      }
    return all;
  }
}
