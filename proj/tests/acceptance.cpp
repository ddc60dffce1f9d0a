// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 3 5        selected criteria
// Exit status is 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <ltlfmc/compile.hpp>
#include <ltlfmc/error.hpp>
#include <ltlfmc/hardness.hpp>
#include <ltlfmc/modelcheck.hpp>
#include <ltlfmc/semantics.hpp>

#include "machines.hpp"

using namespace ltlfmc;

namespace
{
  struct result
  {
    bool pass = true;
    std::string detail;
  };

  using clock_type = std::chrono::steady_clock;

  double since(clock_type::time_point t0)
  {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
  }

  std::string secs(double s)
  {
    std::ostringstream os;
    os.precision(3);
    os << s << " s";
    return os.str();
  }

  const prop_set ab({"a", "b"});

  lasso random_lasso(std::mt19937_64& rng, const prop_set& props, std::size_t max_len)
  {
    std::size_t total = 1 + rng() % max_len;
    std::size_t cyc = 1 + rng() % total;
    std::vector<letter> s, c;
    for (std::size_t i = 0; i + cyc < total; ++i)
      s.push_back(rng() % props.letter_count());
    for (std::size_t i = 0; i < cyc; ++i)
      c.push_back(rng() % props.letter_count());
    return lasso(props, s, c);
  }

  std::string random_word(std::mt19937_64& rng, std::size_t len)
  {
    static const char symbols[] = "01#&";
    std::string w;
    for (std::size_t i = 0; i < len; ++i)
      w.push_back(symbols[rng() % 4]);
    return w;
  }

  result nfa_correctness()
  {
    auto t0 = clock_type::now();
    std::size_t traces = 0, bad = 0;
    std::string first;
    for (std::uint64_t seed = 0; seed < 500; ++seed)
      {
        formula f = random_formula(seed, 7, ab);
        nfa a = ltlf_to_nfa(f, ab);
        for_each_trace(ab, 4, [&](std::span<const letter> w) {
          ++traces;
          trace t(ab, std::vector<letter>(w.begin(), w.end()));
          if (nfa_accepts(a, t) != evaluate(f, ab, w) && bad++ == 0)
            first = render_formula(f) + " on " + to_string(t);
        });
      }
    double s = since(t0);
    result r;
    r.pass = bad == 0 && traces == 500 * 340 && s < 60;
    r.detail = "500 formulas, " + std::to_string(traces) + " traces, " + std::to_string(bad) +
               " disagreements, " + secs(s);
    if (!first.empty())
      r.detail += "; first: " + first;
    return r;
  }

  result prefix_shape()
  {
    auto t0 = clock_type::now();
    std::mt19937_64 rng(2);
    std::size_t shape_bad = 0, split_bad = 0, lassos = 0;
    std::string first;
    for (std::uint64_t seed = 0; seed < 500; ++seed)
      {
        formula f = random_formula(seed, 7, ab);
        safety_dba p = prefix_dba(f, ab);
        safety_dba bad = make_accepting_sinks(ltlf_to_dfa(formula::neg(f), ab));
        bool shape = p.kind() == sink_kind::rejecting;
        try
          {
            p.carcass().check_complete();
          }
        catch (const validation_error&)
          {
            shape = false;
          }
        for (state_id s = 0; s < p.num_states(); ++s)
          if (!p.is_accepting(s) && !p.carcass().is_sink(s))
            shape = false;
        if (!shape && shape_bad++ == 0)
          first = "shape: " + render_formula(f);
        for (int i = 0; i < 100; ++i)
          {
            lasso w = random_lasso(rng, ab, 8);
            ++lassos;
            // disjoint and exhaustive: exactly one of the two accepts
            if (dba_accepts_lasso(p, w) == dba_accepts_lasso(bad, w) && split_bad++ == 0)
              first = "complement: " + render_formula(f) + " on " + to_string(w);
          }
      }
    result r;
    r.pass = shape_bad == 0 && split_bad == 0;
    r.detail = "500 automata, " + std::to_string(shape_bad) + " shape failures, " +
               std::to_string(lassos) + " lassos, " + std::to_string(split_bad) +
               " complement failures, " + secs(since(t0));
    if (!first.empty())
      r.detail += "; first " + first;
    return r;
  }

  result prefix_examples()
  {
    letter a = ab.make_letter({"a"}), b = ab.make_letter({"b"});
    bool accepts = dba_accepts_lasso(prefix_dba(parse_formula("G a | F b"), ab),
                                     lasso(ab, {a, b}, {0}));
    bool empty = is_empty(prefix_dba(parse_formula("X a"), ab));
    result r;
    r.pass = accepts && empty;
    r.detail = std::string("G a | F b accepts {a}{b}{}^w: ") + (accepts ? "yes" : "no") +
               ", prefix automaton of X a empty: " + (empty ? "yes" : "no");
    return r;
  }

  result fragment_translation()
  {
    auto t0 = clock_type::now();
    std::size_t bad = 0;
    std::string failing;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      {
        formula f = random_formula(seed, 7, ab, restriction::fragment);
        auto e = safety_equiv(prefix_dba(f, ab), image_dba(translate_fragment(f), ab));
        if (!e.equivalent)
          {
            ++bad;
            failing += (failing.empty() ? "" : ", ") + render_formula(f);
            if (e.witness)
              failing += " (witness " + to_string(*e.witness) + ")";
          }
      }
    double s = since(t0);
    result r;
    r.pass = bad == 0 && s < 120;
    r.detail = "200 fragment formulas, " + std::to_string(bad) + " not equivalent, " + secs(s);
    if (bad)
      r.detail += "; " + failing;
    return r;
  }

  std::size_t cex_length(const counterexample& c)
  {
    if (auto* p = std::get_if<finite_path>(&c))
      return p->states.size();
    const auto& l = std::get<lasso_path>(c);
    return l.stem.size() + l.cycle.size();
  }

  result modelcheck_agreement()
  {
    auto t0 = clock_type::now();
    std::mt19937_64 rng(5);
    std::size_t violated[2] = {0, 0}, bad = 0, uncertified = 0;
    std::string first;
    for (auto kind : {system_kind::terminating, system_kind::nonterminating})
      {
        const bool term = kind == system_kind::terminating;
        const std::size_t bound = term ? 6 : 5;
        for (int i = 0; i < 300; ++i)
          {
            auto m = random_system(rng(), 6, kind, ab);
            formula f = random_formula(rng(), 6, ab);
            verdict v = term ? check_terminating(m, f) : check_nonterminating(m, f);
            verdict o = bounded_oracle_check(m, f, kind, bound);
            bool ok = true;
            if (v.result == outcome::violated)
              {
                ++violated[term ? 0 : 1];
                if (!v.cex || !certify_counterexample(m, f, *v.cex).ok())
                  {
                    ++uncertified;
                    ok = false;
                  }
                else if (cex_length(*v.cex) > bound && o.result == outcome::holds)
                  o = bounded_oracle_check(m, f, kind, cex_length(*v.cex));
              }
            ok = ok && v.result == o.result;
            if (!ok && bad++ == 0)
              first = render_formula(f) + " on\n" + render_ts(m);
          }
      }
    double s = since(t0);
    result r;
    r.pass = bad == 0 && s < 300;
    r.detail = "600 pairs (" + std::to_string(violated[0]) + " + " + std::to_string(violated[1]) +
               " violated), " + std::to_string(bad) + " disagreements, " +
               std::to_string(uncertified) + " uncertified, " + secs(s);
    if (!first.empty())
      r.detail += "; first: " + first;
    return r;
  }

  result reduction()
  {
    struct job
    {
      const char* label;
      const char* machine;
      const char* input;
    };
    const job jobs[] = {
        {"first-is-one on 1", testing::first_is_one, "1"},
        {"first-is-one on 0", testing::first_is_one, "0"},
        {"walk-off on 1", testing::walk_off, "1"},
        {"flip-back on 0", testing::flip_back, "0"},
        {"flip-back on 1", testing::flip_back, "1"},
    };
    result r;
    bool saw[3] = {false, false, false};
    for (const job& j : jobs)
      {
        turing_machine tm = parse_tm(j.machine);
        tm_run run = simulate_tm(tm, j.input);
        // Repetition means the machine loops inside the tape bound.
        std::size_t cls = run.outcome == tm_outcome::accept           ? 0
                          : run.reason == "configuration repeated" ? 2
                                                                       : 1;
        saw[cls] = true;
        auto t0 = clock_type::now();
        tm_instance inst = gen_tm_instance(tm, j.input);
        verdict v = check_nonterminating(inst.system, inst.property);
        double s = since(t0);
        bool agree = (v.result == outcome::holds) == (run.outcome == tm_outcome::accept);
        r.pass = r.pass && agree && inst.cn <= 4 && s < 300;
        r.detail += std::string(r.detail.empty() ? "" : "; ") + j.label + ": machine " +
                    to_string(run.outcome) + " (" + run.reason + "), checker " +
                    to_string(v.result) + ", cn " + std::to_string(inst.cn) + ", " + secs(s);
      }
    r.pass = r.pass && saw[0] && saw[1] && saw[2];
    return r;
  }

  // Exploration caps for the size report; n = 2 is doubly exponential.
  constexpr std::size_t size_cap = 50'000;

  std::string capped(std::size_t n, bool hit)
  {
    return (hit ? ">= " : "") + std::to_string(n);
  }

  std::string reachable_nfa_states(const formula& f, const prop_set& props)
  {
    lazy_nfa a(f, props);
    std::vector<state_id> todo{a.initial()};
    std::vector<bool> seen;
    auto mark = [&](state_id s) {
      if (s >= seen.size())
        seen.resize(s + 1, false);
      bool fresh = !seen[s];
      seen[s] = true;
      return fresh;
    };
    mark(a.initial());
    while (!todo.empty() && a.num_states() < size_cap)
      {
        state_id s = todo.back();
        todo.pop_back();
        for (letter l = 0; l < props.letter_count(); ++l)
          for (state_id t : a.successors(s, l))
            if (mark(t))
              todo.push_back(t);
      }
    return capped(a.num_states(), !todo.empty());
  }

  std::string reachable_tokens(const formula& f, const prop_set& props)
  {
    lazy_safety_automaton d(f, props);
    std::size_t done = 0;
    // Tokens are numbered in discovery order, so the frontier is an index range.
    while (done < d.token_count() && d.token_count() < size_cap)
      {
        auto t = static_cast<lazy_safety_automaton::token>(done++);
        if (d.is_rejecting(t))
          continue;
        for (letter l = 0; l < props.letter_count(); ++l)
          (void)d.step(t, l);
      }
    return capped(d.token_count(), done < d.token_count());
  }

  result formula_family()
  {
    auto t0 = clock_type::now();
    const prop_set& wp = word_props();
    formula phi = gen_phi_n(1);
    safety_dba d = prefix_dba(phi, wp);
    std::mt19937_64 rng(7);
    std::size_t lasso_bad = 0, trace_bad = 0, traces = 0;
    for (int i = 0; i < 500; ++i)
      {
        std::size_t total = 1 + rng() % 8;
        std::size_t cyc = 1 + rng() % total;
        lasso w(wp, encode_word(random_word(rng, total - cyc)), encode_word(random_word(rng, cyc)));
        if (dba_accepts_lasso(d, w) != ln_member(w, 1))
          ++lasso_bad;
      }
    std::string w;
    std::function<void()> walk = [&] {
      if (!w.empty())
        {
          trace t(wp, encode_word(w));
          ++traces;
          if (evaluate(phi, t) != fn_member(t, 1))
            ++trace_bad;
        }
      if (w.size() == 6)
        return;
      for (char ch : std::string("01#&"))
        {
          w.push_back(ch);
          walk();
          w.pop_back();
        }
    };
    walk();
    result r;
    r.pass = lasso_bad == 0 && trace_bad == 0 && traces == 5460;
    r.detail = "500 lassos, " + std::to_string(lasso_bad) + " disagreements; " +
               std::to_string(traces) + " traces, " + std::to_string(trace_bad) +
               " disagreements; sizes (reported):";
    for (std::size_t n = 1; n <= 2; ++n)
      {
        formula f = gen_phi_n(n);
        r.detail += " n=" + std::to_string(n) + " |phi| " + std::to_string(f.size()) + " nfa " +
                    reachable_nfa_states(f, wp) + " reachable prefix-dba " +
                    reachable_tokens(f, wp);
        if (n == 1)
          {
            dfa full = ltlf_to_dfa(f, wp);
            safety_dba eager = prefix_dba(f, wp);
            r.detail += " dfa " + std::to_string(full.num_states()) + " minimal dfa " +
                        std::to_string(minimize(full).num_states()) + " eager prefix-dba " +
                        std::to_string(eager.num_states()) + " minimal prefix-dba " +
                        std::to_string(minimize(eager.carcass()).num_states());
          }
        r.detail += ";";
      }
    r.detail += " " + secs(since(t0));
    return r;
  }

  result cli_contract()
  {
    const std::string cmd = std::string("sh '") + LTLFMC_CONTRACT_SCRIPT + "' '" + LTLFMC_CLI +
                            "' '" + LTLFMC_DATA_DIR + "'";
    int rc = std::system(cmd.c_str());
    result r;
    r.pass = rc == 0;
    r.detail = "end-to-end script exit status " + std::to_string(rc);
    return r;
  }

  struct criterion
  {
    int id;
    const char* name;
    result (*run)();
  };

  const criterion criteria[] = {
      {1, "NFA agrees with the evaluator", nfa_correctness},
      {2, "prefix automaton shape and complement", prefix_shape},
      {3, "G a | F b and X a examples", prefix_examples},
      {4, "fragment translation preserves the prefix language", fragment_translation},
      {5, "model checkers agree with the bounded oracle", modelcheck_agreement},
      {6, "machine reduction agrees with simulation", reduction},
      {7, "phi_1 defines F_1 and its prefix language L_1", formula_family},
      {8, "determinism and CLI exit codes", cli_contract},
  };
}

int main(int argc, char** argv)
{
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i)
    selected.push_back(std::atoi(argv[i]));
  bool all = true;
  for (const criterion& c : criteria)
    {
      if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
        continue;
      result r;
      try
        {
          r = c.run();
        }
      catch (const std::exception& e)
        {
          r = {false, std::string("exception: ") + e.what()};
        }
      std::cout << "criterion " << c.id << (r.pass ? " PASS " : " FAIL ") << c.name << ": "
                << r.detail << std::endl;
      all = all && r.pass;
    }
  return all ? 0 : 1;
}
