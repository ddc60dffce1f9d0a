#include <doctest.h>

#include <random>

#include <ltlfmc/automata.hpp>
#include <ltlfmc/compile.hpp>
#include <ltlfmc/error.hpp>
#include <ltlfmc/semantics.hpp>

using namespace ltlfmc;

namespace
{
  const prop_set ab({"a", "b"});

  dfa random_dfa(std::mt19937_64& rng, const prop_set& props, std::size_t max_states)
  {
    std::size_t n = 1 + rng() % max_states;
    dfa d(props, n, 0);
    for (state_id s = 0; s < n; ++s)
      {
        d.set_accepting(s, rng() % 3 == 0);
        for (letter l = 0; l < d.num_letters(); ++l)
          d.set_edge(s, l, static_cast<state_id>(rng() % n));
      }
    return d;
  }

  lasso random_lasso(std::mt19937_64& rng, const prop_set& props, std::size_t max_len)
  {
    std::size_t k = props.letter_count();
    std::size_t stem = rng() % max_len;
    std::size_t cyc = 1 + rng() % (max_len - stem);
    std::vector<letter> s, c;
    for (std::size_t i = 0; i < stem; ++i)
      s.push_back(rng() % k);
    for (std::size_t i = 0; i < cyc; ++i)
      c.push_back(rng() % k);
    return lasso(props, s, c);
  }

  // some prefix of w of length <= bound (the empty one included) is accepted by d
  bool some_prefix_accepted(const dfa& d, const lasso& w, std::size_t bound)
  {
    state_id s = d.initial();
    if (d.is_accepting(s))
      return true;
    for (std::size_t i = 0; i < bound; ++i)
      {
        s = d.succ(s, w.at(i));
        if (d.is_accepting(s))
          return true;
      }
    return false;
  }
}

TEST_SUITE("automata")
{
  TEST_CASE("empty nfa accepts nothing")
  {
    nfa a(ab, 1);
    a.add_initial(0);
    for (const auto& t : enumerate_traces(ab, 3))
      CHECK_FALSE(nfa_accepts(a, t));
  }

  TEST_CASE("alphabet mismatch is reported")
  {
    nfa a(ab, 1);
    CHECK_THROWS_AS((void)nfa_accepts(a, trace(prop_set({"a"}), {0})), alphabet_error);
  }

  TEST_CASE("subset construction is complete, deterministic and language preserving")
  {
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      {
        formula f = random_formula(seed, 7, ab);
        nfa a = ltlf_to_nfa(f, ab);
        dfa d = determinize(a);
        d.check_complete();
        CHECK(d.num_states() <= (a.num_states() >= 20 ? d.num_states() : (std::size_t{1} << a.num_states())));
        for (const auto& t : enumerate_traces(ab, 4))
          REQUIRE(dfa_accepts(d, t) == nfa_accepts(a, t));
      }
  }

  TEST_CASE("determinizing the false nfa gives a single rejecting sink")
  {
    dfa d = determinize(ltlf_to_nfa(parse_formula("false"), ab));
    // the initial obligation state has no successors: it and the empty set
    // collapse once minimized
    dfa m = minimize(d);
    CHECK(m.num_states() == 1);
    CHECK_FALSE(m.is_accepting(0));
    CHECK(m.is_sink(0));
  }

  TEST_CASE("minimization preserves the language and is idempotent")
  {
    for (std::uint64_t seed = 0; seed < 150; ++seed)
      {
        dfa d = ltlf_to_dfa(random_formula(seed, 7, ab), ab);
        dfa m = minimize(d);
        CHECK(m.num_states() <= d.num_states());
        CHECK(minimize(m).num_states() == m.num_states());
        for (const auto& t : enumerate_traces(ab, 4))
          REQUIRE(dfa_accepts(m, t) == dfa_accepts(d, t));
      }
  }

  TEST_CASE("make_accepting_sinks")
  {
    dfa none(ab, 2, 0);
    for (letter l = 0; l < 4; ++l)
      {
        none.set_edge(0, l, 1);
        none.set_edge(1, l, 0);
      }
    safety_dba c = make_accepting_sinks(none);
    for (state_id s = 0; s < 2; ++s)
      for (letter l = 0; l < 4; ++l)
        CHECK(c.succ(s, l) == none.succ(s, l));

    dfa da = ltlf_to_dfa(parse_formula("a"), prop_set({"a"}));
    safety_dba ca = make_accepting_sinks(da);
    for (state_id s = 0; s < ca.num_states(); ++s)
      if (ca.is_accepting(s))
        CHECK(ca.carcass().is_sink(s));
  }

  TEST_CASE("accepting-sink automaton accepts iff some prefix was accepted")
  {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i)
      {
        dfa d = random_dfa(rng, ab, 5);
        safety_dba c = make_accepting_sinks(d);
        for (int j = 0; j < 20; ++j)
          {
            lasso w = random_lasso(rng, ab, 6);
            std::size_t bound = w.stem().size() + w.cycle().size() * (d.num_states() + 1);
            CHECK(dba_accepts_lasso(c, w) == some_prefix_accepted(d, w, bound));
          }
      }
  }

  TEST_CASE("swap_acceptance complements and is an involution")
  {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i)
      {
        safety_dba c = make_accepting_sinks(random_dfa(rng, ab, 5));
        safety_dba b = swap_acceptance(c);
        CHECK(b.kind() == sink_kind::rejecting);
        safety_dba cc = swap_acceptance(b);
        for (state_id s = 0; s < c.num_states(); ++s)
          CHECK(cc.is_accepting(s) == c.is_accepting(s));
        for (int j = 0; j < 20; ++j)
          {
            lasso w = random_lasso(rng, ab, 6);
            CHECK(dba_accepts_lasso(b, w) != dba_accepts_lasso(c, w));
          }
      }
    dfa all(ab, 1, 0);
    all.set_accepting(0);
    for (letter l = 0; l < 4; ++l)
      all.set_edge(0, l, 0);
    safety_dba swapped = swap_acceptance(make_accepting_sinks(all));
    CHECK_FALSE(swapped.is_accepting(0));
  }

  TEST_CASE("sink invariant is enforced")
  {
    dfa d(ab, 2, 0);
    for (letter l = 0; l < 4; ++l)
      {
        d.set_edge(0, l, 1);
        d.set_edge(1, l, 0);
      }
    d.set_accepting(0);
    CHECK_THROWS_AS(safety_dba(d, sink_kind::rejecting), validation_error);
    CHECK_THROWS_AS(safety_dba(d, sink_kind::accepting), validation_error);
  }

  TEST_CASE("dba_accepts_lasso basics")
  {
    dfa one(ab, 1, 0);
    one.set_accepting(0);
    for (letter l = 0; l < 4; ++l)
      one.set_edge(0, l, 0);
    safety_dba u(one, sink_kind::rejecting);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i)
      CHECK(dba_accepts_lasso(u, random_lasso(rng, ab, 5)));

    prop_set none;
    CHECK(dba_accepts_lasso(prefix_dba(parse_formula("true")), lasso(none, {}, {0})));
    prop_set a({"a"});
    CHECK_FALSE(dba_accepts_lasso(prefix_dba(parse_formula("G a")), lasso(a, {1}, {0})));
  }

  TEST_CASE("tightening marks doomed states and keeps the language")
  {
    // 0 -> 1 -> sink on every letter: nothing survives
    prop_set a({"a"});
    dfa d(a, 3, 0);
    d.set_accepting(0);
    d.set_accepting(1);
    for (letter l = 0; l < 2; ++l)
      {
        d.set_edge(0, l, 1);
        d.set_edge(1, l, 2);
        d.set_edge(2, l, 2);
      }
    safety_dba b(d, sink_kind::rejecting);
    safety_dba t = safety_tighten(b);
    CHECK_FALSE(t.is_accepting(0));
    CHECK_FALSE(t.is_accepting(1));
    CHECK(is_empty(b));

    safety_dba g = prefix_dba(parse_formula("G a"));
    safety_dba tg = safety_tighten(g);
    for (state_id s = 0; s < g.num_states(); ++s)
      CHECK(tg.is_accepting(s) == g.is_accepting(s));

    std::mt19937_64 rng(9);
    for (std::uint64_t seed = 0; seed < 100; ++seed)
      {
        safety_dba p = prefix_dba(random_formula(seed, 6, ab), ab);
        safety_dba tp = safety_tighten(p);
        for (int j = 0; j < 20; ++j)
          {
            lasso w = random_lasso(rng, ab, 6);
            CHECK(dba_accepts_lasso(p, w) == dba_accepts_lasso(tp, w));
          }
      }
  }

  TEST_CASE("safety equivalence")
  {
    for (std::uint64_t seed = 0; seed < 100; ++seed)
      {
        formula f = random_formula(seed, 6, ab);
        safety_dba p = prefix_dba(f, ab);
        CHECK(safety_equiv(p, p).equivalent);
        CHECK(safety_equiv(p, prefix_dba(to_nnf(f), ab)).equivalent);
      }
    safety_dba ga = prefix_dba(parse_formula("G a"), ab);
    safety_dba gb = prefix_dba(parse_formula("G b"), ab);
    auto r = safety_equiv(ga, gb);
    REQUIRE_FALSE(r.equivalent);
    REQUIRE(r.witness);
    CHECK(dba_accepts_lasso(ga, *r.witness) != dba_accepts_lasso(gb, *r.witness));
    auto r2 = safety_equiv(gb, ga);
    CHECK_FALSE(r2.equivalent);
  }

  TEST_CASE("equivalence witnesses separate random pairs")
  {
    int separated = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      {
        safety_dba x = prefix_dba(random_formula(seed, 6, ab), ab);
        safety_dba y = prefix_dba(random_formula(seed + 1000, 6, ab), ab);
        auto r = safety_equiv(x, y);
        CHECK(r.equivalent == safety_equiv(y, x).equivalent);
        if (!r.equivalent)
          {
            ++separated;
            CHECK(dba_accepts_lasso(x, *r.witness) != dba_accepts_lasso(y, *r.witness));
          }
      }
    CHECK(separated > 0);
  }

  TEST_CASE("dot output")
  {
    dfa one(prop_set{}, 1, 0);
    one.set_edge(0, 0, 0);
    std::string s = to_dot(one);
    CHECK(s.find("digraph") == 0);
    CHECK(s.find("0 [shape=circle]") != std::string::npos);
    safety_dba p = prefix_dba(parse_formula("G a | F b"));
    CHECK(to_dot(p) == to_dot(prefix_dba(parse_formula("G a | F b"))));
    CHECK(to_dot(p).find("doublecircle") != std::string::npos);
    CHECK(to_dot(ltlf_to_nfa(parse_formula("a U b"))).find("{a}") != std::string::npos);
  }

  TEST_CASE("aut dumps round trip")
  {
    for (std::uint64_t seed = 0; seed < 50; ++seed)
      {
        formula f = random_formula(seed, 6, ab);
        automaton a = ltlf_to_nfa(f, ab);
        automaton d = ltlf_to_dfa(f, ab);
        automaton b = prefix_dba(f, ab);
        for (const automaton* x : {&a, &d, &b})
          {
            std::string text = write_aut(*x);
            CHECK(write_aut(parse_aut(text)) == text);
          }
      }
    CHECK_THROWS_AS((void)parse_aut("dfa\nprops a\nstate 0\ninit 0\n"), validation_error);
    CHECK_THROWS_AS((void)parse_aut("bogus\n"), parse_error);
  }
}
