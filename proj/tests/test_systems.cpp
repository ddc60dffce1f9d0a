#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include <ltlfmc/error.hpp>
#include <ltlfmc/systems.hpp>

using namespace ltlfmc;

namespace
{
  const char* loop_ts = R"(system nonterminating
props a
state s0 { a }
init s0
edge s0 s0
)";

  const char* chain_ts = R"(system terminating
# s0 -> s1, s1 ends
props a b
state s0 { a }
state s1 { b }
init s0
terminal s1
edge s0 s1
)";

  const char* toggle_moore = R"(moore
inputs r
outputs g
state idle outputs { }
state busy outputs { g }
init idle
delta idle { r } busy
delta idle default idle
delta busy default idle
)";

  // random machine over |I| inputs, |Q| states
  moore_machine random_moore(std::mt19937_64& rng, std::size_t q, std::size_t ni, bool term)
  {
    std::ostringstream os;
    os << "moore" << (term ? " terminating" : "") << "\ninputs";
    for (std::size_t i = 0; i < ni; ++i)
      os << " i" << i;
    os << "\noutputs o0 o1\n";
    for (std::size_t s = 0; s < q; ++s)
      {
        os << "state q" << s << " outputs {";
        if (rng() & 1)
          os << " o0";
        if (rng() & 1)
          os << " o1";
        os << " }\n";
      }
    os << "init q0\n";
    for (std::size_t s = 0; s < q; ++s)
      {
        for (std::size_t l = 0; l < (std::size_t{1} << ni); ++l)
          if (rng() % 3 == 0)
            {
              os << "delta q" << s << " {";
              for (std::size_t b = 0; b < ni; ++b)
                if (l >> b & 1)
                  os << " i" << b;
              os << " } q" << rng() % q << '\n';
            }
        os << "delta q" << s << " default q" << rng() % q << '\n';
      }
    if (term)
      os << "terminal q" << rng() % q << '\n';
    return parse_moore(os.str());
  }
}

TEST_SUITE("systems")
{
  TEST_CASE("self-loop system is valid")
  {
    auto ts = parse_ts(loop_ts);
    CHECK(ts.kind() == system_kind::nonterminating);
    CHECK(ts.num_states() == 1);
    CHECK(ts.has_edge(0, 0));
    CHECK(ts.label(0) == 1);
    CHECK(ts.is_initial(0));
  }

  TEST_CASE("sink state in a non-terminating system is rejected")
  {
    CHECK_THROWS_AS((void)parse_ts("system nonterminating\nprops a\nstate s0 { }\nstate s1 { a }\n"
                                   "init s0\nedge s0 s1\n"),
                    validation_error);
  }

  TEST_CASE("terminating system needs terminal states")
  {
    CHECK_THROWS_AS((void)parse_ts("system terminating\nprops a\nstate s0 { }\ninit s0\nedge s0 s0\n"),
                    validation_error);
    // a non-terminal sink is also an error
    CHECK_THROWS_AS((void)parse_ts("system terminating\nprops a\nstate s0 { }\nstate s1 { }\n"
                                   "state s2 { }\ninit s0\nterminal s1\nedge s0 s1\nedge s0 s2\n"),
                    validation_error);
    auto ts = parse_ts(chain_ts);
    CHECK(ts.is_terminal(1));
    CHECK_FALSE(ts.is_terminal(0));
  }

  TEST_CASE("ts format errors")
  {
    // undeclared prop
    CHECK_THROWS_AS((void)parse_ts("system nonterminating\nprops a\nstate s0 { c }\ninit s0\nedge s0 s0\n"),
                    parse_error);
    // dangling edge
    CHECK_THROWS_AS((void)parse_ts("system nonterminating\nprops a\nstate s0 { }\ninit s0\nedge s0 s9\n"),
                    parse_error);
    // missing init
    CHECK_THROWS_AS((void)parse_ts("system nonterminating\nprops a\nstate s0 { }\nedge s0 s0\n"),
                    validation_error);
    // header must come first
    CHECK_THROWS_AS((void)parse_ts("props a\nsystem nonterminating\nstate s0 { }\ninit s0\nedge s0 s0\n"),
                    parse_error);
    CHECK_THROWS_AS((void)parse_ts("system nonterminating\nprops a\nstate s0 { }\ninit s0\nterminal s0\n"
                                   "edge s0 s0\n"),
                    parse_error);
    try
      {
        (void)parse_ts("system nonterminating\nprops a\nstate s0 { }\ninit s0\nfrob s0\n");
        FAIL("expected a parse error");
      }
    catch (const parse_error& e)
      {
        CHECK(e.line() == 5);
      }
  }

  TEST_CASE("ts body lines are order-insensitive")
  {
    auto a = parse_ts(chain_ts);
    auto b = parse_ts("system terminating\nedge s0 s1\nterminal s1\ninit s0\nstate s0 { a }\n"
                      "state s1 { b }\nprops b a\n");
    CHECK(render_ts(a) == render_ts(b));
  }

  TEST_CASE("ts render and parse round trip")
  {
    for (const char* text : {loop_ts, chain_ts})
      {
        auto ts = parse_ts(text);
        auto again = parse_ts(render_ts(ts));
        CHECK(render_ts(again) == render_ts(ts));
      }
  }

  TEST_CASE("one-state moore machine with a default row")
  {
    auto m = parse_moore("moore\ninputs i\noutputs o\nstate q0 outputs { o }\ninit q0\ndelta q0 default q0\n");
    CHECK(m.states.size() == 1);
    CHECK(m.delta[0] == std::vector<state_id>{0, 0});
    CHECK(m.output[0] == 1);
  }

  TEST_CASE("moore format errors")
  {
    // missing (q1, {i}) row
    CHECK_THROWS_AS((void)parse_moore("moore\ninputs i\noutputs o\nstate q0 outputs { }\n"
                                      "state q1 outputs { o }\ninit q0\ndelta q0 default q1\n"
                                      "delta q1 { } q0\n"),
                    validation_error);
    // overlapping explicit rows
    CHECK_THROWS_AS((void)parse_moore("moore\ninputs i\noutputs o\nstate q0 outputs { }\ninit q0\n"
                                      "delta q0 { i } q0\ndelta q0 { i } q0\ndelta q0 default q0\n"),
                    parse_error);
    // terminal outside Q
    CHECK_THROWS_AS((void)parse_moore("moore terminating\ninputs i\noutputs o\nstate q0 outputs { }\n"
                                      "init q0\ndelta q0 default q0\nterminal q7\n"),
                    parse_error);
    // shared input/output
    CHECK_THROWS_AS((void)parse_moore("moore\ninputs i\noutputs i\nstate q0 outputs { }\ninit q0\n"
                                      "delta q0 default q0\n"),
                    validation_error);
    // empty terminal set
    CHECK_THROWS_AS((void)parse_moore("moore terminating\ninputs i\noutputs o\nstate q0 outputs { }\n"
                                      "init q0\ndelta q0 default q0\n"),
                    validation_error);
  }

  TEST_CASE("moore render and parse round trip")
  {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 40; ++n)
      {
        auto m = random_moore(rng, 1 + rng() % 4, rng() % 3, n % 2);
        auto again = parse_moore(render_moore(m));
        CHECK(render_moore(again) == render_moore(m));
        CHECK(again.delta == m.delta);
      }
  }

  TEST_CASE("moore to ts on a one-state machine")
  {
    auto m = parse_moore("moore\ninputs i\noutputs o\nstate q0 outputs { o }\ninit q0\ndelta q0 default q0\n");
    auto ts = moore_to_ts(m);
    CHECK(ts.num_states() <= 2);
    CHECK(ts.initial().size() == 2);
    for (state_id s = 0; s < ts.num_states(); ++s)
      CHECK(ts.successors(s).size() == 2);
  }

  TEST_CASE("moore to ts labels are input plus output")
  {
    auto m = parse_moore(toggle_moore);
    auto ts = moore_to_ts(m);
    const auto& props = ts.props();
    auto busy_r = ts.find("busy@1");
    REQUIRE(busy_r);
    CHECK(props.true_props(ts.label(*busy_r)) == std::vector<std::string>{"g", "r"});
    auto idle_0 = ts.find("idle@0");
    REQUIRE(idle_0);
    CHECK(ts.label(*idle_0) == 0);
    // idle reading r moves to busy
    auto idle_1 = ts.find("idle@1");
    REQUIRE(idle_1);
    CHECK(ts.has_edge(*idle_1, *ts.find("busy@0")));
    CHECK_FALSE(ts.has_edge(*idle_0, *ts.find("busy@0")));
  }

  TEST_CASE("machine that terminates immediately")
  {
    auto m = parse_moore("moore terminating\ninputs i\noutputs o\nstate q0 outputs { }\n"
                         "state done outputs { o }\ninit q0\ndelta q0 default done\n"
                         "delta done default done\nterminal done\n");
    auto ts = moore_to_ts(m);
    for (state_id s : ts.initial())
      {
        CHECK(ts.is_terminal(s));
        CHECK(ts.successors(s).empty());
      }
    CHECK(ts.num_states() == 2);

    auto cont = moore_to_ts(m, {.terminal_continue = true});
    for (state_id s : cont.initial())
      {
        CHECK(cont.is_terminal(s));
        CHECK_FALSE(cont.successors(s).empty());
      }
  }

  TEST_CASE("moore to ts output validates and replays")
  {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 60; ++n)
      {
        bool term = n % 2;
        auto m = random_moore(rng, 1 + rng() % 5, rng() % 3, term);
        transition_system ts = [&] {
          try
            {
              return moore_to_ts(m);
            }
          catch (const validation_error&)
            {
              // terminal unreachable from q0 leaves no terminal pair
              return transition_system(system_kind::terminating, {});
            }
        }();
        if (ts.num_states() == 0)
          continue;
        CHECK_NOTHROW((void)parse_ts(render_ts(ts)));
        CHECK(ts.num_states() <= m.states.size() * m.inputs.letter_count());

        std::map<std::string, state_id> qid;
        for (state_id q = 0; q < m.states.size(); ++q)
          qid[m.states[q]] = q;
        auto decode = [&](state_id s) {
          const std::string& name = ts.name(s);
          auto at = name.find('@');
          state_id q = qid.at(name.substr(0, at));
          letter i = 0;
          if (at != std::string::npos)
            for (std::size_t b = at + 1; b < name.size(); ++b)
              if (name[b] == '1')
                i |= letter{1} << (b - at - 1);
          return std::pair{q, i};
        };
        for (state_id s : ts.initial())
          CHECK(decode(s).first == m.initial);
        for (state_id s = 0; s < ts.num_states(); ++s)
          {
            auto [q, i] = decode(s);
            letter want = m.inputs.project(i, ts.props()) | m.outputs.project(m.output[q], ts.props());
            CHECK(ts.label(s) == want);
            for (state_id d : ts.successors(s))
              CHECK(decode(d).first == m.delta[q][i]);
            if (term)
              CHECK(ts.is_terminal(s) == static_cast<bool>(m.terminal[m.delta[q][i]]));
          }
      }
  }
}
