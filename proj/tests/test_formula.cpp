#include <doctest.h>

#include <ltlfmc/error.hpp>
#include <ltlfmc/formula.hpp>
#include <ltlfmc/semantics.hpp>

#include "oracle.hpp"

using namespace ltlfmc;

namespace
{
  formula P(const char* s) { return parse_formula(s); }

  trace T(const prop_set& props, std::vector<std::vector<std::string>> ls)
  {
    std::vector<letter> out;
    for (const auto& l : ls)
      out.push_back(props.make_letter(l));
    return trace(props, out);
  }

  const prop_set ab({"a", "b"});
}

TEST_SUITE("formula")
{
  TEST_CASE("until is right associative")
  {
    auto a = formula::atom("a"), b = formula::atom("b"), c = formula::atom("c");
    CHECK(P("a U b U c") == formula::until(a, formula::until(b, c)));
  }

  TEST_CASE("unary operators bind tighter than binary ones")
  {
    CHECK(P("!X true") == formula::neg(formula::next(formula::tt())));
    CHECK(P("X a U b") == formula::until(formula::next(formula::atom("a")), formula::atom("b")));
    CHECK(P("a & b | c") == formula::disj(formula::conj(formula::atom("a"), formula::atom("b")),
                                          formula::atom("c")));
    CHECK(P("a -> b -> c") == formula::implies(formula::atom("a"),
                                               formula::implies(formula::atom("b"),
                                                                formula::atom("c"))));
    CHECK(P("a | b <-> c") == formula::iff(formula::disj(formula::atom("a"), formula::atom("b")),
                                           formula::atom("c")));
    CHECK(P("a U b & c") == formula::conj(formula::until(formula::atom("a"), formula::atom("b")),
                                          formula::atom("c")));
  }

  TEST_CASE("syntax errors carry a position")
  {
    CHECK_THROWS_AS((void)P("a &"), parse_error);
    CHECK_THROWS_AS((void)P("(a"), parse_error);
    CHECK_THROWS_AS((void)P("a $ b"), parse_error);
    try
      {
        (void)P("a &\n  & b");
        FAIL("expected a parse error");
      }
    catch (const parse_error& e)
      {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
      }
  }

  TEST_CASE("comments are skipped")
  {
    CHECK(P("a # trailing\n& b") == P("a & b"));
  }

  TEST_CASE("rendering")
  {
    CHECK(render_formula(formula::conj(formula::atom("a"), formula::next(formula::atom("b"))))
          == "a & X b");
    CHECK(render_formula(formula::tt()) == "true");
    CHECK(render_formula(formula::globally(formula::weak_next(formula::atom("a")))) == "G N a");
    CHECK(render_formula(P("(a U b) U c")) == "(a U b) U c");
    CHECK(render_formula(P("a & (b & c)")) == "a & (b & c)");
    CHECK(render_formula(P("X (a | b)")) == "X (a | b)");
    CHECK(render_formula(P("!(a -> b)")) == "!(a -> b)");
  }

  TEST_CASE("render then parse is the identity on random formulas")
  {
    for (std::uint64_t seed = 0; seed < 2000; ++seed)
      {
        formula f = random_formula(seed, 12, ab);
        CHECK(parse_formula(render_formula(f)) == f);
      }
  }

  TEST_CASE("nnf examples")
  {
    CHECK(to_nnf(P("!(a U b)")) == P("!a R !b"));
    CHECK(to_nnf(P("!(X a)")) == P("N !a"));
    CHECK(to_nnf(P("!!a")) == P("a"));
    CHECK(to_nnf(P("!(a R b)")) == P("!a U !b"));
    CHECK(to_nnf(P("!F a")) == P("G !a"));
  }

  TEST_CASE("nnf only negates atoms and preserves the language")
  {
    auto negations_on_atoms = [](auto&& self, const formula& f) -> bool {
      if (f.kind() == op::neg && f.child().kind() != op::atom)
        return false;
      if (f.kind() == op::implies || f.kind() == op::iff || f.kind() == op::weak_until)
        return false;
      for (int i = 0; i < arity(f.kind()); ++i)
        if (!self(self, f.child(i)))
          return false;
      return true;
    };
    auto traces = enumerate_traces(ab, 4);
    for (std::uint64_t seed = 0; seed < 300; ++seed)
      {
        formula f = random_formula(seed, 7, ab);
        formula g = to_nnf(f);
        REQUIRE(negations_on_atoms(negations_on_atoms, g));
        for (const auto& t : traces)
          REQUIRE(evaluate(g, t) == evaluate(f, t));
      }
  }

  TEST_CASE("nnf size bound on formulas without iff and weak until")
  {
    auto uses = [](auto&& self, const formula& f) -> bool {
      if (f.kind() == op::iff || f.kind() == op::weak_until)
        return true;
      for (int i = 0; i < arity(f.kind()); ++i)
        if (self(self, f.child(i)))
          return true;
      return false;
    };
    int tested = 0;
    for (std::uint64_t seed = 0; seed < 3000; ++seed)
      {
        formula f = random_formula(seed, 15, ab);
        if (uses(uses, f))
          continue;
        ++tested;
        CHECK(to_nnf(f).size() <= 2 * f.size() + 1);
        CHECK(to_nnf(formula::neg(f)).size() <= 2 * (f.size() + 1) + 1);
      }
    CHECK(tested > 500);
  }

  TEST_CASE("evaluate examples")
  {
    prop_set a({"a"});
    CHECK_FALSE(evaluate(P("X true"), T(a, {{"a"}})));
    CHECK(evaluate(P("N false"), T(a, {{"a"}})));
    CHECK(evaluate(P("a & X b"), T(ab, {{"a"}, {"b"}})));
    CHECK(evaluate(P("G a"), T(a, {{"a"}, {"a"}, {"a"}})));
    CHECK_FALSE(evaluate(P("G a"), T(a, {{"a"}, {}, {"a"}})));
    CHECK(evaluate(P("a U b"), T(ab, {{"a"}, {"a"}, {"b"}})));
    CHECK_FALSE(evaluate(P("a U b"), T(ab, {{"a"}, {"a"}})));
    CHECK(evaluate(P("a W b"), T(ab, {{"a"}, {"a"}})));
    CHECK(evaluate(P("b R a"), T(ab, {{"a"}, {"a"}})));
    CHECK_FALSE(evaluate(P("b R a"), T(ab, {{"a"}, {"b"}})));
  }

  TEST_CASE("undeclared atoms are rejected")
  {
    CHECK_THROWS_AS((void)evaluate(P("c"), T(ab, {{"a"}})), alphabet_error);
  }

  TEST_CASE("empty traces cannot be built")
  {
    CHECK_THROWS_AS(trace(ab, {}), validation_error);
  }

  TEST_CASE("last position behaviour of X and N")
  {
    for (const auto& t : enumerate_traces(ab, 1))
      {
        CHECK_FALSE(evaluate(P("X true"), t));
        CHECK(evaluate(P("N false"), t));
      }
  }

  TEST_CASE("dynamic programming evaluator agrees with the quantifier oracle")
  {
    auto traces = enumerate_traces(ab, 4);
    for (std::uint64_t seed = 0; seed < 400; ++seed)
      {
        formula f = random_formula(seed, 9, ab);
        formula nf = formula::neg(f);
        for (const auto& t : traces)
          {
            bool v = evaluate(f, t);
            REQUIRE(v == oracle::holds(f, ab, t.letters()));
            REQUIRE(evaluate(nf, t) == !v);
          }
      }
  }

  TEST_CASE("F and G against positional scans")
  {
    formula fa = P("F a"), ga = P("G a");
    for (const auto& t : enumerate_traces(ab, 5))
      {
        bool some = false, all = true;
        for (letter l : t.letters())
          {
            some = some || (l & 1);
            all = all && (l & 1);
          }
        CHECK(evaluate(fa, t) == some);
        CHECK(evaluate(ga, t) == all);
      }
  }

  TEST_CASE("positions vector reports suffix truth")
  {
    auto v = evaluate_positions(P("X a"), T(ab, {{}, {"a"}, {}}));
    CHECK(v == std::vector<bool>{true, false, false});
  }

  TEST_CASE("lasso evaluation")
  {
    prop_set a({"a"});
    CHECK(evaluate_ltl_on_lasso(P("G a"), lasso(a, {}, {a.make_letter({"a"})})));
    CHECK(evaluate_ltl_on_lasso(P("X b"), lasso(ab, {ab.make_letter({"a"})}, {ab.make_letter({"b"})})));
    CHECK(evaluate_ltl_on_lasso(P("G(a & X b)"), lasso(ab, {}, {ab.make_letter({"a", "b"})})));
    CHECK_FALSE(evaluate_ltl_on_lasso(P("G(a & X b)"),
                                      lasso(ab, {}, {ab.make_letter({"a", "b"}), ab.make_letter({"a"})})));
    CHECK(evaluate_ltl_on_lasso(P("G F a"), lasso(a, {}, {0, a.make_letter({"a"})})));
    CHECK_FALSE(evaluate_ltl_on_lasso(P("F G a"), lasso(a, {}, {0, a.make_letter({"a"})})));
    CHECK(evaluate_ltl_on_lasso(P("a U b"), lasso(ab, {1, 1}, {2})));
    CHECK_FALSE(evaluate_ltl_on_lasso(P("a U b"), lasso(ab, {}, {1})));
    CHECK_THROWS_AS((void)evaluate_ltl_on_lasso(P("a R b"), lasso(ab, {}, {1})), fragment_error);
  }

  TEST_CASE("lasso evaluation agrees with a long unrolling on next-only formulas")
  {
    // For X/&/|/literals the value only depends on a bounded window.
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      {
        formula f = random_formula(seed, 7, ab, restriction::fragment);
        auto pure = [](auto&& self, const formula& g) -> bool {
          if (g.kind() == op::next || g.kind() == op::conj || g.kind() == op::disj)
            {
              for (int i = 0; i < arity(g.kind()); ++i)
                if (!self(self, g.child(i)))
                  return false;
              return true;
            }
          return is_propositional(g);
        };
        if (!pure(pure, f))
          continue;
        for (letter s0 = 0; s0 < 4; ++s0)
          for (letter c0 = 0; c0 < 4; ++c0)
            {
              lasso w(ab, {s0}, {c0, static_cast<letter>(3 - c0)});
              std::vector<letter> unroll;
              for (std::size_t i = 0; i < 20; ++i)
                unroll.push_back(w.at(i));
              CHECK(evaluate_ltl_on_lasso(f, w) == oracle::holds(f, ab, unroll));
            }
      }
  }

  TEST_CASE("random formulas respect size, restriction and seed")
  {
    prop_set a({"a"});
    formula f1 = random_formula(1, 1, a);
    CHECK(f1.size() == 1);
    for (std::uint64_t seed = 0; seed < 500; ++seed)
      {
        formula f = random_formula(seed, 7, ab);
        CHECK(f.size() <= 7);
        CHECK(random_formula(seed, 7, ab) == f);
        formula g = random_formula(seed, 7, ab, restriction::fragment);
        CHECK(g.size() <= 7);
      }
    CHECK_THROWS_AS((void)random_formula(1, 3, prop_set{}), validation_error);
  }

  TEST_CASE("trace enumeration counts")
  {
    prop_set a({"a"});
    CHECK(enumerate_traces(a, 1).size() == 2);
    CHECK(enumerate_traces(a, 2).size() == 6);
    CHECK(enumerate_traces(ab, 1).size() == 4);
    CHECK(enumerate_traces(ab, 4).size() == 4 + 16 + 64 + 256);
    auto all = enumerate_traces(ab, 3);
    std::sort(all.begin(), all.end(), [](const trace& x, const trace& y) {
      return x.letters() < y.letters();
    });
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    CHECK_THROWS_AS((void)enumerate_traces(ab, 9), bound_error);
  }
}
