#include <ltlfmc/semantics.hpp>

#include <random>
#include <unordered_map>

#include <ltlfmc/error.hpp>

namespace ltlfmc
{
  namespace
  {
    // Sub-formulas in post-order (children before parents), shared nodes once.
    std::vector<formula> post_order(const formula& root,
                                    std::unordered_map<const void*, std::size_t>& index)
    {
      std::vector<formula> order;
      std::vector<std::pair<formula, bool>> stack{{root, false}};
      while (!stack.empty())
        {
          auto [f, expanded] = stack.back();
          stack.pop_back();
          if (index.count(f.id()))
            continue;
          if (expanded)
            {
              index.emplace(f.id(), order.size());
              order.push_back(f);
              continue;
            }
          stack.emplace_back(f, true);
          for (int i = arity(f.kind()) - 1; i >= 0; --i)
            stack.emplace_back(f.child(i), false);
        }
      return order;
    }

    using table = std::vector<std::vector<char>>;

    table evaluate_table(const formula& f, const prop_set& props,
                         std::span<const letter> ls,
                         std::unordered_map<const void*, std::size_t>& index,
                         std::vector<formula>& order)
    {
      if (ls.empty())
        throw validation_error("traces must be non-empty");
      order = post_order(f, index);
      const std::size_t n = ls.size();
      table val(order.size(), std::vector<char>(n));
      for (std::size_t k = 0; k < order.size(); ++k)
        {
          const formula& g = order[k];
          auto& v = val[k];
          auto child = [&](int c) -> const std::vector<char>& {
            return val[index.at(g.child(c).id())];
          };
          switch (g.kind())
            {
            case op::tt:
              std::fill(v.begin(), v.end(), 1);
              break;
            case op::ff:
              break;
            case op::atom:
              {
                std::size_t bit = props.index(g.name());
                for (std::size_t i = 0; i < n; ++i)
                  v[i] = ls[i] >> bit & 1;
                break;
              }
            case op::neg:
              for (std::size_t i = 0; i < n; ++i)
                v[i] = !child(0)[i];
              break;
            case op::conj:
              for (std::size_t i = 0; i < n; ++i)
                v[i] = child(0)[i] && child(1)[i];
              break;
            case op::disj:
              for (std::size_t i = 0; i < n; ++i)
                v[i] = child(0)[i] || child(1)[i];
              break;
            case op::implies:
              for (std::size_t i = 0; i < n; ++i)
                v[i] = !child(0)[i] || child(1)[i];
              break;
            case op::iff:
              for (std::size_t i = 0; i < n; ++i)
                v[i] = child(0)[i] == child(1)[i];
              break;
            default:
              {
                // temporal: right to left
                const auto& a = child(0);
                for (std::size_t j = n; j-- > 0;)
                  {
                    bool last = j + 1 == n;
                    bool nxt = !last && v[j + 1];
                    switch (g.kind())
                      {
                      case op::next:
                        v[j] = !last && a[j + 1];
                        break;
                      case op::weak_next:
                        v[j] = last || a[j + 1];
                        break;
                      case op::eventually:
                        v[j] = a[j] || nxt;
                        break;
                      case op::globally:
                        v[j] = a[j] && (last || nxt);
                        break;
                      case op::until:
                        v[j] = child(1)[j] || (a[j] && nxt);
                        break;
                      case op::release:
                        v[j] = child(1)[j] && (a[j] || last || nxt);
                        break;
                      case op::weak_until:
                        v[j] = child(1)[j] || (a[j] && (last || nxt));
                        break;
                      default:
                        throw error("evaluate: unknown operator");
                      }
                  }
              }
            }
        }
      return val;
    }
  }

  bool evaluate(const formula& f, const prop_set& props, std::span<const letter> ls)
  {
    std::unordered_map<const void*, std::size_t> index;
    std::vector<formula> order;
    auto val = evaluate_table(f, props, ls, index, order);
    return val.back()[0];
  }

  bool evaluate(const formula& f, const trace& t)
  {
    return evaluate(f, t.props(), t.letters());
  }

  std::vector<bool> evaluate_positions(const formula& f, const trace& t)
  {
    std::unordered_map<const void*, std::size_t> index;
    std::vector<formula> order;
    auto val = evaluate_table(f, t.props(), t.letters(), index, order);
    return {val.back().begin(), val.back().end()};
  }

  bool evaluate_ltl_on_lasso(const formula& f, const lasso& w)
  {
    std::unordered_map<const void*, std::size_t> index;
    auto order = post_order(f, index);
    const std::size_t stem = w.stem().size();
    const std::size_t m = stem + w.cycle().size();
    auto succ = [&](std::size_t i) { return i + 1 < m ? i + 1 : stem; };
    std::vector<std::vector<char>> val(order.size(), std::vector<char>(m));
    for (std::size_t k = 0; k < order.size(); ++k)
      {
        const formula& g = order[k];
        auto& v = val[k];
        auto child = [&](int c) -> const std::vector<char>& {
          return val[index.at(g.child(c).id())];
        };
        switch (g.kind())
          {
          case op::tt:
            std::fill(v.begin(), v.end(), 1);
            break;
          case op::ff:
            break;
          case op::atom:
            {
              std::size_t bit = w.props().index(g.name());
              for (std::size_t i = 0; i < m; ++i)
                v[i] = w.at(i) >> bit & 1;
              break;
            }
          case op::neg:
            for (std::size_t i = 0; i < m; ++i)
              v[i] = !child(0)[i];
            break;
          case op::conj:
            for (std::size_t i = 0; i < m; ++i)
              v[i] = child(0)[i] && child(1)[i];
            break;
          case op::disj:
            for (std::size_t i = 0; i < m; ++i)
              v[i] = child(0)[i] || child(1)[i];
            break;
          case op::next:
            for (std::size_t i = 0; i < m; ++i)
              v[i] = child(0)[succ(i)];
            break;
          case op::eventually:
          case op::globally:
          case op::until:
            {
              // least (F, U) or greatest (G) fixpoint over the lasso graph
              bool greatest = g.kind() == op::globally;
              std::fill(v.begin(), v.end(), greatest);
              bool changed = true;
              while (changed)
                {
                  changed = false;
                  for (std::size_t j = m; j-- > 0;)
                    {
                      bool nv;
                      const auto& a = child(0);
                      if (g.kind() == op::eventually)
                        nv = a[j] || v[succ(j)];
                      else if (g.kind() == op::globally)
                        nv = a[j] && v[succ(j)];
                      else
                        nv = child(1)[j] || (a[j] && v[succ(j)]);
                      if (nv != static_cast<bool>(v[j]))
                        {
                          v[j] = nv;
                          changed = true;
                        }
                    }
                }
              break;
            }
          default:
            throw fragment_error("evaluate_ltl_on_lasso: unsupported operator in '"
                                 + render_formula(g, dialect::ltl) + "'");
          }
      }
    return val.back()[0];
  }

  namespace
  {
    class generator
    {
    public:
      generator(std::uint64_t seed, const prop_set& props) : rng_(seed), props_(props) {}

      std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

      formula atom() { return formula::atom(props_.name(pick(props_.size()))); }

      formula full(std::size_t s)
      {
        if (s == 1)
          {
            std::size_t r = pick(10);
            if (r == 0)
              return formula::tt();
            if (r == 1)
              return formula::ff();
            return atom();
          }
        static constexpr op unary[] = {op::neg, op::next, op::weak_next,
                                       op::eventually, op::globally};
        static constexpr op binary[] = {op::conj, op::disj, op::implies, op::iff,
                                        op::until, op::release, op::weak_until};
        if (s == 2 || pick(2) == 0)
          return formula::make(unary[pick(5)], full(s - 1), {});
        std::size_t l = 1 + pick(s - 2);
        return formula::make(binary[pick(7)], full(l), full(s - 1 - l));
      }

      // propositional literal formula of exactly size s
      formula literal(std::size_t s)
      {
        if (s == 1)
          return atom();
        if (s == 2)
          return formula::neg(atom());
        std::size_t l = 1 + pick(s - 2);
        formula a = literal(l), b = literal(s - 1 - l);
        return pick(2) ? formula::conj(a, b) : formula::disj(a, b);
      }

      formula fragment(std::size_t s)
      {
        if (s == 1)
          return atom();
        std::size_t r = pick(s == 2 ? 6 : 8);
        switch (r)
          {
          case 0: return literal(s);
          case 1: return formula::neg(literal(s - 1));
          case 2: return formula::next(fragment(s - 1));
          case 3: return formula::weak_next(fragment(s - 1));
          case 4: return formula::eventually(fragment(s - 1));
          case 5: return formula::globally(fragment(s - 1));
          default:
            {
              std::size_t l = 1 + pick(s - 2);
              formula a = fragment(l), b = fragment(s - 1 - l);
              return r == 6 ? formula::conj(a, b) : formula::until(a, b);
            }
          }
      }

    private:
      std::mt19937_64 rng_;
      const prop_set& props_;
    };
  }

  formula random_formula(std::uint64_t seed, std::size_t max_size,
                         const prop_set& props, restriction r)
  {
    if (props.empty())
      throw validation_error("random_formula: empty proposition set");
    if (max_size < 1)
      throw validation_error("random_formula: max_size must be >= 1");
    generator g(seed, props);
    std::size_t s = 1 + g.pick(max_size);
    return r == restriction::full ? g.full(s) : g.fragment(s);
  }

  void for_each_trace(const prop_set& props, std::size_t max_len,
                      const std::function<void(std::span<const letter>)>& fn)
  {
    const std::size_t k = props.letter_count();
    std::vector<letter> word;
    for (std::size_t len = 1; len <= max_len; ++len)
      {
        word.assign(len, 0);
        while (true)
          {
            fn(word);
            std::size_t i = len;
            while (i > 0 && word[i - 1] + 1 == k)
              word[--i] = 0;
            if (i == 0)
              break;
            ++word[i - 1];
          }
      }
  }

  std::vector<trace> enumerate_traces(const prop_set& props, std::size_t max_len)
  {
    if (props.size() > max_explicit_props || max_len > 8)
      throw bound_error("enumerate_traces: bounds exceeded (|props| <= 8, max_len <= 8)");
    double total = 0, k = static_cast<double>(props.letter_count()), p = 1;
    for (std::size_t len = 1; len <= max_len; ++len)
      total += (p *= k);
    if (total > double(1 << 24))
      throw bound_error("enumerate_traces: more than 2^24 traces");
    std::vector<trace> out;
    out.reserve(static_cast<std::size_t>(total));
    for_each_trace(props, max_len, [&](std::span<const letter> w) {
      out.emplace_back(props, std::vector<letter>(w.begin(), w.end()));
    });
    return out;
  }
}
