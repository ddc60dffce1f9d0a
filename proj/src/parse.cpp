#include <ltlfmc/formula.hpp>

#include <ltlfmc/error.hpp>

namespace ltlfmc
{
  namespace
  {
    enum class tok
    {
      end, ident, kw_true, kw_false,
      bang, amp, bar, arrow, dbl_arrow, lparen, rparen,
      X, N, F, G, U, R, W,
    };

    struct token
    {
      tok kind;
      std::string text;
      std::size_t line;
      std::size_t col;
    };

    class lexer
    {
    public:
      explicit lexer(std::string_view s) : s_(s) {}

      token next()
      {
        skip();
        token t{tok::end, {}, line_, col_};
        if (pos_ >= s_.size())
          return t;
        char c = s_[pos_];
        auto simple = [&](tok k, std::size_t len) {
          t.kind = k;
          t.text = std::string(s_.substr(pos_, len));
          advance(len);
          return t;
        };
        switch (c)
          {
          case '!': return simple(tok::bang, 1);
          case '&': return simple(tok::amp, 1);
          case '|': return simple(tok::bar, 1);
          case '(': return simple(tok::lparen, 1);
          case ')': return simple(tok::rparen, 1);
          case '-':
            if (s_.substr(pos_, 2) == "->")
              return simple(tok::arrow, 2);
            break;
          case '<':
            if (s_.substr(pos_, 3) == "<->")
              return simple(tok::dbl_arrow, 3);
            break;
          default:
            break;
          }
        if (is_id_start(c))
          {
            std::size_t b = pos_;
            while (pos_ < s_.size() && is_id_char(s_[pos_]))
              advance(1);
            t.text = std::string(s_.substr(b, pos_ - b));
            t.kind = keyword(t.text);
            return t;
          }
        throw parse_error(std::string("unknown operator or character '") + c + "'",
                          line_, col_);
      }

    private:
      static bool is_id_start(char c)
      {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
      }
      static bool is_id_char(char c)
      {
        return is_id_start(c) || (c >= '0' && c <= '9');
      }
      static tok keyword(const std::string& w)
      {
        if (w == "true") return tok::kw_true;
        if (w == "false") return tok::kw_false;
        if (w.size() == 1)
          switch (w[0])
            {
            case 'X': return tok::X;
            case 'N': return tok::N;
            case 'F': return tok::F;
            case 'G': return tok::G;
            case 'U': return tok::U;
            case 'R': return tok::R;
            case 'W': return tok::W;
            default: break;
            }
        return tok::ident;
      }

      void advance(std::size_t n)
      {
        for (std::size_t i = 0; i < n; ++i, ++pos_)
          if (s_[pos_] == '\n')
            {
              ++line_;
              col_ = 1;
            }
          else
            ++col_;
      }

      void skip()
      {
        while (pos_ < s_.size())
          {
            char c = s_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
              advance(1);
            else if (c == '#')
              while (pos_ < s_.size() && s_[pos_] != '\n')
                advance(1);
            else
              break;
          }
      }

      std::string_view s_;
      std::size_t pos_ = 0;
      std::size_t line_ = 1;
      std::size_t col_ = 1;
    };

    class parser
    {
    public:
      explicit parser(std::string_view s) : lex_(s) { cur_ = lex_.next(); }

      formula parse_all()
      {
        formula f = parse_iff();
        if (cur_.kind != tok::end)
          fail("unexpected '" + cur_.text + "'");
        return f;
      }

    private:
      [[noreturn]] void fail(const std::string& msg) const
      {
        throw parse_error(msg, cur_.line, cur_.col);
      }

      void shift() { cur_ = lex_.next(); }

      formula parse_iff()
      {
        formula l = parse_implies();
        if (cur_.kind == tok::dbl_arrow)
          {
            shift();
            return formula::iff(l, parse_iff());
          }
        return l;
      }

      formula parse_implies()
      {
        formula l = parse_or();
        if (cur_.kind == tok::arrow)
          {
            shift();
            return formula::implies(l, parse_implies());
          }
        return l;
      }

      formula parse_or()
      {
        formula l = parse_and();
        while (cur_.kind == tok::bar)
          {
            shift();
            l = formula::disj(l, parse_and());
          }
        return l;
      }

      formula parse_and()
      {
        formula l = parse_binary_temporal();
        while (cur_.kind == tok::amp)
          {
            shift();
            l = formula::conj(l, parse_binary_temporal());
          }
        return l;
      }

      formula parse_binary_temporal()
      {
        formula l = parse_unary();
        op o;
        switch (cur_.kind)
          {
          case tok::U: o = op::until; break;
          case tok::R: o = op::release; break;
          case tok::W: o = op::weak_until; break;
          default: return l;
          }
        shift();
        return formula::make(o, l, parse_binary_temporal());
      }

      formula parse_unary()
      {
        switch (cur_.kind)
          {
          case tok::bang: shift(); return formula::neg(parse_unary());
          case tok::X: shift(); return formula::next(parse_unary());
          case tok::N: shift(); return formula::weak_next(parse_unary());
          case tok::F: shift(); return formula::eventually(parse_unary());
          case tok::G: shift(); return formula::globally(parse_unary());
          case tok::kw_true: shift(); return formula::tt();
          case tok::kw_false: shift(); return formula::ff();
          case tok::ident:
            {
              formula a = formula::atom(cur_.text);
              shift();
              return a;
            }
          case tok::lparen:
            {
              shift();
              formula f = parse_iff();
              if (cur_.kind != tok::rparen)
                fail("expected ')'");
              shift();
              return f;
            }
          case tok::end:
            fail("unexpected end of input");
          default:
            fail("unexpected '" + cur_.text + "'");
          }
      }

      lexer lex_;
      token cur_;
    };

    int precedence(op o)
    {
      switch (o)
        {
        case op::iff: return 1;
        case op::implies: return 2;
        case op::disj: return 3;
        case op::conj: return 4;
        case op::until:
        case op::release:
        case op::weak_until: return 5;
        case op::neg:
        case op::next:
        case op::weak_next:
        case op::eventually:
        case op::globally: return 6;
        default: return 7;
        }
    }

    const char* symbol(op o)
    {
      switch (o)
        {
        case op::neg: return "!";
        case op::conj: return " & ";
        case op::disj: return " | ";
        case op::implies: return " -> ";
        case op::iff: return " <-> ";
        case op::next: return "X ";
        case op::weak_next: return "N ";
        case op::until: return " U ";
        case op::release: return " R ";
        case op::weak_until: return " W ";
        case op::eventually: return "F ";
        case op::globally: return "G ";
        default: return "";
        }
    }

    void render(const formula& f, int min_prec, std::string& out)
    {
      int p = precedence(f.kind());
      bool paren = p < min_prec;
      if (paren)
        out += '(';
      switch (f.kind())
        {
        case op::tt: out += "true"; break;
        case op::ff: out += "false"; break;
        case op::atom: out += f.name(); break;
        case op::conj:
        case op::disj:
          // left-associative
          render(f.lhs(), p, out);
          out += symbol(f.kind());
          render(f.rhs(), p + 1, out);
          break;
        case op::implies:
        case op::iff:
        case op::until:
        case op::release:
        case op::weak_until:
          // right-associative
          render(f.lhs(), p + 1, out);
          out += symbol(f.kind());
          render(f.rhs(), p, out);
          break;
        default:
          out += symbol(f.kind());
          render(f.child(), p, out);
          break;
        }
      if (paren)
        out += ')';
    }
  }

  formula parse_formula(std::string_view text, dialect)
  {
    parser p(text);
    return p.parse_all();
  }

  std::string render_formula(const formula& f, dialect)
  {
    std::string out;
    render(f, 0, out);
    return out;
  }
}
