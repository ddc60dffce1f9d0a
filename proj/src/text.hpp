#pragma once

// Line tokenizer shared by the text formats: whitespace separated words,
// '{' and '}' as standalone tokens, '#' comments to end of line.

#include <string>
#include <string_view>
#include <vector>

#include <ltlfmc/error.hpp>

namespace ltlfmc::detail
{
  struct word
  {
    std::string text;
    std::size_t col;
  };

  struct line
  {
    std::vector<word> words;
    std::size_t number;

    [[nodiscard]] const std::string& at(std::size_t i) const
    {
      if (i >= words.size())
        throw parse_error("missing field", number,
                          words.empty() ? 1 : words.back().col);
      return words[i].text;
    }
    [[noreturn]] void fail(const std::string& msg, std::size_t i = 0) const
    {
      throw parse_error(msg, number, i < words.size() ? words[i].col : 1);
    }
  };

  inline std::vector<line> tokenize(std::string_view text)
  {
    std::vector<line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
      {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
          eol = text.size();
        std::string_view l = text.substr(pos, eol - pos);
        ++number;
        line cur{{}, number};
        std::size_t i = 0;
        while (i < l.size())
          {
            char c = l[i];
            if (c == '#')
              break;
            if (c == ' ' || c == '\t' || c == '\r')
              {
                ++i;
                continue;
              }
            if (c == '{' || c == '}')
              {
                cur.words.push_back({std::string(1, c), i + 1});
                ++i;
                continue;
              }
            std::size_t b = i;
            while (i < l.size() && l[i] != ' ' && l[i] != '\t' && l[i] != '\r'
                   && l[i] != '{' && l[i] != '}' && l[i] != '#')
              ++i;
            cur.words.push_back({std::string(l.substr(b, i - b)), b + 1});
          }
        if (!cur.words.empty())
          out.push_back(std::move(cur));
        pos = eol + 1;
      }
    return out;
  }

  /// Reads "{ a b }" starting at words[i]; returns the names and moves i
  /// past the closing brace.
  inline std::vector<std::string> read_set(const line& l, std::size_t& i)
  {
    if (l.at(i) != "{")
      l.fail("expected '{'", i);
    ++i;
    std::vector<std::string> names;
    while (l.at(i) != "}")
      names.push_back(l.words[i++].text);
    ++i;
    return names;
  }
}
