#include <ltlfmc/props.hpp>

#include <algorithm>

#include <ltlfmc/error.hpp>

namespace ltlfmc
{
  bool is_identifier(std::string_view s)
  {
    if (s.empty())
      return false;
    auto alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    if (!alpha(s[0]))
      return false;
    return std::all_of(s.begin() + 1, s.end(), [&](char c) {
      return alpha(c) || (c >= '0' && c <= '9');
    });
  }

  prop_set::prop_set(std::vector<std::string> names) : names_(std::move(names))
  {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
    for (const auto& n : names_)
      if (!is_identifier(n))
        throw alphabet_error("invalid proposition name '" + n + "'");
    if (names_.size() > max_props)
      throw bound_error("more than 64 propositions");
  }

  std::optional<std::size_t> prop_set::find(std::string_view name) const
  {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name)
      return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t prop_set::index(std::string_view name) const
  {
    if (auto i = find(name))
      return *i;
    throw alphabet_error("undeclared atom '" + std::string(name) + "'");
  }

  bool prop_set::includes(const prop_set& other) const
  {
    return std::includes(names_.begin(), names_.end(), other.names_.begin(),
                         other.names_.end());
  }

  letter prop_set::make_letter(const std::vector<std::string>& true_props) const
  {
    letter l = 0;
    for (const auto& p : true_props)
      l |= letter{1} << index(p);
    return l;
  }

  std::vector<std::string> prop_set::true_props(letter l) const
  {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (l >> i & 1)
        out.push_back(names_[i]);
    return out;
  }

  std::string prop_set::format(letter l) const
  {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (l >> i & 1)
        {
          if (!first)
            s += ' ';
          s += names_[i];
          first = false;
        }
    return s + "}";
  }

  std::size_t prop_set::letter_count() const
  {
    if (names_.size() > max_explicit_props)
      throw bound_error("explicit alphabet over more than 8 propositions");
    return std::size_t{1} << names_.size();
  }

  letter prop_set::project(letter l, const prop_set& target) const
  {
    letter out = 0;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (l >> i & 1)
        if (auto j = target.find(names_[i]))
          out |= letter{1} << *j;
    return out;
  }

  prop_set merge(const prop_set& a, const prop_set& b)
  {
    std::vector<std::string> all = a.names();
    all.insert(all.end(), b.names().begin(), b.names().end());
    return prop_set(std::move(all));
  }

  trace::trace(prop_set props, std::vector<letter> letters)
    : props_(std::move(props)), letters_(std::move(letters))
  {
    if (letters_.empty())
      throw validation_error("traces must be non-empty");
    for (letter l : letters_)
      if (l & ~props_.full_mask())
        throw alphabet_error("letter outside the declared propositions");
  }

  lasso::lasso(prop_set props, std::vector<letter> stem, std::vector<letter> cycle)
    : props_(std::move(props)), stem_(std::move(stem)), cycle_(std::move(cycle))
  {
    if (cycle_.empty())
      throw validation_error("lasso cycle must be non-empty");
    for (const auto* part : {&stem_, &cycle_})
      for (letter l : *part)
        if (l & ~props_.full_mask())
          throw alphabet_error("letter outside the declared propositions");
  }

  letter lasso::at(std::size_t i) const
  {
    if (i < stem_.size())
      return stem_[i];
    return cycle_[(i - stem_.size()) % cycle_.size()];
  }

  trace lasso::prefix(std::size_t n) const
  {
    std::vector<letter> ls;
    ls.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      ls.push_back(at(i));
    return trace(props_, std::move(ls));
  }

  std::string to_string(const trace& t)
  {
    std::string s;
    for (letter l : t.letters())
      s += t.props().format(l);
    return s;
  }

  std::string to_string(const lasso& w)
  {
    std::string s;
    for (letter l : w.stem())
      s += w.props().format(l);
    s += "(";
    for (letter l : w.cycle())
      s += w.props().format(l);
    return s + ")^w";
  }
}
