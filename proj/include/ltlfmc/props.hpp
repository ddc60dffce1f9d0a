#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ltlfmc
{
  /// A valuation: bit i set iff the i-th proposition of the owning
  /// PropSet holds.
  using letter = std::uint64_t;

  constexpr std::size_t max_props = 64;
  /// Limit for anything that enumerates the full alphabet 2^props.
  constexpr std::size_t max_explicit_props = 8;

  [[nodiscard]] bool is_identifier(std::string_view s);

  /// Sorted, duplicate-free set of proposition names.  Index order is the
  /// lexicographic order of names.
  class prop_set
  {
  public:
    prop_set() = default;
    explicit prop_set(std::vector<std::string> names);

    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] bool empty() const noexcept { return names_.empty(); }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept
    {
      return names_;
    }
    [[nodiscard]] const std::string& name(std::size_t i) const
    {
      return names_.at(i);
    }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
    /// Throws alphabet_error for an undeclared name.
    [[nodiscard]] std::size_t index(std::string_view name) const;
    [[nodiscard]] bool contains(std::string_view name) const
    {
      return find(name).has_value();
    }
    [[nodiscard]] bool includes(const prop_set& other) const;

    [[nodiscard]] letter make_letter(const std::vector<std::string>& true_props) const;
    [[nodiscard]] std::vector<std::string> true_props(letter l) const;
    /// "{a c}" style rendering, props in index order.
    [[nodiscard]] std::string format(letter l) const;
    /// Number of letters 2^size; throws bound_error above max_explicit_props.
    [[nodiscard]] std::size_t letter_count() const;
    [[nodiscard]] letter full_mask() const noexcept
    {
      return names_.size() == 64 ? ~letter{0}
                                 : ((letter{1} << names_.size()) - 1);
    }

    /// Re-index a letter of this set into `target` (names absent from
    /// target are dropped).
    [[nodiscard]] letter project(letter l, const prop_set& target) const;

    friend bool operator==(const prop_set&, const prop_set&) = default;

  private:
    std::vector<std::string> names_;
  };

  [[nodiscard]] prop_set merge(const prop_set& a, const prop_set& b);

  /// Finite non-empty sequence of letters.
  class trace
  {
  public:
    trace(prop_set props, std::vector<letter> letters);

    [[nodiscard]] const prop_set& props() const noexcept { return props_; }
    [[nodiscard]] const std::vector<letter>& letters() const noexcept
    {
      return letters_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return letters_.size(); }
    [[nodiscard]] letter operator[](std::size_t i) const { return letters_[i]; }

    friend bool operator==(const trace&, const trace&) = default;

  private:
    prop_set props_;
    std::vector<letter> letters_;
  };

  /// Ultimately periodic word stem . cycle^omega.
  class lasso
  {
  public:
    lasso(prop_set props, std::vector<letter> stem, std::vector<letter> cycle);

    [[nodiscard]] const prop_set& props() const noexcept { return props_; }
    [[nodiscard]] const std::vector<letter>& stem() const noexcept { return stem_; }
    [[nodiscard]] const std::vector<letter>& cycle() const noexcept { return cycle_; }
    /// Letter at position i of the infinite word.
    [[nodiscard]] letter at(std::size_t i) const;
    /// The first n letters as a trace (n >= 1).
    [[nodiscard]] trace prefix(std::size_t n) const;

    friend bool operator==(const lasso&, const lasso&) = default;

  private:
    prop_set props_;
    std::vector<letter> stem_;
    std::vector<letter> cycle_;
  };

  [[nodiscard]] std::string to_string(const trace& t);
  [[nodiscard]] std::string to_string(const lasso& w);
}
