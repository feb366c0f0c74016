#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace petri {

using Count = std::int64_t;

/// Finite multiset of place identifiers. Used both for markings (global
/// states) and for the pre/post multisets of transitions.
///
/// Zero entries are never stored, so equality and ordering are
/// extensional: {p:1, q:0} == {p:1}.
class Marking {
 public:
  using Storage = std::map<std::string, Count, std::less<>>;
  using const_iterator = Storage::const_iterator;

  Marking() = default;
  Marking(std::initializer_list<std::pair<const std::string, Count>> init);

  /// Builds a multiset where each listed place contributes one token.
  static Marking of(std::initializer_list<std::string_view> places);

  Count operator[](std::string_view place) const;

  /// Sets the count of `place`; throws StructuralError on negative counts.
  void set(const std::string& place, Count count);

  /// Adds `delta` (which may be negative) to `place`; throws
  /// StructuralError if the result would be negative.
  void add(const std::string& place, Count delta = 1);

  /// True iff `other` <= *this componentwise.
  bool covers(const Marking& other) const;

  Marking& operator+=(const Marking& other);
  /// Componentwise difference; throws StructuralError if not covered.
  Marking& operator-=(const Marking& other);

  friend Marking operator+(Marking lhs, const Marking& rhs) { return lhs += rhs; }
  friend Marking operator-(Marking lhs, const Marking& rhs) { return lhs -= rhs; }

  /// Total number of tokens.
  Count total() const;
  /// Number of places with a nonzero count.
  std::size_t support_size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  const_iterator begin() const { return counts_.begin(); }
  const_iterator end() const { return counts_.end(); }

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking& a, const Marking& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  Storage counts_;
};

/// `[p:1, q:2]` with places in lexicographic order; `[]` when empty.
std::string to_string(const Marking& m);

}  // namespace petri
