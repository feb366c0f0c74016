#include "petri/marking.hpp"

#include "petri/error.hpp"
#include "text_util.hpp"

namespace petri {

Marking::Marking(std::initializer_list<std::pair<const std::string, Count>> init) {
  for (const auto& [place, count] : init) add(place, count);
}

Marking Marking::of(std::initializer_list<std::string_view> places) {
  Marking m;
  for (auto p : places) m.add(std::string(p), 1);
  return m;
}

Count Marking::operator[](std::string_view place) const {
  auto it = counts_.find(place);
  return it == counts_.end() ? 0 : it->second;
}

void Marking::set(const std::string& place, Count count) {
  if (count < 0)
    throw StructuralError("negative token count for place '" + place + "'");
  if (count == 0)
    counts_.erase(place);
  else
    counts_[place] = count;
}

void Marking::add(const std::string& place, Count delta) {
  set(place, (*this)[place] + delta);
}

bool Marking::covers(const Marking& other) const {
  for (const auto& [place, count] : other.counts_)
    if ((*this)[place] < count) return false;
  return true;
}

Marking& Marking::operator+=(const Marking& other) {
  for (const auto& [place, count] : other.counts_) add(place, count);
  return *this;
}

Marking& Marking::operator-=(const Marking& other) {
  if (!covers(other))
    throw StructuralError("multiset difference would be negative");
  for (const auto& [place, count] : other.counts_) add(place, -count);
  return *this;
}

Count Marking::total() const {
  Count n = 0;
  for (const auto& entry : counts_) n += entry.second;
  return n;
}

std::string to_string(const Marking& m) {
  std::string out = "[";
  bool first = true;
  for (const auto& [place, count] : m) {
    if (!first) out += ", ";
    first = false;
    out += detail::quote_if_needed(place);
    out += ':';
    out += std::to_string(count);
  }
  out += ']';
  return out;
}

}  // namespace petri
