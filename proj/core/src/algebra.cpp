#include "petri/algebra.hpp"

#include <algorithm>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "petri/error.hpp"
#include "text_util.hpp"

namespace petri {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<cpp_rational>>;

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row.
std::vector<std::size_t> row_reduce(RationalMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[row], a[pivot]);
    const cpp_rational lead = a[row][col];
    for (auto& x : a[row]) x /= lead;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const cpp_rational factor = a[r][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= factor * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(RationalMatrix a, std::size_t cols) {
  return row_reduce(a, cols).size();
}

Count to_count(const cpp_int& v) {
  if (v > std::numeric_limits<Count>::max() ||
      v < std::numeric_limits<Count>::min())
    throw CapacityError("invariant weight exceeds 64-bit range");
  return static_cast<Count>(v);
}

// Scales a rational vector to coprime integers with positive leading entry.
std::vector<Count> normalize(const std::vector<cpp_rational>& v) {
  cpp_int lcm_den = 1;
  for (const auto& x : v)
    if (x != 0) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
  std::vector<cpp_int> ints;
  ints.reserve(v.size());
  cpp_int g = 0;
  for (const auto& x : v) {
    cpp_int n = numerator(x) * (lcm_den / denominator(x));
    g = boost::multiprecision::gcd(g, n);
    ints.push_back(n);
  }
  int sign = 1;
  for (const auto& n : ints)
    if (n != 0) {
      sign = n < 0 ? -1 : 1;
      break;
    }
  std::vector<Count> out;
  out.reserve(ints.size());
  for (const auto& n : ints) out.push_back(to_count(sign * n / g));
  return out;
}

std::vector<cpp_rational> dense(const Net& net, const InvariantVector& v) {
  std::vector<cpp_rational> out(net.places().size());
  for (const auto& [place, w] : v.weights) out[net.place_index(place)] = w;
  return out;
}

}  // namespace

std::vector<Count> IncidenceMatrix::column(std::size_t col) const {
  std::vector<Count> out;
  out.reserve(rows.size());
  for (const auto& r : entries) out.push_back(r[col]);
  return out;
}

Count InvariantVector::apply(const Marking& m) const {
  Count sum = 0;
  for (const auto& [place, w] : weights) sum += w * m[place];
  return sum;
}

IncidenceMatrix incidence(const Net& net) {
  IncidenceMatrix c;
  c.rows = net.places();
  for (const auto& t : net.transitions()) c.cols.push_back(t.id);
  c.entries.assign(c.rows.size(), std::vector<Count>(c.cols.size(), 0));
  for (std::size_t j = 0; j < net.transitions().size(); ++j) {
    const auto& t = net.transitions()[j];
    for (const auto& [place, n] : t.post) c.entries[net.place_index(place)][j] += n;
    for (const auto& [place, n] : t.pre) c.entries[net.place_index(place)][j] -= n;
  }
  return c;
}

bool state_equation_check(const Net& net, const Marking& m0, const Marking& m,
                          const std::map<TransitionId, Count>& parikh) {
  for (const auto& [t, n] : parikh) {
    net.transition_index(t);
    if (n < 0) throw StructuralError("negative Parikh entry for '" + t + "'");
  }
  const auto c = incidence(net);
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    Count expected = m0[c.rows[i]];
    for (std::size_t j = 0; j < c.cols.size(); ++j) {
      auto it = parikh.find(c.cols[j]);
      if (it != parikh.end()) expected += c.entries[i][j] * it->second;
    }
    if (expected != m[c.rows[i]]) return false;
  }
  // Tokens on places outside the net can never satisfy the equation.
  for (const auto& [place, n] : m)
    if (!net.has_place(place)) return false;
  for (const auto& [place, n] : m0)
    if (!net.has_place(place)) return false;
  return true;
}

std::vector<InvariantVector> place_invariants(const Net& net) {
  const auto c = incidence(net);
  const std::size_t places = c.rows.size();
  // Left kernel of C is the kernel of C^T.
  RationalMatrix a(c.cols.size(), std::vector<cpp_rational>(places));
  for (std::size_t j = 0; j < c.cols.size(); ++j)
    for (std::size_t i = 0; i < places; ++i) a[j][i] = c.entries[i][j];
  const auto pivots = row_reduce(a, places);

  std::vector<bool> is_pivot(places, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<std::vector<Count>> basis;
  for (std::size_t free = 0; free < places; ++free) {
    if (is_pivot[free]) continue;
    std::vector<cpp_rational> v(places);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(normalize(v));
  }
  std::sort(basis.begin(), basis.end());

  std::vector<InvariantVector> out;
  for (const auto& v : basis) {
    InvariantVector inv;
    for (std::size_t i = 0; i < places; ++i)
      if (v[i] != 0) inv.weights.emplace(c.rows[i], v[i]);
    out.push_back(std::move(inv));
  }
  return out;
}

bool is_place_invariant(const Net& net, const InvariantVector& v) {
  for (const auto& t : net.transitions()) {
    Count delta = 0;
    for (const auto& [place, n] : t.post) delta += v.weight(place) * n;
    for (const auto& [place, n] : t.pre) delta -= v.weight(place) * n;
    if (delta != 0) return false;
  }
  return true;
}

bool in_span(const Net& net, const std::vector<InvariantVector>& basis,
             const InvariantVector& v) {
  RationalMatrix m;
  for (const auto& b : basis) m.push_back(dense(net, b));
  const std::size_t cols = net.places().size();
  const std::size_t before = rank(m, cols);
  m.push_back(dense(net, v));
  return rank(std::move(m), cols) == before;
}

bool check_invariant(const Net& net, const InvariantVector& v, const Marking& m0,
                     const std::vector<TransitionId>& trace) {
  const auto markings = fire_sequence(net, m0, trace);
  const Count value = v.apply(m0);
  return std::all_of(markings.begin(), markings.end(),
                     [&](const Marking& m) { return v.apply(m) == value; });
}

std::string to_string(const Net& net, const InvariantVector& v) {
  std::string out;
  for (const auto& place : net.places()) {
    Count w = v.weight(place);
    if (w == 0) continue;
    if (out.empty())
      out += std::to_string(w);
    else
      out += (w < 0 ? " - " : " + ") + std::to_string(w < 0 ? -w : w);
    out += "·";
    out += detail::quote_if_needed(place);
  }
  return out.empty() ? "0" : out;
}

}  // namespace petri
