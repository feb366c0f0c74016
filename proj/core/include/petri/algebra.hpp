#pragma once

#include <map>
#include <string>
#include <vector>

#include "petri/net.hpp"

namespace petri {

/// entry(p, t) = post(p, t) - pre(p, t); rows and columns follow
/// declaration order.
struct IncidenceMatrix {
  std::vector<PlaceId> rows;
  std::vector<TransitionId> cols;
  std::vector<std::vector<Count>> entries;  // entries[row][col]

  Count at(std::size_t row, std::size_t col) const { return entries[row][col]; }
  std::vector<Count> column(std::size_t col) const;
};

/// Integer place weighting. Zero weights are not stored.
struct InvariantVector {
  std::map<PlaceId, Count> weights;

  Count weight(const PlaceId& p) const {
    auto it = weights.find(p);
    return it == weights.end() ? 0 : it->second;
  }
  /// Weighted token sum v . m.
  Count apply(const Marking& m) const;

  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;
};

IncidenceMatrix incidence(const Net& net);

/// m == m0 + C . parikh, with transitions absent from `parikh` counted 0.
bool state_equation_check(const Net& net, const Marking& m0, const Marking& m,
                          const std::map<TransitionId, Count>& parikh);

/// Basis of the left integer kernel of the incidence matrix. Each vector
/// is scaled to coprime integers with a positive first nonzero entry; the
/// list is sorted lexicographically by weight vector in place order.
std::vector<InvariantVector> place_invariants(const Net& net);

/// True iff v . C == 0.
bool is_place_invariant(const Net& net, const InvariantVector& v);

/// True iff `v` lies in the rational span of `basis` (over net's places).
bool in_span(const Net& net, const std::vector<InvariantVector>& basis,
             const InvariantVector& v);

/// Fires `trace` from `m0` and reports whether v . M stays constant.
/// Throws EnablingError if the trace is not fireable.
bool check_invariant(const Net& net, const InvariantVector& v, const Marking& m0,
                     const std::vector<TransitionId>& trace);

/// `2·a + 1·b - 1·c`, places in declaration order.
std::string to_string(const Net& net, const InvariantVector& v);

}  // namespace petri
