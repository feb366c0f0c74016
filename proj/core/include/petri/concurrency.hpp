#pragma once

#include <string>
#include <utility>
#include <vector>

#include "petri/net.hpp"
#include "petri/run.hpp"

namespace petri {

/// Causal unorderedness of two distinct occurrences of `run`.
bool co(const Run& run, Occurrence x, Occurrence y);
bool co(const CausalOrder& order, Occurrence x, Occurrence y);

/// Every condition labeled p is co with some condition labeled q and vice
/// versa. Only conditions produced and consumed inside the run are
/// quantified, unless a place has none. Throws RelationError if either
/// place never occurs in `run`.
bool propositions_concurrent(const Run& run, const PlaceId& p, const PlaceId& q);

/// Every event labeled t is co with some condition labeled p. Throws
/// RelationError if t never occurs in `run`.
bool place_transition_concurrent(const Run& run, const PlaceId& p,
                                 const TransitionId& t);

/// Undirected graph over net elements that occur in a run; links join
/// concurrent place/place and place/transition pairs.
struct ConcurrencyStructure {
  std::vector<std::string> nodes;  // places, then transitions, declaration order
  std::vector<std::pair<std::string, std::string>> links;  // by node position

  bool linked(const std::string& a, const std::string& b) const;

  friend bool operator==(const ConcurrencyStructure&,
                         const ConcurrencyStructure&) = default;
};

/// Throws StructuralError if `run` is not a valid run of `net` from its
/// own minimal conditions.
ConcurrencyStructure concurrency_structure(const Net& net, const Run& run);

bool is_connected(const ConcurrencyStructure& s);

}  // namespace petri
