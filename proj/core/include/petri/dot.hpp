#pragma once

#include <string>

#include "petri/concurrency.hpp"
#include "petri/module.hpp"
#include "petri/net.hpp"
#include "petri/run.hpp"

namespace petri {

// Graphviz renderings. Output is byte-deterministic for identical inputs.

/// Places as circles, transitions as boxes; nodes and arcs sorted
/// lexicographically by identifier.
std::string to_dot(const Net& net);

/// As for nets, with interface labels attached to face elements.
std::string to_dot(const Module& module);

/// Conditions `c<i>` as circles, events `e<i>` as squares, in identifier
/// order.
std::string to_dot(const Run& run);

std::string to_dot(const MarkingGraph& graph);

/// Net arcs solid, concurrency links dotted and undirected.
std::string to_dot(const Net& net, const ConcurrencyStructure& structure);

}  // namespace petri
