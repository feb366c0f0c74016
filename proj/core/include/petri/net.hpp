#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "petri/marking.hpp"

namespace petri {

using PlaceId = std::string;
using TransitionId = std::string;

struct Transition {
  TransitionId id;
  Marking pre;
  Marking post;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Place/transition net with arc multiplicities.
///
/// Places and transitions share one identifier namespace and keep their
/// declaration order, which drives every deterministic traversal in the
/// library (BFS order, matrix rows/columns, serialization). Self-loops are
/// permitted. An optional initial marking travels with the net so that
/// textual files can carry it.
class Net {
 public:
  Net() = default;
  explicit Net(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Declares a place. Throws StructuralError on a duplicate identifier.
  void add_place(const PlaceId& id, Count initial = 0);

  /// Declares a transition. Every place in `pre`/`post` must already exist.
  void add_transition(const TransitionId& id, Marking pre = {},
                      Marking post = {});

  void set_initial(const PlaceId& place, Count count);
  void set_initial_marking(const Marking& m);
  const Marking& initial_marking() const { return initial_; }

  const std::vector<PlaceId>& places() const { return places_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  bool has_place(std::string_view id) const;
  bool has_transition(std::string_view id) const;

  /// Declaration index; throws StructuralError for unknown identifiers.
  std::size_t place_index(std::string_view id) const;
  std::size_t transition_index(std::string_view id) const;
  const Transition& transition(std::string_view id) const;

  /// Number of (place, transition) arcs; a self-loop counts as two arcs.
  std::size_t arc_count() const;

  /// Structural equality including declaration order.
  friend bool operator==(const Net& a, const Net& b) {
    return a.name_ == b.name_ && a.places_ == b.places_ &&
           a.transitions_ == b.transitions_ && a.initial_ == b.initial_;
  }

 private:
  void check_places(const Marking& bag, const TransitionId& owner) const;

  std::string name_;
  std::vector<PlaceId> places_;
  std::vector<Transition> transitions_;
  std::unordered_map<std::string, std::size_t> place_index_;
  std::unordered_map<std::string, std::size_t> transition_index_;
  Marking initial_;
};

/// Same places, same transitions with identical pre/post, same initial
/// marking; declaration order and net name are ignored.
bool equivalent(const Net& a, const Net& b);

/// One occurrence M -t-> M'.
struct GlobalStep {
  Marking source;
  TransitionId transition;
  Marking target;
};

struct GraphEdge {
  std::size_t source;
  TransitionId transition;
  std::size_t target;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Reachable markings explored breadth-first. `nodes[0]` is the initial
/// marking; edges reference node indices.
struct MarkingGraph {
  std::vector<Marking> nodes;
  std::vector<GraphEdge> edges;
  bool truncated = false;

  const Marking& initial() const { return nodes.front(); }
  std::optional<std::size_t> find(const Marking& m) const;
  GlobalStep step(const GraphEdge& e) const {
    return {nodes[e.source], e.transition, nodes[e.target]};
  }
};

/// pre(t) <= m. Throws StructuralError for an unknown transition.
bool enabled(const Net& net, const Marking& m, std::string_view t);

/// Transitions enabled at `m`, in declaration order.
std::vector<TransitionId> enabled_transitions(const Net& net, const Marking& m);

/// m - pre(t) + post(t). Throws EnablingError naming deficient places.
Marking fire(const Net& net, const Marking& m, std::string_view t);

/// m - post(t) + pre(t). Throws ReversalError unless post(t) <= m.
Marking unfire(const Net& net, const Marking& m, std::string_view t);

/// Markings M0..Mn visited by `seq`. Throws EnablingError carrying the
/// index of the first disabled step.
std::vector<Marking> fire_sequence(const Net& net, const Marking& m0,
                                   const std::vector<TransitionId>& seq);

/// Breadth-first reachability from `m0`, exploring transitions in
/// declaration order and keeping at most `cap` markings.
MarkingGraph marking_graph(const Net& net, const Marking& m0, std::size_t cap);

/// Shortest nonempty firing sequence leading from `m0` back to `m0`
/// (BFS, ties by declaration order), if one exists within `cap` markings.
std::optional<std::vector<TransitionId>> shortest_cycle(const Net& net,
                                                        const Marking& m0,
                                                        std::size_t cap);

}  // namespace petri
