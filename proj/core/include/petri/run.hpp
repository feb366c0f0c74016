#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "petri/net.hpp"

namespace petri {

/// Reference to a condition or an event of a run.
struct Occurrence {
  enum class Kind { condition, event };
  Kind kind;
  std::size_t index;

  static Occurrence condition(std::size_t i) { return {Kind::condition, i}; }
  static Occurrence event(std::size_t i) { return {Kind::event, i}; }

  bool is_condition() const { return kind == Kind::condition; }
  bool is_event() const { return kind == Kind::event; }

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

/// `c<i>` or `e<i>`.
std::string to_string(Occurrence o);

/// A distributed run: a finite occurrence net whose conditions are labeled
/// with places and whose events are labeled with transitions. Conditions
/// are named `c0, c1, ...` and events `e0, e1, ...` in creation order.
///
/// The class stores arbitrary arc sets so that malformed runs can be
/// represented and rejected by is_valid_run().
class Run {
 public:
  std::size_t add_condition(PlaceId label);
  std::size_t add_event(TransitionId label);
  /// condition -> event
  void add_input(std::size_t condition, std::size_t event);
  /// event -> condition
  void add_output(std::size_t event, std::size_t condition);

  const std::vector<PlaceId>& conditions() const { return conditions_; }
  const std::vector<TransitionId>& events() const { return events_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& inputs() const {
    return inputs_;
  }
  const std::vector<std::pair<std::size_t, std::size_t>>& outputs() const {
    return outputs_;
  }

  std::size_t size() const { return conditions_.size() + events_.size(); }

  /// Pre-conditions of an event, in arc order.
  std::vector<std::size_t> preset(std::size_t event) const;
  /// Post-conditions of an event, in arc order.
  std::vector<std::size_t> postset(std::size_t event) const;
  /// Events producing a condition (at most one in a valid run).
  std::vector<std::size_t> producers(std::size_t condition) const;
  /// Events consuming a condition (at most one in a valid run).
  std::vector<std::size_t> consumers(std::size_t condition) const;

  /// Labels of conditions without a producer.
  Marking initial_labels() const;
  /// Labels of conditions without a consumer.
  Marking final_labels() const;

  /// Dense index of an occurrence: conditions first, then events.
  std::size_t dense(Occurrence o) const {
    return o.is_condition() ? o.index : conditions_.size() + o.index;
  }
  Occurrence occurrence(std::size_t dense_index) const;

  const std::string& label(Occurrence o) const {
    return o.is_condition() ? conditions_.at(o.index) : events_.at(o.index);
  }

  friend bool operator==(const Run&, const Run&) = default;

 private:
  std::vector<PlaceId> conditions_;
  std::vector<TransitionId> events_;
  std::vector<std::pair<std::size_t, std::size_t>> inputs_;
  std::vector<std::pair<std::size_t, std::size_t>> outputs_;
};

/// Reflexive-transitive closure of the arcs of a run.
class CausalOrder {
 public:
  /// Throws StructuralError if the arc graph of `run` has a cycle.
  explicit CausalOrder(const Run& run);

  bool leq(Occurrence a, Occurrence b) const {
    return reach_[dense(a)][dense(b)];
  }
  bool less(Occurrence a, Occurrence b) const { return a != b && leq(a, b); }
  /// Neither a <= b nor b <= a.
  bool unordered(Occurrence a, Occurrence b) const {
    return !leq(a, b) && !leq(b, a);
  }

  std::size_t size() const { return reach_.size(); }
  /// Number of (a, b) pairs with a <= b, including reflexive pairs.
  std::size_t pair_count() const;

 private:
  std::size_t dense(Occurrence o) const {
    return o.is_condition() ? o.index : conditions_ + o.index;
  }

  std::size_t conditions_ = 0;
  std::vector<std::vector<bool>> reach_;
};

struct RunCheck {
  bool valid = true;
  std::vector<std::string> diagnostics;

  explicit operator bool() const { return valid; }
};

/// Single-event run of `t` with fresh pre- and post-conditions, in place
/// declaration order.
Run step_run(const Net& net, std::string_view t);

/// Process of the firing sequence `seq` from `m0`. Each event consumes, per
/// input place, the oldest currently maximal condition carrying that label.
/// Throws EnablingError (with the step index) for infeasible sequences.
Run unfold(const Net& net, const Marking& m0,
           const std::vector<TransitionId>& seq);

/// Checks acyclicity, the at-most-one producer/consumer rule, that every
/// event matches pre/post of its transition, and that the minimal
/// conditions carry exactly `m0`.
RunCheck is_valid_run(const Net& net, const Marking& m0, const Run& run);

CausalOrder causal_order(const Run& run);

struct Linearizations {
  std::vector<std::vector<std::size_t>> sequences;  // event indices
  bool truncated = false;
};

/// Linear extensions of the causal order restricted to events, in
/// lexicographic order of event indices, at most `cap` of them.
Linearizations linearizations(const Run& run, std::size_t cap);

/// Transition labels of an event sequence.
std::vector<TransitionId> event_labels(const Run& run,
                                       const std::vector<std::size_t>& events);

}  // namespace petri
