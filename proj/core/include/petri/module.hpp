#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "petri/net.hpp"
#include "petri/run.hpp"

namespace petri {

struct InterfaceEntry {
  std::string label;
  std::string element;  // place or transition of the carrier net

  friend bool operator==(const InterfaceEntry&, const InterfaceEntry&) = default;
};

/// One face of a module: labels are unique, order is kept.
class Interface {
 public:
  /// Throws StructuralError if `label` is already present.
  void add(std::string label, std::string element);

  std::optional<std::string> find(const std::string& label) const;
  bool contains(const std::string& label) const { return find(label).has_value(); }

  const std::vector<InterfaceEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Interface&, const Interface&) = default;

 private:
  std::vector<InterfaceEntry> entries_;
};

/// A net with a left and a right interface. Elements may appear on both
/// faces. `labels` optionally annotates elements with the net element they
/// stand for; modules built from runs use it to remember condition and
/// event labels across composition.
struct Module {
  Net net;
  Interface left;
  Interface right;
  std::map<std::string, std::string> labels;

  /// Annotation of `element`, or the element identifier itself.
  const std::string& label_of(const std::string& element) const;

  /// Throws StructuralError if a face or annotation names a missing element.
  void validate() const;
};

/// Merges equally labeled elements of right(a) and left(b). Fused elements
/// keep a's identity, fused places add their initial tokens, and elements
/// of b whose identifiers clash with a's are renamed with trailing primes.
/// left = left(a) then unmatched left(b); right = right(b) then unmatched
/// right(a).
Module compose(const Module& a, const Module& b);

/// Left fold of compose. An empty list yields an empty module.
Module compose_chain(const std::vector<Module>& modules);

/// True iff a bijection of places and transitions preserves arcs, initial
/// markings, face labels and annotations. Identifiers and names are ignored.
bool modules_isomorphic(const Module& a, const Module& b);

/// Occurrence net of `run` as a module: places `c<i>`, transitions `e<i>`,
/// annotated with their labels; minimal conditions form the left face and
/// maximal conditions the right face, keyed by place label (`p`, `p#2`, ...
/// for repeated labels).
Module module_of_run(const Run& run);

/// Inverse of module_of_run up to identifiers: places become conditions and
/// transitions events, labeled via the module's annotations.
Run run_of_module(const Module& m);

}  // namespace petri
