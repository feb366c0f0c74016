#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "petri/net.hpp"

/// Predicate/transition nets over finite universes.
///
/// Places denote predicates over a universe and hold multisets of its
/// elements. Arcs carry multisets of terms over the transition's variables;
/// `elm(τ)` spreads a set-valued term into one token per member, while a
/// plain term must evaluate to a single element.
namespace petri::hl {

using Element = std::string;

struct Universe {
  std::string name;
  std::vector<Element> elements;
};

/// A single element or a finite set of elements. Set members are kept in
/// universe declaration order without repetition.
struct Value {
  enum class Kind { element, set };
  Kind kind = Kind::element;
  std::vector<Element> items;

  static Value element(Element e) { return {Kind::element, {std::move(e)}}; }
  static Value set(std::vector<Element> members) {
    return {Kind::set, std::move(members)};
  }

  bool is_set() const { return kind == Kind::set; }
  const Element& as_element() const { return items.front(); }

  friend bool operator==(const Value&, const Value&) = default;
  friend auto operator<=>(const Value&, const Value&) = default;
};

std::string to_string(const Value& v);

struct Sort {
  std::string universe;
  bool is_set = false;

  friend bool operator==(const Sort&, const Sort&) = default;
};

/// Symbol (variable, constant, universe name or element), function
/// application, set literal, or elm(...).
struct Term {
  enum class Kind { symbol, apply, set_literal, elm };
  Kind kind = Kind::symbol;
  std::string name;  // symbol or function name
  std::vector<Term> args;

  static Term symbol(std::string s) { return {Kind::symbol, std::move(s), {}}; }
  static Term apply(std::string f, Term arg) {
    return {Kind::apply, std::move(f), {std::move(arg)}};
  }
  static Term set_of(std::vector<Term> members) {
    return {Kind::set_literal, {}, std::move(members)};
  }
  static Term elm(Term arg) { return {Kind::elm, {}, {std::move(arg)}}; }

  friend bool operator==(const Term&, const Term&) = default;
};

std::string to_string(const Term& t);

struct Function {
  std::string name;
  std::string domain;
  Sort codomain;
  std::map<Element, Value> table;
};

struct Interpretation {
  std::map<std::string, Value> constants;
  std::map<std::string, Function> functions;
};

struct Variable {
  std::string name;
  std::string universe;
  bool is_set = false;
  /// Admissible values of a set variable, in enumeration order.
  std::vector<std::vector<Element>> range;
};

struct Arc {
  std::string place;
  std::vector<Term> inscription;
};

struct Place {
  std::string name;
  std::string universe;
  std::vector<Term> initial;  // ground terms
};

struct Transition {
  std::string name;
  std::vector<Variable> variables;
  std::vector<Arc> pre;
  std::vector<Arc> post;

  const Variable* variable(const std::string& name) const;
};

/// Upper bound on the number of subsets generated for one set variable.
inline constexpr std::size_t kMaxSetRange = 1u << 16;

/// Nonempty subsets of `u` in lexicographic order of their member
/// positions. Throws CapacityError beyond kMaxSetRange subsets.
std::vector<std::vector<Element>> nonempty_subsets(const Universe& u);

class HLNet {
 public:
  HLNet() = default;
  explicit HLNet(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Element names must be unique across all universes.
  void add_universe(Universe u);
  void add_place(Place p);
  /// Checks that arcs refer to declared places and that every symbol that
  /// is not a variable could be a constant (checked at evaluation).
  void add_transition(Transition t);

  const std::vector<Universe>& universes() const { return universes_; }
  const std::vector<Place>& places() const { return places_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  const Universe& universe(const std::string& name) const;
  const Place& place(const std::string& name) const;
  const Transition& transition(const std::string& name) const;
  bool has_universe(const std::string& name) const;

  /// Universe containing `e`, if any.
  std::optional<std::string> universe_of(const Element& e) const;
  /// Position of `e` inside its universe.
  std::size_t rank(const Element& e) const;

  /// Sorts and deduplicates set members by universe order.
  std::vector<Element> canonical_set(std::vector<Element> members) const;

 private:
  std::string name_;
  std::vector<Universe> universes_;
  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  std::unordered_map<std::string, std::pair<std::string, std::size_t>> elements_;
};

/// Multiset of elements.
using Bag = std::map<Element, Count>;

/// Marking of a high-level net: place -> bag. Empty bags are not stored.
class HLMarking {
 public:
  Count count(const std::string& place, const Element& e) const;
  const Bag& bag(const std::string& place) const;
  void add(const std::string& place, const Element& e, Count delta = 1);
  void add(const std::string& place, const Bag& bag, Count sign = 1);
  bool covers(const std::string& place, const Bag& bag) const;

  const std::map<std::string, Bag>& places() const { return bags_; }
  Count total() const;

  friend bool operator==(const HLMarking&, const HLMarking&) = default;
  friend auto operator<=>(const HLMarking& a, const HLMarking& b) {
    return a.bags_ <=> b.bags_;
  }

 private:
  std::map<std::string, Bag> bags_;
};

/// `place: [e1, e2, e2]` lines in place declaration order, elements in
/// universe order.
std::string to_string(const HLNet& net, const HLMarking& m);

/// variable -> value
using Mode = std::map<std::string, Value>;

/// `x=p1, Y={f1, f2}` in variable declaration order.
std::string to_string(const Transition& t, const Mode& mode);

/// Evaluates a term under `mode`. Variables shadow constants; remaining
/// symbols resolve to interpretation constants, then universe names (the
/// whole universe as a set), then elements.
Value eval_term(const HLNet& net, const Interpretation& interp, const Term& term,
                const Mode& mode);

/// Multiset union of the term values; elm(τ) contributes each member of τ
/// once, other terms must denote single elements. Throws SortError.
Bag eval_inscription(const HLNet& net, const Interpretation& interp,
                     const std::vector<Term>& inscription, const Mode& mode);

/// Initial marking from the places' initial inscriptions.
HLMarking initial_marking(const HLNet& net, const Interpretation& interp);

/// Throws StructuralError if `mode` is not total on t's variables and
/// SortError if a value lies outside its variable's universe or range.
void check_mode(const HLNet& net, const Transition& t, const Mode& mode);

bool hl_enabled(const HLNet& net, const Interpretation& interp,
                const HLMarking& m, const std::string& t, const Mode& mode);

/// Throws EnablingError if the mode is not enabled.
HLMarking hl_fire(const HLNet& net, const Interpretation& interp,
                  const HLMarking& m, const std::string& t, const Mode& mode);

struct ModeList {
  std::vector<Mode> modes;
  bool truncated = false;
};

/// Every valuation of t's variables, first variable most significant.
/// Throws CapacityError if there are more than `cap`.
std::vector<Mode> all_modes(const HLNet& net, const std::string& t,
                            std::size_t cap);

/// Enabled modes in the order of all_modes, at most `cap` of them.
ModeList hl_modes(const HLNet& net, const Interpretation& interp,
                  const HLMarking& m, const std::string& t, std::size_t cap);

/// Elementary net with one place per (place, element) and one transition per
/// (transition, mode), plus the canonical marking bijection.
struct Expansion {
  Net net;
  std::vector<std::pair<std::string, Element>> place_of;  // by place index
  std::vector<std::pair<std::string, Mode>> transition_of;  // by transition index

  Marking to_elementary(const HLMarking& m) const;
  HLMarking to_high_level(const Marking& m) const;
  /// Elementary transition for (t, mode). Throws StructuralError if absent.
  const TransitionId& transition_for(const std::string& t, const Mode& mode) const;

  std::map<std::pair<std::string, Element>, std::string> place_names;
  std::map<std::pair<std::string, Mode>, std::size_t> transition_index;
};

std::string expanded_place_name(const std::string& place, const Element& e);
std::string expanded_transition_name(const Transition& t, const Mode& mode);

/// Throws CapacityError if the expansion would exceed `cap` places or
/// `cap` transitions.
Expansion expand(const HLNet& net, const Interpretation& interp,
                 std::size_t cap = 1'000'000);

struct HLEdge {
  std::size_t source;
  std::string transition;
  Mode mode;
  std::size_t target;
};

struct HLMarkingGraph {
  std::vector<HLMarking> nodes;
  std::vector<HLEdge> edges;
  bool truncated = false;
};

/// Breadth-first reachable markings of the high-level net itself,
/// transitions in declaration order and modes in all_modes order.
HLMarkingGraph hl_marking_graph(const HLNet& net, const Interpretation& interp,
                                const HLMarking& m0, std::size_t cap);

enum class DiningVariant { basic, shared_sets, free_sets };

struct DiningModel {
  HLNet net;
  Interpretation interp;
};

/// Philosophers p1..pn and forks f1..fn with l(pi) = fi and
/// r(pi) = f((i mod n) + 1). Initially every philosopher thinks and every
/// fork is available (inscriptions elm(P) and elm(F)).
///
/// - basic: pick-up takes l(x), r(x).
/// - shared_sets: pick-up takes elm(S(x)) with S(pi) = {l(pi), r(pi)}.
/// - free_sets: pick-up takes elm(Y) for a set variable Y over nonempty
///   subsets of F; taken forks are parked on `held-forks` until return.
DiningModel dining(std::size_t n, DiningVariant variant);

}  // namespace petri::hl
