#include "petri/hlnet.hpp"

#include <algorithm>
#include <functional>

#include "petri/error.hpp"
#include "text_util.hpp"

namespace petri::hl {

namespace {

std::string render_items(const std::vector<Element>& items, const char* sep) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += detail::quote_if_needed(items[i]);
  }
  return out + "}";
}

std::string render_value(const Value& v, const char* sep) {
  return v.is_set() ? render_items(v.items, sep)
                    : detail::quote_if_needed(v.as_element());
}

std::string render_mode(const Transition& t, const Mode& mode, const char* sep,
                        const char* set_sep) {
  std::string out;
  for (const auto& var : t.variables) {
    auto it = mode.find(var.name);
    if (it == mode.end()) continue;
    if (!out.empty()) out += sep;
    out += var.name + "=" + render_value(it->second, set_sep);
  }
  return out;
}

}  // namespace

std::string to_string(const Value& v) { return render_value(v, ", "); }

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::symbol:
      return detail::quote_if_needed(t.name);
    case Term::Kind::apply:
      return detail::quote_if_needed(t.name) + "(" + to_string(t.args.front()) + ")";
    case Term::Kind::elm:
      return "elm(" + to_string(t.args.front()) + ")";
    case Term::Kind::set_literal: {
      std::string out = "{";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t.args[i]);
      }
      return out + "}";
    }
  }
  return {};
}

std::string to_string(const Transition& t, const Mode& mode) {
  return render_mode(t, mode, ", ", ", ");
}

const Variable* Transition::variable(const std::string& n) const {
  for (const auto& v : variables)
    if (v.name == n) return &v;
  return nullptr;
}

std::vector<std::vector<Element>> nonempty_subsets(const Universe& u) {
  const std::size_t n = u.elements.size();
  if (n >= 64 || (std::size_t{1} << n) - 1 > kMaxSetRange)
    throw CapacityError("universe '" + u.name + "' has too many subsets");
  std::vector<std::vector<std::size_t>> masks;
  for (std::size_t bits = 1; bits < (std::size_t{1} << n); ++bits) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (bits & (std::size_t{1} << i)) members.push_back(i);
    masks.push_back(std::move(members));
  }
  std::sort(masks.begin(), masks.end());
  std::vector<std::vector<Element>> out;
  out.reserve(masks.size());
  for (const auto& m : masks) {
    std::vector<Element> s;
    for (auto i : m) s.push_back(u.elements[i]);
    out.push_back(std::move(s));
  }
  return out;
}

void HLNet::add_universe(Universe u) {
  if (u.elements.empty())
    throw StructuralError("universe '" + u.name + "' is empty");
  if (has_universe(u.name))
    throw StructuralError("duplicate universe '" + u.name + "'");
  for (std::size_t i = 0; i < u.elements.size(); ++i) {
    if (!elements_.emplace(u.elements[i], std::make_pair(u.name, i)).second)
      throw StructuralError("element '" + u.elements[i] +
                            "' is declared more than once");
  }
  universes_.push_back(std::move(u));
}

void HLNet::add_place(Place p) {
  if (!has_universe(p.universe))
    throw StructuralError("place '" + p.name + "' uses unknown universe '" +
                          p.universe + "'");
  for (const auto& q : places_)
    if (q.name == p.name) throw StructuralError("duplicate place '" + p.name + "'");
  for (const auto& t : transitions_)
    if (t.name == p.name) throw StructuralError("duplicate identifier '" + p.name + "'");
  places_.push_back(std::move(p));
}

void HLNet::add_transition(Transition t) {
  for (const auto& u : transitions_)
    if (u.name == t.name) throw StructuralError("duplicate transition '" + t.name + "'");
  for (const auto& p : places_)
    if (p.name == t.name) throw StructuralError("duplicate identifier '" + t.name + "'");
  for (std::size_t i = 0; i < t.variables.size(); ++i) {
    auto& v = t.variables[i];
    if (!has_universe(v.universe))
      throw StructuralError("variable '" + v.name + "' of '" + t.name +
                            "' uses unknown universe '" + v.universe + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (t.variables[j].name == v.name)
        throw StructuralError("duplicate variable '" + v.name + "' in '" + t.name + "'");
    if (v.is_set) {
      if (v.range.empty()) v.range = nonempty_subsets(universe(v.universe));
      for (auto& s : v.range) {
        for (const auto& e : s)
          if (universe_of(e) != v.universe)
            throw SortError("range of '" + v.name + "' contains '" + e +
                            "' outside universe '" + v.universe + "'");
        s = canonical_set(std::move(s));
      }
    }
  }
  for (const auto* arcs : {&t.pre, &t.post})
    for (const auto& a : *arcs) place(a.place);
  transitions_.push_back(std::move(t));
}

bool HLNet::has_universe(const std::string& n) const {
  return std::any_of(universes_.begin(), universes_.end(),
                     [&](const Universe& u) { return u.name == n; });
}

const Universe& HLNet::universe(const std::string& n) const {
  for (const auto& u : universes_)
    if (u.name == n) return u;
  throw StructuralError("unknown universe '" + n + "'");
}

const Place& HLNet::place(const std::string& n) const {
  for (const auto& p : places_)
    if (p.name == n) return p;
  throw StructuralError("unknown place '" + n + "'");
}

const Transition& HLNet::transition(const std::string& n) const {
  for (const auto& t : transitions_)
    if (t.name == n) return t;
  throw StructuralError("unknown transition '" + n + "'");
}

std::optional<std::string> HLNet::universe_of(const Element& e) const {
  auto it = elements_.find(e);
  if (it == elements_.end()) return std::nullopt;
  return it->second.first;
}

std::size_t HLNet::rank(const Element& e) const {
  auto it = elements_.find(e);
  if (it == elements_.end()) throw SortError("unknown element '" + e + "'");
  return it->second.second;
}

std::vector<Element> HLNet::canonical_set(std::vector<Element> members) const {
  std::sort(members.begin(), members.end(), [this](const Element& a, const Element& b) {
    return rank(a) < rank(b);
  });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

Count HLMarking::count(const std::string& place, const Element& e) const {
  auto it = bags_.find(place);
  if (it == bags_.end()) return 0;
  auto jt = it->second.find(e);
  return jt == it->second.end() ? 0 : jt->second;
}

const Bag& HLMarking::bag(const std::string& place) const {
  static const Bag empty;
  auto it = bags_.find(place);
  return it == bags_.end() ? empty : it->second;
}

void HLMarking::add(const std::string& place, const Element& e, Count delta) {
  const Count next = count(place, e) + delta;
  if (next < 0)
    throw StructuralError("negative token count for " + e + " on " + place);
  auto& bag = bags_[place];
  if (next == 0)
    bag.erase(e);
  else
    bag[e] = next;
  if (bag.empty()) bags_.erase(place);
}

void HLMarking::add(const std::string& place, const Bag& bag, Count sign) {
  for (const auto& [e, n] : bag) add(place, e, sign * n);
}

bool HLMarking::covers(const std::string& place, const Bag& bag) const {
  return std::all_of(bag.begin(), bag.end(), [&](const auto& entry) {
    return count(place, entry.first) >= entry.second;
  });
}

Count HLMarking::total() const {
  Count n = 0;
  for (const auto& [place, bag] : bags_)
    for (const auto& [e, k] : bag) n += k;
  return n;
}

std::string to_string(const HLNet& net, const HLMarking& m) {
  std::string out;
  for (const auto& p : net.places()) {
    out += detail::quote_if_needed(p.name) + ": [";
    bool first = true;
    for (const auto& e : net.universe(p.universe).elements) {
      for (Count k = 0; k < m.count(p.name, e); ++k) {
        if (!first) out += ", ";
        first = false;
        out += detail::quote_if_needed(e);
      }
    }
    out += "]\n";
  }
  return out;
}

Value eval_term(const HLNet& net, const Interpretation& interp, const Term& term,
                const Mode& mode) {
  switch (term.kind) {
    case Term::Kind::symbol: {
      if (auto it = mode.find(term.name); it != mode.end()) return it->second;
      if (auto it = interp.constants.find(term.name); it != interp.constants.end())
        return it->second;
      if (net.has_universe(term.name))
        return Value::set(net.universe(term.name).elements);
      if (net.universe_of(term.name)) return Value::element(term.name);
      throw SortError("unknown symbol '" + term.name + "'");
    }
    case Term::Kind::apply: {
      auto fit = interp.functions.find(term.name);
      if (fit == interp.functions.end())
        throw SortError("unknown function '" + term.name + "'");
      const auto& f = fit->second;
      const Value arg = eval_term(net, interp, term.args.front(), mode);
      if (arg.is_set() || net.universe_of(arg.as_element()) != f.domain)
        throw SortError("function '" + f.name + "' expects an element of '" +
                        f.domain + "', got " + to_string(arg));
      auto vit = f.table.find(arg.as_element());
      if (vit == f.table.end())
        throw SortError("function '" + f.name + "' is undefined at '" +
                        arg.as_element() + "'");
      return vit->second;
    }
    case Term::Kind::set_literal: {
      std::vector<Element> members;
      for (const auto& a : term.args) {
        const Value v = eval_term(net, interp, a, mode);
        if (v.is_set()) throw SortError("set literals hold elements only: " + to_string(term));
        members.push_back(v.as_element());
      }
      return Value::set(net.canonical_set(std::move(members)));
    }
    case Term::Kind::elm:
      throw SortError("elm may only appear at the top of an inscription: " +
                      to_string(term));
  }
  throw SortError("malformed term");
}

Bag eval_inscription(const HLNet& net, const Interpretation& interp,
                     const std::vector<Term>& inscription, const Mode& mode) {
  Bag bag;
  for (const auto& term : inscription) {
    if (term.kind == Term::Kind::elm) {
      const Value v = eval_term(net, interp, term.args.front(), mode);
      if (!v.is_set())
        throw SortError("elm applied to non-set value " + to_string(v) + " in " +
                        to_string(term));
      for (const auto& e : v.items) ++bag[e];
    } else {
      const Value v = eval_term(net, interp, term, mode);
      if (v.is_set())
        throw SortError("set-valued term " + to_string(term) +
                        " used as a token; wrap it in elm(...)");
      ++bag[v.as_element()];
    }
  }
  return bag;
}

namespace {

Bag eval_arc(const HLNet& net, const Interpretation& interp, const Arc& arc,
             const Mode& mode) {
  Bag bag = eval_inscription(net, interp, arc.inscription, mode);
  const auto& universe = net.place(arc.place).universe;
  for (const auto& [e, n] : bag)
    if (net.universe_of(e) != universe)
      throw SortError("token '" + e + "' does not belong to universe '" +
                      universe + "' of place '" + arc.place + "'");
  return bag;
}

// Domain of one variable as values, in enumeration order.
std::vector<Value> domain(const HLNet& net, const Variable& v) {
  std::vector<Value> out;
  if (v.is_set)
    for (const auto& s : v.range) out.push_back(Value::set(s));
  else
    for (const auto& e : net.universe(v.universe).elements) out.push_back(Value::element(e));
  return out;
}

std::size_t mode_count(const HLNet& net, const Transition& t, std::size_t cap) {
  std::size_t n = 1;
  for (const auto& v : t.variables) {
    const std::size_t d = domain(net, v).size();
    if (d != 0 && n > cap / d)
      throw CapacityError("transition '" + t.name + "' has more than " +
                          std::to_string(cap) + " modes");
    n *= d;
  }
  return n;
}

// Calls fn for each mode in order; stops early when fn returns false.
void for_each_mode(const HLNet& net, const Transition& t,
                   const std::function<bool(const Mode&)>& fn) {
  std::vector<std::vector<Value>> domains;
  for (const auto& v : t.variables) {
    domains.push_back(domain(net, v));
    if (domains.back().empty()) return;
  }
  std::vector<std::size_t> digit(domains.size(), 0);
  while (true) {
    Mode mode;
    for (std::size_t i = 0; i < domains.size(); ++i)
      mode.emplace(t.variables[i].name, domains[i][digit[i]]);
    if (!fn(mode)) return;
    std::size_t i = domains.size();
    while (i > 0) {
      --i;
      if (++digit[i] < domains[i].size()) break;
      digit[i] = 0;
      if (i == 0) return;
    }
    if (domains.empty()) return;
  }
}

}  // namespace

HLMarking initial_marking(const HLNet& net, const Interpretation& interp) {
  HLMarking m;
  for (const auto& p : net.places())
    m.add(p.name, eval_arc(net, interp, Arc{p.name, p.initial}, {}));
  return m;
}

void check_mode(const HLNet& net, const Transition& t, const Mode& mode) {
  for (const auto& [name, value] : mode)
    if (!t.variable(name))
      throw StructuralError("transition '" + t.name + "' has no variable '" + name + "'");
  for (const auto& v : t.variables) {
    auto it = mode.find(v.name);
    if (it == mode.end())
      throw StructuralError("mode of '" + t.name + "' does not bind '" + v.name + "'");
    const Value& value = it->second;
    if (v.is_set) {
      if (!value.is_set())
        throw SortError("variable '" + v.name + "' expects a set, got " + to_string(value));
      if (std::find(v.range.begin(), v.range.end(), value.items) == v.range.end())
        throw SortError(to_string(value) + " is outside the range of '" + v.name + "'");
    } else if (value.is_set() || net.universe_of(value.as_element()) != v.universe) {
      throw SortError("variable '" + v.name + "' expects an element of '" +
                      v.universe + "', got " + to_string(value));
    }
  }
}

bool hl_enabled(const HLNet& net, const Interpretation& interp, const HLMarking& m,
                const std::string& t, const Mode& mode) {
  const auto& tr = net.transition(t);
  check_mode(net, tr, mode);
  std::map<std::string, Bag> need;
  for (const auto& arc : tr.pre) {
    auto& bag = need[arc.place];
    for (const auto& [e, n] : eval_arc(net, interp, arc, mode)) bag[e] += n;
  }
  return std::all_of(need.begin(), need.end(),
                     [&](const auto& entry) { return m.covers(entry.first, entry.second); });
}

HLMarking hl_fire(const HLNet& net, const Interpretation& interp, const HLMarking& m,
                  const std::string& t, const Mode& mode) {
  const auto& tr = net.transition(t);
  if (!hl_enabled(net, interp, m, t, mode)) {
    std::vector<std::string> deficient;
    for (const auto& arc : tr.pre)
      if (!m.covers(arc.place, eval_arc(net, interp, arc, mode)))
        deficient.push_back(arc.place);
    throw EnablingError("transition '" + t + "' is not enabled in mode " +
                            to_string(tr, mode),
                        deficient);
  }
  HLMarking next = m;
  for (const auto& arc : tr.pre) next.add(arc.place, eval_arc(net, interp, arc, mode), -1);
  for (const auto& arc : tr.post) next.add(arc.place, eval_arc(net, interp, arc, mode), 1);
  return next;
}

std::vector<Mode> all_modes(const HLNet& net, const std::string& t, std::size_t cap) {
  const auto& tr = net.transition(t);
  std::vector<Mode> out;
  out.reserve(mode_count(net, tr, cap));
  for_each_mode(net, tr, [&](const Mode& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

ModeList hl_modes(const HLNet& net, const Interpretation& interp, const HLMarking& m,
                  const std::string& t, std::size_t cap) {
  if (cap == 0) throw StructuralError("mode cap must be positive");
  const auto& tr = net.transition(t);
  ModeList result;
  for_each_mode(net, tr, [&](const Mode& mode) {
    if (!hl_enabled(net, interp, m, t, mode)) return true;
    if (result.modes.size() == cap) {
      result.truncated = true;
      return false;
    }
    result.modes.push_back(mode);
    return true;
  });
  return result;
}

std::string expanded_place_name(const std::string& place, const Element& e) {
  return place + "(" + e + ")";
}

std::string expanded_transition_name(const Transition& t, const Mode& mode) {
  if (t.variables.empty()) return t.name;
  return t.name + "(" + render_mode(t, mode, ",", ",") + ")";
}

Marking Expansion::to_elementary(const HLMarking& m) const {
  Marking out;
  for (const auto& [place, bag] : m.places())
    for (const auto& [e, n] : bag) {
      auto it = place_names.find({place, e});
      if (it == place_names.end())
        throw StructuralError("no expanded place for " + e + " on " + place);
      out.add(it->second, n);
    }
  return out;
}

HLMarking Expansion::to_high_level(const Marking& m) const {
  HLMarking out;
  for (const auto& [place, n] : m) {
    const auto& [hl_place, e] = place_of.at(net.place_index(place));
    out.add(hl_place, e, n);
  }
  return out;
}

const TransitionId& Expansion::transition_for(const std::string& t,
                                              const Mode& mode) const {
  auto it = transition_index.find({t, mode});
  if (it == transition_index.end())
    throw StructuralError("no expanded transition for '" + t + "'");
  return net.transitions()[it->second].id;
}

Expansion expand(const HLNet& net, const Interpretation& interp, std::size_t cap) {
  Expansion x;
  x.net.set_name(net.name());
  std::size_t places = 0;
  for (const auto& p : net.places()) places += net.universe(p.universe).elements.size();
  if (places > cap)
    throw CapacityError("expansion needs " + std::to_string(places) +
                        " places, cap is " + std::to_string(cap));
  std::size_t transitions = 0;
  for (const auto& t : net.transitions()) {
    transitions += mode_count(net, t, cap);
    if (transitions > cap)
      throw CapacityError("expansion exceeds " + std::to_string(cap) + " transitions");
  }

  for (const auto& p : net.places())
    for (const auto& e : net.universe(p.universe).elements) {
      auto name = expanded_place_name(p.name, e);
      x.net.add_place(name);
      x.place_of.emplace_back(p.name, e);
      x.place_names.emplace(std::make_pair(p.name, e), std::move(name));
    }

  for (const auto& t : net.transitions()) {
    for_each_mode(net, t, [&](const Mode& mode) {
      Marking pre, post;
      for (const auto& arc : t.pre)
        for (const auto& [e, n] : eval_arc(net, interp, arc, mode))
          pre.add(x.place_names.at({arc.place, e}), n);
      for (const auto& arc : t.post)
        for (const auto& [e, n] : eval_arc(net, interp, arc, mode))
          post.add(x.place_names.at({arc.place, e}), n);
      x.transition_index.emplace(std::make_pair(t.name, mode), x.net.transitions().size());
      x.net.add_transition(expanded_transition_name(t, mode), std::move(pre),
                           std::move(post));
      x.transition_of.emplace_back(t.name, mode);
      return true;
    });
  }
  x.net.set_initial_marking(x.to_elementary(initial_marking(net, interp)));
  return x;
}

HLMarkingGraph hl_marking_graph(const HLNet& net, const Interpretation& interp,
                                const HLMarking& m0, std::size_t cap) {
  if (cap == 0) throw StructuralError("marking graph cap must be positive");
  HLMarkingGraph g;
  std::map<HLMarking, std::size_t> index{{m0, 0}};
  g.nodes.push_back(m0);
  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    for (const auto& t : net.transitions()) {
      for_each_mode(net, t, [&](const Mode& mode) {
        if (!hl_enabled(net, interp, g.nodes[cur], t.name, mode)) return true;
        HLMarking next = hl_fire(net, interp, g.nodes[cur], t.name, mode);
        auto it = index.find(next);
        if (it == index.end()) {
          if (g.nodes.size() >= cap) {
            g.truncated = true;
            return true;
          }
          it = index.emplace(next, g.nodes.size()).first;
          g.nodes.push_back(std::move(next));
        }
        g.edges.push_back({cur, t.name, mode, it->second});
        return true;
      });
    }
  }
  return g;
}

DiningModel dining(std::size_t n, DiningVariant variant) {
  if (n < 2) throw StructuralError("dining needs at least two philosophers");
  DiningModel model;
  auto& net = model.net;
  auto& interp = model.interp;
  net.set_name(variant == DiningVariant::basic         ? "dining"
               : variant == DiningVariant::shared_sets ? "dining-shared-sets"
                                                       : "dining-free-sets");

  Universe phils{"P", {}}, forks{"F", {}};
  for (std::size_t i = 1; i <= n; ++i) {
    phils.elements.push_back("p" + std::to_string(i));
    forks.elements.push_back("f" + std::to_string(i));
  }
  interp.constants["P"] = Value::set(phils.elements);
  interp.constants["F"] = Value::set(forks.elements);

  Function l{"l", "P", {"F", false}, {}}, r{"r", "P", {"F", false}, {}};
  Function s{"S", "P", {"F", true}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& left = forks.elements[i];
    const auto& right = forks.elements[(i + 1) % n];
    l.table[phils.elements[i]] = Value::element(left);
    r.table[phils.elements[i]] = Value::element(right);
    // Members in universe order: only the last philosopher wraps around.
    s.table[phils.elements[i]] =
        i + 1 < n ? Value::set({left, right}) : Value::set({right, left});
  }
  net.add_universe(phils);
  net.add_universe(forks);

  net.add_place({"thinking-phils", "P", {Term::elm(Term::symbol("P"))}});
  net.add_place({"available-forks", "F", {Term::elm(Term::symbol("F"))}});
  net.add_place({"eating-phils", "P", {}});

  const Term x = Term::symbol("x");
  Variable var_x{"x", "P", false, {}};
  switch (variant) {
    case DiningVariant::basic: {
      interp.functions["l"] = l;
      interp.functions["r"] = r;
      std::vector<Term> forks_of_x{Term::apply("l", x), Term::apply("r", x)};
      net.add_transition({"pick-up",
                          {var_x},
                          {{"thinking-phils", {x}}, {"available-forks", forks_of_x}},
                          {{"eating-phils", {x}}}});
      net.add_transition({"return",
                          {var_x},
                          {{"eating-phils", {x}}},
                          {{"thinking-phils", {x}}, {"available-forks", forks_of_x}}});
      break;
    }
    case DiningVariant::shared_sets: {
      interp.functions["S"] = s;
      std::vector<Term> forks_of_x{Term::elm(Term::apply("S", x))};
      net.add_transition({"pick-up",
                          {var_x},
                          {{"thinking-phils", {x}}, {"available-forks", forks_of_x}},
                          {{"eating-phils", {x}}}});
      net.add_transition({"return",
                          {var_x},
                          {{"eating-phils", {x}}},
                          {{"thinking-phils", {x}}, {"available-forks", forks_of_x}}});
      break;
    }
    case DiningVariant::free_sets: {
      net.add_place({"held-forks", "F", {}});
      Variable var_y{"Y", "F", true, {}};
      std::vector<Term> forks_y{Term::elm(Term::symbol("Y"))};
      net.add_transition({"pick-up",
                          {var_x, var_y},
                          {{"thinking-phils", {x}}, {"available-forks", forks_y}},
                          {{"eating-phils", {x}}, {"held-forks", forks_y}}});
      net.add_transition({"return",
                          {var_x, var_y},
                          {{"eating-phils", {x}}, {"held-forks", forks_y}},
                          {{"thinking-phils", {x}}, {"available-forks", forks_y}}});
      break;
    }
  }
  return model;
}

}  // namespace petri::hl
