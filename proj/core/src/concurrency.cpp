#include "petri/concurrency.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "petri/error.hpp"

namespace petri {

namespace {

std::vector<Occurrence> conditions_labeled(const Run& run, const PlaceId& p) {
  std::vector<Occurrence> out;
  for (std::size_t c = 0; c < run.conditions().size(); ++c)
    if (run.conditions()[c] == p) out.push_back(Occurrence::condition(c));
  return out;
}

std::vector<Occurrence> events_labeled(const Run& run, const TransitionId& t) {
  std::vector<Occurrence> out;
  for (std::size_t e = 0; e < run.events().size(); ++e)
    if (run.events()[e] == t) out.push_back(Occurrence::event(e));
  return out;
}

// Each occurrence in `xs` has a co partner in `ys`.
bool covered(const CausalOrder& order, const std::vector<Occurrence>& xs,
             const std::vector<Occurrence>& ys) {
  return std::all_of(xs.begin(), xs.end(), [&](Occurrence x) {
    return std::any_of(ys.begin(), ys.end(),
                       [&](Occurrence y) { return co(order, x, y); });
  });
}

// Conditions both produced and consumed inside the run. Minimal conditions
// were reached before the prefix starts and maximal ones are abandoned after
// it ends, so their intervals are cut off. Places without such a condition
// fall back to all of their conditions.
std::vector<Occurrence> complete_intervals(const Run& run,
                                           const std::vector<Occurrence>& cs) {
  std::vector<Occurrence> out;
  for (auto c : cs)
    if (!run.producers(c.index).empty() && !run.consumers(c.index).empty())
      out.push_back(c);
  return out.empty() ? cs : out;
}

bool propositions_concurrent(const Run& run, const CausalOrder& order,
                             const PlaceId& p, const PlaceId& q) {
  const auto ps = conditions_labeled(run, p);
  const auto qs = conditions_labeled(run, q);
  if (ps.empty() || qs.empty())
    throw RelationError("place '" + (ps.empty() ? p : q) +
                        "' does not occur in the run");
  return covered(order, complete_intervals(run, ps), qs) &&
         covered(order, complete_intervals(run, qs), ps);
}

bool place_transition_concurrent(const Run& run, const CausalOrder& order,
                                 const PlaceId& p, const TransitionId& t) {
  const auto ts = events_labeled(run, t);
  if (ts.empty())
    throw RelationError("transition '" + t + "' does not occur in the run");
  return covered(order, ts, conditions_labeled(run, p));
}

}  // namespace

bool co(const CausalOrder& order, Occurrence x, Occurrence y) {
  return x != y && order.unordered(x, y);
}

bool co(const Run& run, Occurrence x, Occurrence y) {
  auto in_range = [&](Occurrence o) {
    return o.is_condition() ? o.index < run.conditions().size()
                            : o.index < run.events().size();
  };
  if (!in_range(x) || !in_range(y))
    throw StructuralError("unknown occurrence " +
                          to_string(in_range(x) ? y : x));
  return co(causal_order(run), x, y);
}

bool propositions_concurrent(const Run& run, const PlaceId& p, const PlaceId& q) {
  return propositions_concurrent(run, causal_order(run), p, q);
}

bool place_transition_concurrent(const Run& run, const PlaceId& p,
                                 const TransitionId& t) {
  return place_transition_concurrent(run, causal_order(run), p, t);
}

bool ConcurrencyStructure::linked(const std::string& a, const std::string& b) const {
  return std::any_of(links.begin(), links.end(), [&](const auto& l) {
    return (l.first == a && l.second == b) || (l.first == b && l.second == a);
  });
}

ConcurrencyStructure concurrency_structure(const Net& net, const Run& run) {
  if (auto check = is_valid_run(net, run.initial_labels(), run); !check) {
    std::string msg = "not a valid run of net '" + net.name() + "'";
    for (const auto& d : check.diagnostics) msg += "; " + d;
    throw StructuralError(msg);
  }
  const auto order = causal_order(run);
  ConcurrencyStructure s;
  std::vector<PlaceId> places;
  std::vector<TransitionId> transitions;
  for (const auto& p : net.places())
    if (std::find(run.conditions().begin(), run.conditions().end(), p) !=
        run.conditions().end())
      places.push_back(p);
  for (const auto& t : net.transitions())
    if (std::find(run.events().begin(), run.events().end(), t.id) !=
        run.events().end())
      transitions.push_back(t.id);
  s.nodes = places;
  s.nodes.insert(s.nodes.end(), transitions.begin(), transitions.end());

  for (std::size_t i = 0; i < places.size(); ++i)
    for (std::size_t j = i + 1; j < places.size(); ++j)
      if (propositions_concurrent(run, order, places[i], places[j]))
        s.links.emplace_back(places[i], places[j]);
  for (const auto& p : places)
    for (const auto& t : transitions)
      if (place_transition_concurrent(run, order, p, t)) s.links.emplace_back(p, t);
  return s;
}

bool is_connected(const ConcurrencyStructure& s) {
  if (s.nodes.size() <= 1) return true;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) index[s.nodes[i]] = i;
  std::vector<std::size_t> parent(s.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = s.nodes.size();
  for (const auto& [a, b] : s.links) {
    auto ra = root(index.at(a)), rb = root(index.at(b));
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

}  // namespace petri
