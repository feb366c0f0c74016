#include "petri/net.hpp"

#include <deque>
#include <map>
#include <set>

#include "petri/error.hpp"

namespace petri {

void Net::add_place(const PlaceId& id, Count initial) {
  if (id.empty()) throw StructuralError("empty place identifier");
  if (place_index_.count(id) || transition_index_.count(id))
    throw StructuralError("duplicate identifier '" + id + "'");
  place_index_.emplace(id, places_.size());
  places_.push_back(id);
  if (initial != 0) initial_.set(id, initial);
}

void Net::check_places(const Marking& bag, const TransitionId& owner) const {
  for (const auto& [place, count] : bag)
    if (!place_index_.count(place))
      throw StructuralError("transition '" + owner +
                            "' refers to undeclared place '" + place + "'");
}

void Net::add_transition(const TransitionId& id, Marking pre, Marking post) {
  if (id.empty()) throw StructuralError("empty transition identifier");
  if (place_index_.count(id) || transition_index_.count(id))
    throw StructuralError("duplicate identifier '" + id + "'");
  check_places(pre, id);
  check_places(post, id);
  transition_index_.emplace(id, transitions_.size());
  transitions_.push_back({id, std::move(pre), std::move(post)});
}

void Net::set_initial(const PlaceId& place, Count count) {
  if (!has_place(place))
    throw StructuralError("initial marking names undeclared place '" + place +
                          "'");
  initial_.set(place, count);
}

void Net::set_initial_marking(const Marking& m) {
  for (const auto& [place, count] : m)
    if (!has_place(place))
      throw StructuralError("initial marking names undeclared place '" +
                            place + "'");
  initial_ = m;
}

bool Net::has_place(std::string_view id) const {
  return place_index_.count(std::string(id)) != 0;
}

bool Net::has_transition(std::string_view id) const {
  return transition_index_.count(std::string(id)) != 0;
}

std::size_t Net::place_index(std::string_view id) const {
  auto it = place_index_.find(std::string(id));
  if (it == place_index_.end())
    throw StructuralError("unknown place '" + std::string(id) + "'");
  return it->second;
}

std::size_t Net::transition_index(std::string_view id) const {
  auto it = transition_index_.find(std::string(id));
  if (it == transition_index_.end())
    throw StructuralError("unknown transition '" + std::string(id) + "'");
  return it->second;
}

const Transition& Net::transition(std::string_view id) const {
  return transitions_[transition_index(id)];
}

std::size_t Net::arc_count() const {
  std::size_t n = 0;
  for (const auto& t : transitions_) n += t.pre.support_size() + t.post.support_size();
  return n;
}

bool equivalent(const Net& a, const Net& b) {
  if (a.places().size() != b.places().size() ||
      a.transitions().size() != b.transitions().size())
    return false;
  for (const auto& p : a.places())
    if (!b.has_place(p)) return false;
  for (const auto& t : a.transitions()) {
    if (!b.has_transition(t.id)) return false;
    const auto& u = b.transition(t.id);
    if (t.pre != u.pre || t.post != u.post) return false;
  }
  return a.initial_marking() == b.initial_marking();
}

std::optional<std::size_t> MarkingGraph::find(const Marking& m) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == m) return i;
  return std::nullopt;
}

bool enabled(const Net& net, const Marking& m, std::string_view t) {
  return m.covers(net.transition(t).pre);
}

std::vector<TransitionId> enabled_transitions(const Net& net, const Marking& m) {
  std::vector<TransitionId> out;
  for (const auto& t : net.transitions())
    if (m.covers(t.pre)) out.push_back(t.id);
  return out;
}

namespace {

std::vector<std::string> deficient_places(const Marking& m, const Marking& need) {
  std::vector<std::string> out;
  for (const auto& [place, count] : need)
    if (m[place] < count) out.push_back(place);
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

Marking fire(const Net& net, const Marking& m, std::string_view t) {
  const auto& tr = net.transition(t);
  if (!m.covers(tr.pre)) {
    auto missing = deficient_places(m, tr.pre);
    throw EnablingError("transition '" + tr.id +
                            "' is not enabled: insufficient tokens on " +
                            join(missing),
                        missing);
  }
  Marking next = m;
  next -= tr.pre;
  next += tr.post;
  return next;
}

Marking unfire(const Net& net, const Marking& m, std::string_view t) {
  const auto& tr = net.transition(t);
  if (!m.covers(tr.post))
    throw ReversalError("transition '" + tr.id +
                        "' cannot be reversed: insufficient tokens on " +
                        join(deficient_places(m, tr.post)));
  Marking prev = m;
  prev -= tr.post;
  prev += tr.pre;
  return prev;
}

std::vector<Marking> fire_sequence(const Net& net, const Marking& m0,
                                   const std::vector<TransitionId>& seq) {
  std::vector<Marking> trace{m0};
  trace.reserve(seq.size() + 1);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      trace.push_back(fire(net, trace.back(), seq[i]));
    } catch (const EnablingError& e) {
      throw EnablingError("step " + std::to_string(i) + ": " + e.what(),
                          e.deficient_places(), i);
    }
  }
  return trace;
}

MarkingGraph marking_graph(const Net& net, const Marking& m0, std::size_t cap) {
  if (cap == 0) throw StructuralError("marking graph cap must be positive");
  MarkingGraph graph;
  std::map<Marking, std::size_t> index;
  graph.nodes.push_back(m0);
  index.emplace(m0, 0);
  for (std::size_t cur = 0; cur < graph.nodes.size(); ++cur) {
    for (const auto& t : net.transitions()) {
      if (!graph.nodes[cur].covers(t.pre)) continue;
      Marking next = graph.nodes[cur] - t.pre + t.post;
      auto it = index.find(next);
      if (it == index.end()) {
        if (graph.nodes.size() >= cap) {
          graph.truncated = true;
          continue;
        }
        it = index.emplace(next, graph.nodes.size()).first;
        graph.nodes.push_back(std::move(next));
      }
      graph.edges.push_back({cur, t.id, it->second});
    }
  }
  return graph;
}

std::optional<std::vector<TransitionId>> shortest_cycle(const Net& net,
                                                        const Marking& m0,
                                                        std::size_t cap) {
  // BFS over markings remembering the first edge used to reach each node;
  // the first edge back into m0 closes the shortest cycle.
  struct Parent {
    std::size_t node;
    std::size_t transition;
  };
  std::vector<Marking> nodes{m0};
  std::vector<Parent> parent{{0, 0}};
  std::map<Marking, std::size_t> index{{m0, 0}};
  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    for (std::size_t ti = 0; ti < net.transitions().size(); ++ti) {
      const auto& t = net.transitions()[ti];
      if (!nodes[cur].covers(t.pre)) continue;
      Marking next = nodes[cur] - t.pre + t.post;
      if (next == m0) {
        std::vector<TransitionId> seq{t.id};
        for (std::size_t n = cur; n != 0; n = parent[n].node)
          seq.push_back(net.transitions()[parent[n].transition].id);
        return std::vector<TransitionId>(seq.rbegin(), seq.rend());
      }
      if (index.count(next) || nodes.size() >= cap) continue;
      index.emplace(next, nodes.size());
      nodes.push_back(std::move(next));
      parent.push_back({cur, ti});
    }
  }
  return std::nullopt;
}

}  // namespace petri
