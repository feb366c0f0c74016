#include "petri/run.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "petri/error.hpp"

namespace petri {

std::string to_string(Occurrence o) {
  return (o.is_condition() ? "c" : "e") + std::to_string(o.index);
}

std::size_t Run::add_condition(PlaceId label) {
  conditions_.push_back(std::move(label));
  return conditions_.size() - 1;
}

std::size_t Run::add_event(TransitionId label) {
  events_.push_back(std::move(label));
  return events_.size() - 1;
}

void Run::add_input(std::size_t condition, std::size_t event) {
  if (condition >= conditions_.size() || event >= events_.size())
    throw StructuralError("run arc refers to a missing occurrence");
  inputs_.emplace_back(condition, event);
}

void Run::add_output(std::size_t event, std::size_t condition) {
  if (condition >= conditions_.size() || event >= events_.size())
    throw StructuralError("run arc refers to a missing occurrence");
  outputs_.emplace_back(event, condition);
}

std::vector<std::size_t> Run::preset(std::size_t event) const {
  std::vector<std::size_t> out;
  for (const auto& [c, e] : inputs_)
    if (e == event) out.push_back(c);
  return out;
}

std::vector<std::size_t> Run::postset(std::size_t event) const {
  std::vector<std::size_t> out;
  for (const auto& [e, c] : outputs_)
    if (e == event) out.push_back(c);
  return out;
}

std::vector<std::size_t> Run::producers(std::size_t condition) const {
  std::vector<std::size_t> out;
  for (const auto& [e, c] : outputs_)
    if (c == condition) out.push_back(e);
  return out;
}

std::vector<std::size_t> Run::consumers(std::size_t condition) const {
  std::vector<std::size_t> out;
  for (const auto& [c, e] : inputs_)
    if (c == condition) out.push_back(e);
  return out;
}

Marking Run::initial_labels() const {
  std::vector<bool> produced(conditions_.size(), false);
  for (const auto& arc : outputs_) produced[arc.second] = true;
  Marking m;
  for (std::size_t c = 0; c < conditions_.size(); ++c)
    if (!produced[c]) m.add(conditions_[c]);
  return m;
}

Marking Run::final_labels() const {
  std::vector<bool> consumed(conditions_.size(), false);
  for (const auto& arc : inputs_) consumed[arc.first] = true;
  Marking m;
  for (std::size_t c = 0; c < conditions_.size(); ++c)
    if (!consumed[c]) m.add(conditions_[c]);
  return m;
}

Occurrence Run::occurrence(std::size_t dense_index) const {
  if (dense_index < conditions_.size()) return Occurrence::condition(dense_index);
  return Occurrence::event(dense_index - conditions_.size());
}

namespace {

// Successor lists over dense indices.
std::vector<std::vector<std::size_t>> successors(const Run& run) {
  std::vector<std::vector<std::size_t>> succ(run.size());
  for (const auto& [c, e] : run.inputs())
    succ[run.dense(Occurrence::condition(c))].push_back(
        run.dense(Occurrence::event(e)));
  for (const auto& [e, c] : run.outputs())
    succ[run.dense(Occurrence::event(e))].push_back(
        run.dense(Occurrence::condition(c)));
  return succ;
}

// Kahn's algorithm; empty result signals a cycle.
std::vector<std::size_t> topological_order(
    const std::vector<std::vector<std::size_t>>& succ) {
  std::vector<std::size_t> indegree(succ.size(), 0);
  for (const auto& s : succ)
    for (auto v : s) ++indegree[v];
  std::deque<std::size_t> ready;
  for (std::size_t v = 0; v < succ.size(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    auto v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (auto w : succ[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  if (order.size() != succ.size()) return {};
  return order;
}

}  // namespace

CausalOrder::CausalOrder(const Run& run) : conditions_(run.conditions().size()) {
  const auto succ = successors(run);
  const auto order = topological_order(succ);
  if (order.size() != succ.size())
    throw StructuralError("run is cyclic");
  reach_.assign(succ.size(), std::vector<bool>(succ.size(), false));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& row = reach_[*it];
    row[*it] = true;
    for (auto w : succ[*it])
      for (std::size_t k = 0; k < row.size(); ++k)
        if (reach_[w][k]) row[k] = true;
  }
}

std::size_t CausalOrder::pair_count() const {
  std::size_t n = 0;
  for (const auto& row : reach_) n += std::count(row.begin(), row.end(), true);
  return n;
}

CausalOrder causal_order(const Run& run) { return CausalOrder(run); }

Run step_run(const Net& net, std::string_view t) {
  const auto& tr = net.transition(t);
  Run run;
  const auto e = run.add_event(tr.id);
  for (const auto& place : net.places())
    for (Count k = 0; k < tr.pre[place]; ++k)
      run.add_input(run.add_condition(place), e);
  for (const auto& place : net.places())
    for (Count k = 0; k < tr.post[place]; ++k)
      run.add_output(e, run.add_condition(place));
  return run;
}

Run unfold(const Net& net, const Marking& m0,
           const std::vector<TransitionId>& seq) {
  Run run;
  // Maximal conditions per label, oldest first.
  std::map<PlaceId, std::deque<std::size_t>> frontier;
  Marking current = m0;
  for (const auto& [place, count] : m0) {
    if (!net.has_place(place))
      throw StructuralError("initial marking names unknown place '" + place + "'");
  }
  for (const auto& place : net.places())
    for (Count k = 0; k < m0[place]; ++k)
      frontier[place].push_back(run.add_condition(place));

  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      current = fire(net, current, seq[i]);
    } catch (const EnablingError& err) {
      throw EnablingError("step " + std::to_string(i) + ": " + err.what(),
                          err.deficient_places(), i);
    }
    const auto& tr = net.transition(seq[i]);
    const auto e = run.add_event(tr.id);
    for (const auto& place : net.places()) {
      auto& queue = frontier[place];
      for (Count k = 0; k < tr.pre[place]; ++k) {
        run.add_input(queue.front(), e);
        queue.pop_front();
      }
    }
    for (const auto& place : net.places())
      for (Count k = 0; k < tr.post[place]; ++k) {
        auto c = run.add_condition(place);
        run.add_output(e, c);
        frontier[place].push_back(c);
      }
  }
  return run;
}

RunCheck is_valid_run(const Net& net, const Marking& m0, const Run& run) {
  RunCheck check;
  auto fail = [&check](std::string msg) {
    check.valid = false;
    check.diagnostics.push_back(std::move(msg));
  };

  for (std::size_t c = 0; c < run.conditions().size(); ++c) {
    const auto cid = to_string(Occurrence::condition(c));
    if (!net.has_place(run.conditions()[c]))
      fail(cid + " is labeled with unknown place '" + run.conditions()[c] + "'");
    if (run.producers(c).size() > 1) fail(cid + " has more than one pre-event");
    if (run.consumers(c).size() > 1) fail(cid + " has more than one post-event");
  }

  for (std::size_t e = 0; e < run.events().size(); ++e) {
    const auto eid = to_string(Occurrence::event(e));
    const auto& label = run.events()[e];
    if (!net.has_transition(label)) {
      fail(eid + " is labeled with unknown transition '" + label + "'");
      continue;
    }
    const auto& tr = net.transition(label);
    Marking pre, post;
    for (auto c : run.preset(e)) pre.add(run.conditions()[c]);
    for (auto c : run.postset(e)) post.add(run.conditions()[c]);
    if (pre != tr.pre)
      fail(eid + " pre-conditions " + to_string(pre) + " differ from pre(" +
           label + ") = " + to_string(tr.pre));
    if (post != tr.post)
      fail(eid + " post-conditions " + to_string(post) + " differ from post(" +
           label + ") = " + to_string(tr.post));
  }

  if (topological_order(successors(run)).size() != run.size())
    fail("arc relation is cyclic");

  const auto initial = run.initial_labels();
  if (initial != m0)
    fail("minimal conditions carry " + to_string(initial) + ", expected " +
         to_string(m0));
  return check;
}

Linearizations linearizations(const Run& run, std::size_t cap) {
  if (cap == 0) throw StructuralError("linearization cap must be positive");
  const auto order = causal_order(run);
  const std::size_t n = run.events().size();
  // Immediate event predecessors are enough for enabling during the search.
  std::vector<std::vector<std::size_t>> before(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && order.leq(Occurrence::event(a), Occurrence::event(b)))
        before[b].push_back(a);

  Linearizations result;
  std::vector<std::size_t> prefix;
  std::vector<bool> placed(n, false);
  bool stop = false;

  auto search = [&](auto&& self) -> void {
    if (stop) return;
    if (prefix.size() == n) {
      if (result.sequences.size() == cap) {
        result.truncated = true;
        stop = true;
        return;
      }
      result.sequences.push_back(prefix);
      return;
    }
    for (std::size_t e = 0; e < n && !stop; ++e) {
      if (placed[e]) continue;
      bool ready = std::all_of(before[e].begin(), before[e].end(),
                               [&](std::size_t p) { return placed[p]; });
      if (!ready) continue;
      placed[e] = true;
      prefix.push_back(e);
      self(self);
      prefix.pop_back();
      placed[e] = false;
    }
  };
  search(search);
  return result;
}

std::vector<TransitionId> event_labels(const Run& run,
                                       const std::vector<std::size_t>& events) {
  std::vector<TransitionId> out;
  out.reserve(events.size());
  for (auto e : events) out.push_back(run.events().at(e));
  return out;
}

}  // namespace petri
