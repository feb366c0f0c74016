#include "petri/synthesis.hpp"

#include <set>

#include "petri/error.hpp"
#include "petri/module.hpp"

namespace petri {

Run make_step(const TransitionId& t, const std::vector<PlaceId>& pre,
              const std::vector<PlaceId>& post) {
  Run run;
  const auto e = run.add_event(t);
  for (const auto& p : pre) run.add_input(run.add_condition(p), e);
  for (const auto& p : post) run.add_output(e, run.add_condition(p));
  return run;
}

Net synthesize(const std::vector<Run>& steps, const std::string& name) {
  Net net(name);
  std::set<TransitionId> seen;
  auto declare = [&](const PlaceId& p) {
    if (!net.has_place(p)) {
      if (seen.count(p))
        throw SynthesisError("label '" + p + "' names both a step and a place");
      net.add_place(p);
    }
  };
  for (const auto& step : steps) {
    if (step.events().size() != 1)
      throw SynthesisError("a step must contain exactly one event");
    const auto& t = step.events().front();
    if (!seen.insert(t).second)
      throw SynthesisError("duplicate step '" + t + "'");
    if (net.has_place(t))
      throw SynthesisError("label '" + t + "' names both a step and a place");
    for (std::size_t c = 0; c < step.conditions().size(); ++c) {
      const bool in = !step.consumers(c).empty();
      const bool out = !step.producers(c).empty();
      if (in == out)
        throw SynthesisError("step '" + t + "' has a condition that is not " +
                             "exactly one of pre or post");
    }
    for (auto c : step.preset(0)) declare(step.conditions()[c]);
    for (auto c : step.postset(0)) declare(step.conditions()[c]);
  }
  for (const auto& step : steps) {
    Marking pre, post;
    for (auto c : step.preset(0)) pre.add(step.conditions()[c]);
    for (auto c : step.postset(0)) post.add(step.conditions()[c]);
    net.add_transition(step.events().front(), std::move(pre), std::move(post));
  }
  return net;
}

bool runs_round_trip(const std::vector<Run>& steps,
                     const std::vector<TransitionId>& seq, const Marking& m0) {
  const Net net = synthesize(steps);

  Run start;
  for (const auto& place : net.places())
    for (Count k = 0; k < m0[place]; ++k) start.add_condition(place);
  for (const auto& [place, n] : m0)
    if (!net.has_place(place)) return false;

  std::vector<Module> chain{module_of_run(start)};
  for (const auto& t : seq) {
    const Run* found = nullptr;
    for (const auto& s : steps)
      if (s.events().front() == t) found = &s;
    if (!found) throw SynthesisError("no step named '" + t + "'");
    chain.push_back(module_of_run(*found));
  }
  // An undefined chain composition is not a run at all.
  Module composite;
  try {
    composite = compose_chain(chain);
  } catch (const CompositionError&) {
    return false;
  }
  return static_cast<bool>(is_valid_run(net, m0, run_of_module(composite)));
}

}  // namespace petri
