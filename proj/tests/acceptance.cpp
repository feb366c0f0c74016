// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "generators.hpp"
#include "golden.hpp"
#include "oracles.hpp"
#include "petri/algebra.hpp"
#include "petri/concurrency.hpp"
#include "petri/error.hpp"
#include "petri/examples.hpp"
#include "petri/hlnet.hpp"
#include "petri/module.hpp"
#include "petri/synthesis.hpp"

using namespace petri;

namespace {

// Pinned parameters. Every comparison is exact unless stated here.
constexpr std::size_t kRandomNets = 200;
constexpr std::size_t kRandomNetWalk = 10;
constexpr std::size_t kTriples = 300;
constexpr std::size_t kTripleAttempts = 50000;
constexpr std::size_t kInvariantTraces = 100;
constexpr std::size_t kInvariantTraceLength = 40;
constexpr double kOracleSecondsLimit = 10.0;
constexpr std::size_t kGoldenReorderings = 5;
constexpr std::size_t kGraphCap = 100000;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed conditions with a short reason.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  Outcome done(const std::string& summary) const {
    if (failed_ == 0) return {true, summary};
    std::string d = std::to_string(failed_) + " failed:";
    for (const auto& f : failures_) d += " [" + f + "]";
    return {false, d};
  }

 private:
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

InvariantVector dining_weights(const hl::HLNet& net) {
  InvariantVector v;
  for (const auto& p : net.universe("P").elements)
    v.weights[hl::expanded_place_name("eating-phils", p)] = 2;
  for (const auto& f : net.universe("F").elements)
    v.weights[hl::expanded_place_name("available-forks", f)] = 1;
  return v;
}

Outcome marking_equation() {
  Check c;
  gen::Rng rng(1);
  std::size_t checks = 0;
  for (std::size_t i = 0; i < kRandomNets; ++i) {
    auto net = gen::random_net(rng, 8, 6);
    auto m = net.initial_marking();
    for (std::size_t step = 0; step <= kRandomNetWalk; ++step) {
      auto en = enabled_transitions(net, m);
      for (const auto& t : en) {
        ++checks;
        c.require(unfire(net, fire(net, m, t), t) == m, "net " + std::to_string(i) + " " + t);
      }
      if (en.empty()) break;
      m = fire(net, m, en[gen::uniform(rng, 0, en.size() - 1)]);
    }
  }
  return c.done(std::to_string(kRandomNets) + " nets, " + std::to_string(checks) +
                " fire/unfire pairs");
}

Outcome bakery_cycle() {
  Check c;
  auto net = examples::bakery();
  auto trace = fire_sequence(net, net.initial_marking(),
                             {"bake", "supply-to-aide", "move-to-shop", "sell"});
  c.require(trace.size() == 5, "trace length");
  c.require(trace.back() == net.initial_marking(), "M4 == M0");
  c.require(enabled(net, trace.back(), "bake"), "M4 enables bake");
  return c.done("M4 = M0 and bake enabled again");
}

Outcome partial_order() {
  Check c;
  auto net = examples::bakery();
  const std::vector<TransitionId> seq{"bake", "supply-to-aide", "move-to-shop", "sell", "bake"};
  auto run = unfold(net, net.initial_marking(), seq);
  auto order = causal_order(run);
  auto ev = Occurrence::event;
  c.require(order.unordered(ev(4), ev(2)), "bake#2 co move-to-shop");
  c.require(order.unordered(ev(4), ev(3)), "bake#2 co sell");
  c.require(order.less(ev(1), ev(4)), "supply-to-aide < bake#2");
  c.require(oracle::co(run, ev(4), ev(2)) && oracle::co(run, ev(4), ev(3)) &&
                oracle::reaches(run, ev(1), ev(4)),
            "oracle order");
  auto lin = linearizations(run, 1000);
  auto brute = oracle::linear_extensions(run);
  c.require(!lin.truncated && lin.sequences.size() == 3, "3 linearizations");
  c.require(std::set(lin.sequences.begin(), lin.sequences.end()) ==
                std::set(brute.begin(), brute.end()),
            "oracle linear extensions");
  return c.done("second bake unordered with move/sell, after supply; " +
                std::to_string(lin.sequences.size()) + " interleavings = oracle");
}

Outcome four_seasons() {
  Check c;
  auto net = examples::four_seasons();
  auto round = shortest_cycle(net, net.initial_marking(), kGraphCap);
  c.require(round.has_value(), "a cycle exists");
  if (!round) return c.done("");
  auto structure = [&](std::size_t k) {
    std::vector<TransitionId> seq;
    for (std::size_t i = 0; i < k; ++i) seq.insert(seq.end(), round->begin(), round->end());
    return concurrency_structure(net, unfold(net, net.initial_marking(), seq));
  };
  auto s3 = structure(3);
  c.require(is_connected(s3), "connected over 3 rounds");
  c.require(structure(2) == s3, "2 rounds identical");
  c.require(structure(4) == s3, "4 rounds identical");
  c.require(is_connected(structure(2)) && is_connected(structure(4)), "verdict stable");
  return c.done("connected over 3 rounds, " + std::to_string(s3.links.size()) +
                " links, identical for 2/3/4 rounds");
}

Outcome invariants() {
  Check c;
  auto lf = examples::light_fan();
  auto basis = place_invariants(lf);
  InvariantVector light{{{"light-off", 1}, {"light-on", 1}}};
  InvariantVector fan{{{"fan-off", 1}, {"fan-on", 1}}};
  c.require(basis.size() == 2, "light/fan basis has 2 vectors");
  c.require(in_span(lf, basis, light) && in_span(lf, basis, fan), "expected vectors in span");
  for (const auto& b : basis) c.require(in_span(lf, {light, fan}, b), "basis within span");

  gen::Rng rng(5);
  std::size_t traces = 0;
  for (std::size_t n = 3; n <= 5; ++n) {
    auto d = hl::dining(n, hl::DiningVariant::basic);
    auto x = hl::expand(d.net, d.interp);
    auto v = dining_weights(d.net);
    auto b = place_invariants(x.net);
    const auto tag = "n=" + std::to_string(n);
    c.require(in_span(x.net, b, v), tag + " in span");
    c.require(oracle::in_span(x.net, [&] {
      std::vector<std::map<std::string, Count>> w;
      for (const auto& e : b) w.push_back(e.weights);
      return w;
    }(), v.weights), tag + " in span (oracle)");
    c.require(v.apply(x.net.initial_marking()) == static_cast<Count>(n), tag + " value n");
    for (std::size_t i = 0; i < kInvariantTraces; ++i) {
      auto trace = gen::random_trace(rng, x.net, x.net.initial_marking(), kInvariantTraceLength);
      c.require(check_invariant(x.net, v, x.net.initial_marking(), trace), tag + " trace");
      auto m = x.net.initial_marking();
      for (const auto& t : trace) {
        m = fire(x.net, m, t);
        c.require(v.apply(m) == static_cast<Count>(n), tag + " constant");
      }
      ++traces;
    }
  }
  return c.done("light/fan span matches; dining n=3..5 in span, " + std::to_string(traces) +
                " traces constant at n");
}

Outcome associativity() {
  Check c;
  auto shared = [](const Module& a, const Module& b) {
    std::size_t n = 0;
    for (const auto& e : a.right.entries()) n += b.left.contains(e.label);
    return n;
  };
  auto arithmetic = [&](const Module& x, const Module& y, const Module& xy) {
    const auto s = shared(x, y);
    return xy.left.size() == x.left.size() + y.left.size() - s &&
           xy.right.size() == x.right.size() + y.right.size() - s;
  };
  auto attempt = [](const std::function<Module()>& f) -> std::optional<Module> {
    try {
      return f();
    } catch (const CompositionError&) {
      return std::nullopt;
    }
  };

  gen::Rng rng(42);
  std::size_t composable = 0, one_sided = 0, attempts = 0;
  while (composable < kTriples && attempts++ < kTripleAttempts) {
    auto a = gen::random_module(rng, 6), b = gen::random_module(rng, 6),
         cc = gen::random_module(rng, 6);
    auto ab = attempt([&] { return compose(a, b); });
    auto bc = attempt([&] { return compose(b, cc); });
    auto left = ab ? attempt([&] { return compose(*ab, cc); }) : std::nullopt;
    auto right = bc ? attempt([&] { return compose(a, *bc); }) : std::nullopt;
    if (left.has_value() != right.has_value()) ++one_sided;
    if (!left || !right) continue;
    ++composable;
    c.require(modules_isomorphic(*left, *right), "triple isomorphic");
    c.require(oracle::isomorphic(*left, *right), "triple isomorphic (oracle)");
    c.require(arithmetic(a, b, *ab) && arithmetic(*ab, cc, *left) && arithmetic(b, cc, *bc) &&
                  arithmetic(a, *bc, *right),
              "interface arithmetic");
  }
  c.require(composable == kTriples, "found " + std::to_string(composable) + " triples");

  auto claims = examples::claim_settlement();
  auto all = oracle::all_parenthesizations(claims, 0, claims.size());
  c.require(all.size() == 42, "42 parenthesizations");
  for (const auto& m : all) {
    c.require(modules_isomorphic(all.front(), m), "claim chain isomorphic");
    c.require(oracle::isomorphic(all.front(), m), "claim chain isomorphic (oracle)");
  }
  c.require(all.front().left.empty() && all.front().right.empty(), "claim chain faces empty");
  return c.done(std::to_string(composable) + " triples from " + std::to_string(attempts) +
                " samples (" + std::to_string(one_sided) +
                " defined on one side only, skipped), claim chain " + std::to_string(all.size()) +
                " parenthesizations");
}

Outcome synthesis() {
  Check c;
  auto steps = examples::light_fan_steps();
  auto net = synthesize(steps);
  c.require(net.places().size() == 4, "4 places");
  c.require(net.transitions().size() == 4, "4 transitions");
  c.require(net.arc_count() == 12, "12 arcs");
  const auto& starts = net.transition("fan-starts");
  const auto& stops = net.transition("fan-stops");
  c.require(starts.pre["light-on"] == 1 && starts.post["light-on"] == 1, "fan-starts self-loop");
  c.require(stops.pre["light-off"] == 1 && stops.post["light-off"] == 1, "fan-stops self-loop");
  const Marking m0{{"light-off", 1}, {"fan-off", 1}};
  c.require(runs_round_trip(steps, {"turn-light-on", "fan-starts", "turn-light-off", "fan-stops"},
                            m0),
            "chain (a)");
  c.require(runs_round_trip(steps, {"turn-light-on", "fan-starts", "turn-light-off",
                                    "turn-light-on"},
                            m0),
            "chain (b)");
  auto g = marking_graph(net, m0, kGraphCap);
  c.require(!g.truncated && g.nodes.size() == 4, "4 states");
  return c.done("4 places, 4 transitions, 12 arcs, both chains valid, " +
                std::to_string(g.nodes.size()) + " states");
}

Outcome hl_oracle() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  std::string sizes;
  for (std::size_t n = 2; n <= 5; ++n) {
    auto d = hl::dining(n, hl::DiningVariant::basic);
    auto x = hl::expand(d.net, d.interp);
    auto hg = hl::hl_marking_graph(d.net, d.interp, hl::initial_marking(d.net, d.interp), kGraphCap);
    auto eg = marking_graph(x.net, x.net.initial_marking(), kGraphCap);
    const auto tag = "n=" + std::to_string(n);
    c.require(!hg.truncated && !eg.truncated, tag + " complete");
    std::set<Marking> hs, es(eg.nodes.begin(), eg.nodes.end());
    for (const auto& m : hg.nodes) {
      hs.insert(x.to_elementary(m));
      c.require(x.to_high_level(x.to_elementary(m)) == m, tag + " bijection");
    }
    c.require(hs == es && hs.size() == hg.nodes.size(), tag + " states");
    std::set<std::tuple<Marking, TransitionId, Marking>> he, ee;
    for (const auto& e : hg.edges)
      he.insert({x.to_elementary(hg.nodes[e.source]), x.transition_for(e.transition, e.mode),
                 x.to_elementary(hg.nodes[e.target])});
    for (const auto& e : eg.edges) ee.insert({eg.nodes[e.source], e.transition, eg.nodes[e.target]});
    c.require(he == ee && he.size() == hg.edges.size(), tag + " steps");
    auto lts = oracle::dining_lts(n);
    c.require(lts.states.size() == hg.nodes.size() && lts.edges.size() == hg.edges.size(),
              tag + " independent model");
    sizes += (sizes.empty() ? "" : ", ") + tag + ": " + std::to_string(hg.nodes.size()) + "/" +
             std::to_string(hg.edges.size());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(seconds < kOracleSecondsLimit, "runtime " + std::to_string(seconds) + " s");
  std::ostringstream s;
  s.precision(3);
  s << sizes << " states/steps; " << seconds << " s";
  return c.done(s.str());
}

Outcome hundred_philosophers() {
  Check c;
  auto d = hl::dining(100, hl::DiningVariant::basic);
  auto x = hl::expand(d.net, d.interp);
  c.require(x.net.places().size() == 300, "300 places");
  c.require(x.net.transitions().size() == 200, "200 transitions");
  auto v = dining_weights(d.net);
  auto m = x.net.initial_marking();
  auto hm = hl::initial_marking(d.net, d.interp);
  c.require(v.apply(m) == 100, "initial value");
  for (int i = 1; i <= 99; i += 2) {
    const hl::Mode mode{{"x", hl::Value::element("p" + std::to_string(i))}};
    const auto& t = x.transition_for("pick-up", mode);
    if (!enabled(x.net, m, t)) {
      c.require(false, "pick-up p" + std::to_string(i));
      break;
    }
    m = fire(x.net, m, t);
    hm = hl::hl_fire(d.net, d.interp, hm, "pick-up", mode);
    c.require(x.to_elementary(hm) == m, "HL and expansion agree");
    c.require(v.apply(m) == 100, "invariant after p" + std::to_string(i));
  }
  const auto eaters = hm.bag("eating-phils").size();
  c.require(eaters == 50, "50 eaters");
  c.require(is_place_invariant(x.net, v), "2·eating + forks is an invariant");
  return c.done("300 places, 200 transitions, " + std::to_string(eaters) +
                " eaters, 2·eating + forks = 100 throughout");
}

Outcome determinism() {
  auto r = golden::check_all(kGoldenReorderings, false);
  Check c;
  for (const auto& n : r.mismatches) c.require(false, "golden " + n);
  for (const auto& n : r.unstable) c.require(false, "unstable " + n);
  for (const auto& n : r.reorder_sensitive) c.require(false, "reorder " + n);
  return c.done(std::to_string(r.cases) + " golden cases byte-identical across 2 runs and " +
                std::to_string(kGoldenReorderings) + " input reorderings");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"marking-equation round trip", marking_equation},
      {"bakery cycle", bakery_cycle},
      {"partial-order claims", partial_order},
      {"four-seasons concurrency", four_seasons},
      {"place invariants", invariants},
      {"composition associativity", associativity},
      {"light/fan synthesis", synthesis},
      {"HL/expansion oracle", hl_oracle},
      {"100 philosophers", hundred_philosophers},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  return failed;
}
