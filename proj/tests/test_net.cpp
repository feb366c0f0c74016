#include <doctest.h>

#include "generators.hpp"
#include "petri/error.hpp"
#include "petri/examples.hpp"
#include "petri/net.hpp"

using namespace petri;

TEST_CASE("markings are extensional multisets") {
  Marking m{{"p", 1}, {"q", 0}};
  CHECK(m == Marking{{"p", 1}});
  CHECK(m["q"] == 0);
  CHECK(m.support_size() == 1);
  m.add("q", 2);
  CHECK(to_string(m) == "[p:1, q:2]");
  CHECK(m.total() == 3);
  CHECK(m.covers(Marking{{"q", 2}}));
  CHECK_FALSE(m.covers(Marking{{"r", 1}}));
  CHECK_THROWS_AS(m.add("p", -2), StructuralError);
  CHECK_THROWS_AS(m.set("p", -1), StructuralError);
  CHECK_THROWS_AS((Marking{{"p", 1}} - Marking{{"p", 2}}), StructuralError);
  CHECK(to_string(Marking{}) == "[]");
  CHECK(to_string(Marking{{"light on", 1}}) == "[\"light on\":1]");
  CHECK(Marking::of({"a", "a", "b"}) == Marking{{"a", 2}, {"b", 1}});
}

TEST_CASE("net construction checks identifiers") {
  Net net("n");
  net.add_place("p");
  CHECK_THROWS_AS(net.add_place("p"), StructuralError);
  net.add_transition("t", Marking::of({"p"}));
  CHECK_THROWS_AS(net.add_place("t"), StructuralError);
  CHECK_THROWS_AS(net.add_transition("p"), StructuralError);
  CHECK_THROWS_AS(net.add_transition("u", Marking::of({"missing"})), StructuralError);
  CHECK_THROWS_AS(net.set_initial("missing", 1), StructuralError);
  CHECK(net.place_index("p") == 0);
  CHECK_THROWS_AS(net.place_index("zz"), StructuralError);
  CHECK_THROWS_AS(net.transition("zz"), StructuralError);
}

TEST_CASE("enabled") {
  auto lf = examples::light_fan();
  const Marking m{{"light-off", 1}, {"fan-off", 1}};
  CHECK(enabled(lf, m, "turn-light-on"));
  CHECK_FALSE(enabled(lf, m, "fan-starts"));
  CHECK_THROWS_AS(enabled(lf, m, "nope"), StructuralError);

  Net net("n");
  net.add_place("p");
  net.add_transition("source", {}, Marking::of({"p"}));
  CHECK(enabled(net, {}, "source"));
  CHECK(enabled_transitions(net, {}) == std::vector<TransitionId>{"source"});
}

TEST_CASE("fire") {
  auto bakery = examples::bakery();
  const Marking m0{{"ready-to-bake", 1}, {"aide-free", 1}, {"shop-empty", 1}};
  CHECK(bakery.initial_marking() == m0);
  CHECK(fire(bakery, m0, "bake") ==
        Marking{{"on-counter", 1}, {"aide-free", 1}, {"shop-empty", 1}});

  auto seasons = examples::four_seasons();
  CHECK(seasons.initial_marking() == Marking{{"a1", 1}, {"b3", 1}, {"b4", 1}});
  CHECK(fire(seasons, seasons.initial_marking(), "t1") ==
        Marking{{"a2", 1}, {"b1", 1}, {"b4", 1}});

  Net loop("loop");
  loop.add_place("p", 1);
  loop.add_transition("t", Marking::of({"p"}), Marking::of({"p"}));
  CHECK(fire(loop, loop.initial_marking(), "t") == loop.initial_marking());

  try {
    fire(bakery, m0, "sell");
    FAIL("expected an enabling error");
  } catch (const EnablingError& e) {
    CHECK(e.deficient_places() == std::vector<std::string>{"bread-in-shop"});
    CHECK(std::string(e.what()).find("bread-in-shop") != std::string::npos);
  }
}

TEST_CASE("unfire") {
  auto bakery = examples::bakery();
  const auto m0 = bakery.initial_marking();
  CHECK(unfire(bakery, fire(bakery, m0, "bake"), "bake") == m0);

  auto lf = examples::light_fan();
  CHECK(unfire(lf, {{"light-on", 1}, {"fan-on", 1}}, "fan-starts") ==
        Marking{{"light-on", 1}, {"fan-off", 1}});
  CHECK_THROWS_AS(unfire(lf, {}, "turn-light-on"), ReversalError);

  Net net("n");
  net.add_place("p");
  net.add_transition("sink", Marking::of({"p"}), {});
  CHECK(unfire(net, {}, "sink") == Marking{{"p", 1}});
}

TEST_CASE("fire_sequence") {
  auto bakery = examples::bakery();
  const auto m0 = bakery.initial_marking();
  auto trace = fire_sequence(bakery, m0, {"bake", "supply-to-aide", "move-to-shop", "sell"});
  REQUIRE(trace.size() == 5);
  CHECK(trace.back() == m0);
  CHECK(fire_sequence(bakery, m0, {}) == std::vector<Marking>{m0});

  auto seasons = examples::four_seasons();
  CHECK(fire_sequence(seasons, seasons.initial_marking(), {"t1", "t2", "t3", "t4"}).back() ==
        seasons.initial_marking());

  try {
    fire_sequence(bakery, m0, {"bake", "bake"});
    FAIL("expected an enabling error");
  } catch (const EnablingError& e) {
    REQUIRE(e.index().has_value());
    CHECK(*e.index() == 1);
  }
}

TEST_CASE("marking_graph") {
  auto seasons = examples::four_seasons();
  auto g = marking_graph(seasons, seasons.initial_marking(), 100);
  CHECK(g.nodes.size() == 4);
  CHECK(g.edges.size() == 4);
  CHECK_FALSE(g.truncated);
  CHECK(g.initial() == seasons.initial_marking());

  Net empty("empty");
  empty.add_place("p", 1);
  auto single = marking_graph(empty, empty.initial_marking(), 10);
  CHECK(single.nodes.size() == 1);
  CHECK(single.edges.empty());

  auto lf = examples::light_fan();
  auto g2 = marking_graph(lf, {{"light-off", 1}, {"fan-off", 1}}, 100);
  CHECK(g2.nodes.size() == 4);
  CHECK_FALSE(g2.truncated);
  for (const auto& light : {"light-off", "light-on"})
    for (const auto& fan : {"fan-off", "fan-on"})
      CHECK(g2.find(Marking{{light, 1}, {fan, 1}}).has_value());

  auto cut = marking_graph(lf, lf.initial_marking(), 2);
  CHECK(cut.truncated);
  CHECK(cut.nodes.size() == 2);
  for (const auto& e : cut.edges) {
    CHECK(e.source < cut.nodes.size());
    CHECK(e.target < cut.nodes.size());
    auto step = cut.step(e);
    CHECK(fire(lf, step.source, step.transition) == step.target);
  }

  Net grow("grow");
  grow.add_place("p");
  grow.add_transition("t", {}, Marking::of({"p"}));
  auto unbounded = marking_graph(grow, {}, 7);
  CHECK(unbounded.truncated);
  CHECK(unbounded.nodes.size() == 7);
}

TEST_CASE("marking_graph is closed and independent of a sufficient cap") {
  gen::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    auto net = gen::random_net(rng, 4, 3);
    auto g = marking_graph(net, net.initial_marking(), 200);
    if (g.truncated) continue;
    CHECK(marking_graph(net, net.initial_marking(), 5000).nodes == g.nodes);
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
      for (const auto& t : enabled_transitions(net, g.nodes[n]))
        CHECK(g.find(fire(net, g.nodes[n], t)).has_value());
  }
}

TEST_CASE("shortest_cycle") {
  auto seasons = examples::four_seasons();
  auto c = shortest_cycle(seasons, seasons.initial_marking(), 100);
  REQUIRE(c.has_value());
  CHECK(*c == std::vector<TransitionId>{"t1", "t2", "t3", "t4"});

  auto lf = examples::light_fan();
  auto c2 = shortest_cycle(lf, lf.initial_marking(), 100);
  REQUIRE(c2.has_value());
  CHECK(*c2 == std::vector<TransitionId>{"turn-light-on", "turn-light-off"});

  Net line("line");
  line.add_place("p", 1);
  line.add_place("q");
  line.add_transition("t", Marking::of({"p"}), Marking::of({"q"}));
  CHECK_FALSE(shortest_cycle(line, line.initial_marking(), 100).has_value());
}

TEST_CASE("fire then unfire is the identity on random nets") {
  gen::Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto net = gen::random_net(rng);
    auto m = net.initial_marking();
    for (const auto& t : enabled_transitions(net, m)) {
      auto next = fire(net, m, t);
      for (const auto& [p, n] : next) CHECK(n >= 0);
      CHECK(unfire(net, next, t) == m);
    }
  }
}

TEST_CASE("equivalent ignores declaration order") {
  Net a("a"), b("b");
  a.add_place("p", 1);
  a.add_place("q");
  a.add_transition("t", Marking::of({"p"}), Marking::of({"q"}));
  b.add_place("q");
  b.add_place("p", 1);
  b.add_transition("t", Marking::of({"p"}), Marking::of({"q"}));
  CHECK(equivalent(a, b));
  CHECK_FALSE(a == b);
  b.set_initial("q", 1);
  CHECK_FALSE(equivalent(a, b));
  CHECK(a.arc_count() == 2);
  CHECK(examples::light_fan().arc_count() == 12);
}
