#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "petri/error.hpp"
#include "petri/examples.hpp"
#include "petri/run.hpp"

using namespace petri;

namespace {

const std::vector<TransitionId> kBakeryTwice{"bake", "supply-to-aide", "move-to-shop", "sell",
                                             "bake"};

Occurrence ev(std::size_t i) { return Occurrence::event(i); }
Occurrence cond(std::size_t i) { return Occurrence::condition(i); }

}  // namespace

TEST_CASE("step_run") {
  auto bakery = examples::bakery();
  auto bake = step_run(bakery, "bake");
  CHECK(bake.events() == std::vector<TransitionId>{"bake"});
  CHECK(bake.conditions().size() == 2);

  auto lf = examples::light_fan();
  auto fs = step_run(lf, "fan-starts");
  CHECK(fs.events().size() == 1);
  CHECK(fs.conditions().size() == 4);
  CHECK(fs.initial_labels() == Marking{{"light-on", 1}, {"fan-off", 1}});
  CHECK(fs.final_labels() == Marking{{"light-on", 1}, {"fan-on", 1}});
  CHECK(is_valid_run(lf, fs.initial_labels(), fs));

  Net net("n");
  net.add_transition("t");
  auto empty = step_run(net, "t");
  CHECK(empty.events().size() == 1);
  CHECK(empty.conditions().empty());
  CHECK_THROWS_AS(step_run(net, "u"), StructuralError);
}

TEST_CASE("unfold the bakery twice") {
  auto bakery = examples::bakery();
  auto run = unfold(bakery, bakery.initial_marking(), kBakeryTwice);
  CHECK(is_valid_run(bakery, bakery.initial_marking(), run));
  REQUIRE(run.events() == kBakeryTwice);
  auto order = causal_order(run);
  // e4 is the second bake.
  CHECK(order.unordered(ev(4), ev(2)));
  CHECK(order.unordered(ev(4), ev(3)));
  CHECK(order.less(ev(0), ev(1)));
  CHECK(order.less(ev(1), ev(4)));
  CHECK(order.less(ev(0), ev(4)));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(order.leq(ev(i), ev(j)) == (i == j || oracle::reaches(run, ev(i), ev(j))));
  CHECK_FALSE(order.less(ev(2), ev(2)));
}

TEST_CASE("unfold edge cases") {
  auto bakery = examples::bakery();
  auto empty = unfold(bakery, bakery.initial_marking(), {});
  CHECK(empty.events().empty());
  CHECK(empty.conditions().size() == 3);
  CHECK(empty.initial_labels() == bakery.initial_marking());
  try {
    unfold(bakery, bakery.initial_marking(), {"bake", "sell"});
    FAIL("expected an enabling error");
  } catch (const EnablingError& e) {
    CHECK(e.index() == std::optional<std::size_t>{1});
  }
  CHECK(unfold(bakery, bakery.initial_marking(), kBakeryTwice) ==
        unfold(bakery, bakery.initial_marking(), kBakeryTwice));
}

TEST_CASE("unfold four-seasons: b1 is unordered with t2") {
  auto net = examples::four_seasons();
  auto run = unfold(net, net.initial_marking(), {"t1", "t2", "t3"});
  std::size_t b1 = run.conditions().size();
  for (std::size_t c = 0; c < run.conditions().size(); ++c)
    if (run.conditions()[c] == "b1") b1 = c;
  REQUIRE(b1 < run.conditions().size());
  CHECK(oracle::co(run, cond(b1), ev(1)));
  CHECK(causal_order(run).unordered(cond(b1), ev(1)));
  CHECK(causal_order(run).less(cond(b1), ev(2)));
}

TEST_CASE("unfold consumes the oldest condition") {
  Net net("n");
  net.add_place("p", 1);
  net.add_place("q");
  net.add_transition("make", {}, Marking::of({"p"}));
  net.add_transition("take", Marking::of({"p"}), Marking::of({"q"}));
  auto run = unfold(net, net.initial_marking(), {"make", "take"});
  // c0 is the initial p, the made p is younger.
  CHECK(run.preset(1) == std::vector<std::size_t>{0});
}

TEST_CASE("is_valid_run") {
  auto lf = examples::light_fan();
  auto m0 = lf.initial_marking();
  auto cycle = unfold(lf, m0, {"turn-light-on", "fan-starts", "turn-light-off", "fan-stops"});
  CHECK(is_valid_run(lf, m0, cycle));
  CHECK_FALSE(is_valid_run(lf, Marking{{"light-off", 1}}, cycle));

  Run branching;
  auto c = branching.add_condition("light-off");
  auto e1 = branching.add_event("turn-light-on");
  auto e2 = branching.add_event("turn-light-on");
  branching.add_input(c, e1);
  branching.add_input(c, e2);
  branching.add_output(e1, branching.add_condition("light-on"));
  branching.add_output(e2, branching.add_condition("light-on"));
  auto check = is_valid_run(lf, {{"light-off", 1}}, branching);
  CHECK_FALSE(check.valid);
  CHECK_FALSE(check.diagnostics.empty());

  Run mislabeled;
  auto c0 = mislabeled.add_condition("light-on");
  auto e = mislabeled.add_event("turn-light-on");
  mislabeled.add_input(c0, e);
  mislabeled.add_output(e, mislabeled.add_condition("light-off"));
  CHECK_FALSE(is_valid_run(lf, {{"light-on", 1}}, mislabeled));

  Run unknown;
  unknown.add_event("nope");
  CHECK_FALSE(is_valid_run(lf, {}, unknown));
}

TEST_CASE("causal_order rejects cycles") {
  Run cyclic;
  auto c0 = cyclic.add_condition("p");
  auto c1 = cyclic.add_condition("p");
  auto e0 = cyclic.add_event("t");
  auto e1 = cyclic.add_event("t");
  cyclic.add_input(c0, e0);
  cyclic.add_output(e0, c1);
  cyclic.add_input(c1, e1);
  cyclic.add_output(e1, c0);
  CHECK_THROWS_AS(causal_order(cyclic), StructuralError);
  Net net("n");
  net.add_place("p");
  net.add_transition("t", Marking::of({"p"}), Marking::of({"p"}));
  CHECK_FALSE(is_valid_run(net, {}, cyclic));
}

TEST_CASE("causal order basics") {
  auto bakery = examples::bakery();
  auto step = step_run(bakery, "bake");
  auto order = causal_order(step);
  CHECK(order.less(cond(0), ev(0)));
  CHECK(order.less(ev(0), cond(1)));
  CHECK(order.less(cond(0), cond(1)));

  Net net("n");
  net.add_place("a", 1);
  net.add_place("b", 1);
  net.add_transition("t", Marking::of({"a", "b"}), {});
  auto run = unfold(net, net.initial_marking(), {"t"});
  CHECK(causal_order(run).unordered(cond(0), cond(1)));
}

TEST_CASE("linearizations") {
  auto bakery = examples::bakery();
  auto run = unfold(bakery, bakery.initial_marking(), kBakeryTwice);
  auto lin = linearizations(run, 100);
  CHECK_FALSE(lin.truncated);
  CHECK(lin.sequences.size() == 3);
  CHECK(lin.sequences == oracle::linear_extensions(run));
  CHECK(event_labels(run, lin.sequences[0]) == kBakeryTwice);

  auto cut = linearizations(run, 2);
  CHECK(cut.truncated);
  CHECK(cut.sequences.size() == 2);

  auto chain = unfold(bakery, bakery.initial_marking(), {"bake", "supply-to-aide"});
  CHECK(linearizations(chain, 10).sequences.size() == 1);

  Net net("n");
  net.add_place("a", 1);
  net.add_place("b", 1);
  net.add_transition("u", Marking::of({"a"}), {});
  net.add_transition("v", Marking::of({"b"}), {});
  auto two = unfold(net, net.initial_marking(), {"u", "v"});
  CHECK(linearizations(two, 10).sequences.size() == 2);
}

TEST_CASE("unfold and replay on random nets") {
  gen::Rng rng(31);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto net = gen::random_net(rng, 5, 4);
    auto m0 = net.initial_marking();
    auto seq = gen::random_trace(rng, net, m0, 6);
    auto run = unfold(net, m0, seq);
    CHECK(is_valid_run(net, m0, run));
    const auto final_marking = fire_sequence(net, m0, seq).back();
    // Label conservation.
    CHECK(run.final_labels() == final_marking);
    auto lin = linearizations(run, 50);
    if (!lin.truncated && seq.size() <= 6)
      CHECK(lin.sequences == oracle::linear_extensions(run));
    for (const auto& s : lin.sequences)
      CHECK(fire_sequence(net, m0, event_labels(run, s)).back() == final_marking);
    ++checked;
  }
  CHECK(checked == 200);
}
