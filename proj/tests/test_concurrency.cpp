#include <doctest.h>

#include "oracles.hpp"
#include "petri/concurrency.hpp"
#include "petri/error.hpp"
#include "petri/examples.hpp"

using namespace petri;

namespace {

Run rounds(const Net& net, const std::vector<TransitionId>& round, std::size_t k) {
  std::vector<TransitionId> seq;
  for (std::size_t i = 0; i < k; ++i) seq.insert(seq.end(), round.begin(), round.end());
  return unfold(net, net.initial_marking(), seq);
}

const std::vector<TransitionId> kSeasons{"t1", "t2", "t3", "t4"};

}  // namespace

TEST_CASE("co") {
  auto net = examples::four_seasons();
  auto run = unfold(net, net.initial_marking(), {"t1", "t2", "t3"});
  for (std::size_t c = 0; c < run.conditions().size(); ++c)
    if (run.conditions()[c] == "b1")
      CHECK(co(run, Occurrence::condition(c), Occurrence::event(1)));
  // A pre-condition and its event are ordered.
  CHECK_FALSE(co(run, Occurrence::condition(run.preset(0)[0]), Occurrence::event(0)));
  CHECK_FALSE(co(run, Occurrence::event(0), Occurrence::event(0)));
  CHECK_THROWS_AS(co(run, Occurrence::event(99), Occurrence::event(0)), StructuralError);

  Net twin("twin");
  twin.add_place("a");
  twin.add_place("b");
  twin.add_place("s", 1);
  twin.add_transition("split", Marking::of({"s"}), Marking::of({"a", "b"}));
  twin.add_transition("join", Marking::of({"a", "b"}), Marking::of({"s"}));
  auto r = unfold(twin, twin.initial_marking(), {"split", "join"});
  CHECK(co(r, Occurrence::condition(1), Occurrence::condition(2)));
}

TEST_CASE("co agrees with path search and is symmetric") {
  auto net = examples::bakery();
  auto run = rounds(net, {"bake", "supply-to-aide", "move-to-shop", "sell"}, 2);
  auto order = causal_order(run);
  for (std::size_t i = 0; i < run.size(); ++i)
    for (std::size_t j = 0; j < run.size(); ++j) {
      auto x = run.occurrence(i), y = run.occurrence(j);
      CHECK(co(order, x, y) == oracle::co(run, x, y));
      CHECK(co(order, x, y) == co(order, y, x));
      // co, <= and >= cover every pair.
      CHECK((co(order, x, y) || order.leq(x, y) || order.leq(y, x)));
    }
}

TEST_CASE("propositions_concurrent") {
  auto net = examples::four_seasons();
  auto run = rounds(net, kSeasons, 3);
  CHECK(propositions_concurrent(run, "a2", "b1"));
  CHECK_FALSE(propositions_concurrent(run, "a1", "a2"));
  CHECK_FALSE(propositions_concurrent(run, "a1", "a1"));
  CHECK_THROWS_AS(propositions_concurrent(unfold(net, net.initial_marking(), {}), "a1", "a2"),
                  RelationError);
}

TEST_CASE("place_transition_concurrent") {
  auto net = examples::four_seasons();
  auto run = rounds(net, kSeasons, 3);
  CHECK(place_transition_concurrent(run, "b1", "t2"));
  CHECK_FALSE(place_transition_concurrent(run, "a1", "t1"));
  CHECK_THROWS_AS(place_transition_concurrent(unfold(net, net.initial_marking(), {"t1"}),
                                              "b1", "t2"),
                  RelationError);

  auto lf = examples::light_fan();
  auto r = unfold(lf, lf.initial_marking(), {"turn-light-on", "fan-starts"});
  CHECK(place_transition_concurrent(r, "fan-off", "turn-light-on"));
}

TEST_CASE("relations agree with the oracle") {
  for (const auto& [net, round] :
       std::vector<std::pair<Net, std::vector<TransitionId>>>{
           {examples::four_seasons(), kSeasons},
           {examples::bakery(), {"bake", "supply-to-aide", "move-to-shop", "sell"}},
           {examples::light_fan(),
            {"turn-light-on", "fan-starts", "turn-light-off", "fan-stops"}}}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      auto run = rounds(net, round, k);
      auto s = concurrency_structure(net, run);
      for (const auto& p : net.places())
        for (const auto& q : net.places())
          if (p != q)
            CHECK(s.linked(p, q) == oracle::propositions_concurrent(run, p, q));
      for (const auto& p : net.places())
        for (const auto& t : net.transitions())
          CHECK(s.linked(p, t.id) == oracle::place_transition_concurrent(run, p, t.id));
    }
  }
}

TEST_CASE("four-seasons concurrency structure") {
  auto net = examples::four_seasons();
  auto s3 = concurrency_structure(net, rounds(net, kSeasons, 3));
  CHECK(s3.nodes.size() == 12);
  CHECK(is_connected(s3));
  CHECK(concurrency_structure(net, rounds(net, kSeasons, 2)) == s3);
  CHECK(concurrency_structure(net, rounds(net, kSeasons, 4)) == s3);
  for (const auto& [a, b] : s3.links) CHECK(a != b);
  // One round leaves every condition of some places uncut.
  CHECK_FALSE(is_connected(concurrency_structure(net, rounds(net, kSeasons, 1))));

  // Each transition is linked only through the inner place spanning it.
  for (int i = 1; i <= 4; ++i) {
    auto t = "t" + std::to_string(i);
    std::vector<std::string> partners;
    for (const auto& [a, b] : s3.links)
      if (b == t) partners.push_back(a);
    CHECK(partners == std::vector<std::string>{"b" + std::to_string((i + 2) % 4 + 1)});
  }
}

TEST_CASE("removing an inner place isolates a transition") {
  auto full = examples::four_seasons();
  for (int i = 1; i <= 4; ++i) {
    const auto drop = "b" + std::to_string(i);
    Net net("reduced");
    for (const auto& p : full.places())
      if (p != drop) net.add_place(p, full.initial_marking()[p]);
    for (const auto& t : full.transitions()) {
      Marking pre, post;
      for (const auto& [p, n] : t.pre)
        if (p != drop) pre.add(p, n);
      for (const auto& [p, n] : t.post)
        if (p != drop) post.add(p, n);
      net.add_transition(t.id, pre, post);
    }
    auto s = concurrency_structure(net, rounds(net, kSeasons, 3));
    CHECK_FALSE(is_connected(s));
  }
}

TEST_CASE("small structures") {
  auto bakery = examples::bakery();
  auto step = step_run(bakery, "bake");
  auto s = concurrency_structure(bakery, step);
  CHECK(s.links.empty());

  CHECK(is_connected(ConcurrencyStructure{{"x"}, {}}));
  CHECK_FALSE(is_connected(ConcurrencyStructure{{"x", "y"}, {}}));
  CHECK(is_connected(ConcurrencyStructure{}));

  Run bogus;
  bogus.add_event("bake");
  CHECK_THROWS_AS(concurrency_structure(bakery, bogus), StructuralError);
}

TEST_CASE("bakery over two rounds") {
  auto net = examples::bakery();
  auto run = rounds(net, {"bake", "supply-to-aide", "move-to-shop", "sell"}, 2);
  auto s = concurrency_structure(net, run);
  CHECK(s.linked("ready-to-bake", "bread-in-shop") ==
        oracle::propositions_concurrent(run, "ready-to-bake", "bread-in-shop"));
}
