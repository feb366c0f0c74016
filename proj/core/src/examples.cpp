#include "petri/examples.hpp"

#include "petri/error.hpp"
#include "petri/hlnet.hpp"
#include "petri/text.hpp"

namespace petri::examples {

namespace {

constexpr const char* kBakery = R"(# Bread is baked, handed to the aide, moved to the shop and sold.
net bakery
place ready-to-bake init 1
place on-counter
place aide-free init 1
place aide-has-bread
place shop-empty init 1
place bread-in-shop
trans bake
  pre ready-to-bake
  post on-counter
trans supply-to-aide
  pre on-counter, aide-free
  post ready-to-bake, aide-has-bread
trans move-to-shop
  pre aide-has-bread, shop-empty
  post aide-free, bread-in-shop
trans sell
  pre bread-in-shop
  post shop-empty
)";

constexpr const char* kBakerySteps = R"(# The four local steps of the bakery.
step bake
  pre ready-to-bake
  post on-counter
step supply-to-aide
  pre on-counter, aide-free
  post ready-to-bake, aide-has-bread
step move-to-shop
  pre aide-has-bread, shop-empty
  post aide-free, bread-in-shop
step sell
  pre bread-in-shop
  post shop-empty
)";

// Outer places a1..a4 are the seasons, inner places b1..b4 each span two
// transitions: b_i is produced by t_i and consumed by t_(i+2).
constexpr const char* kFourSeasons = R"(# Four seasons: t1..t4 occur cyclically.
net four-seasons
place a1 init 1
place a2
place a3
place a4
place b1
place b2
place b3 init 1
place b4 init 1
trans t1
  pre a1, b3
  post a2, b1
trans t2
  pre a2, b4
  post a3, b2
trans t3
  pre a3, b1
  post a4, b3
trans t4
  pre a4, b2
  post a1, b4
)";

constexpr const char* kLightFan = R"(# Bathroom light with a delayed fan.
net light-fan
place light-off init 1
place light-on
place fan-off init 1
place fan-on
trans turn-light-on
  pre light-off
  post light-on
trans turn-light-off
  pre light-on
  post light-off
trans fan-starts
  pre light-on, fan-off
  post light-on, fan-on
trans fan-stops
  pre light-off, fan-on
  post light-off, fan-off
)";

constexpr const char* kLightFanSteps = R"(# The four local steps of the light/fan system.
step turn-light-on
  pre light-off
  post light-on
step turn-light-off
  pre light-on
  post light-off
step fan-starts
  pre light-on, fan-off
  post light-on, fan-on
step fan-stops
  pre light-off, fan-on
  post light-off, fan-off
)";

constexpr const char* kProducer = R"(# Negotiates offers with the broker, ships products to the client.
net producer
place p-idle init 1
place p-negotiating
place p-producing
place go
place retry
place product
trans negotiate
  pre p-idle
  post p-negotiating
trans produce
  pre p-negotiating, go
  post p-producing
trans renegotiate
  pre p-negotiating, retry
  post p-idle
trans ship
  pre p-producing
  post p-idle, product
right negotiate = negotiate
right go = go
right retry = retry
right product = product
)";

constexpr const char* kBroker = R"(# Presents offers to the client and reports the answer to the producer.
net broker
place b-idle init 1
place b-offering
place b-waiting
place go
place retry
place offer
place accepted
place rejected
trans negotiate
  pre b-idle
  post b-offering
trans present
  pre b-offering
  post b-waiting, offer
trans confirm
  pre b-waiting, accepted
  post b-idle, go
trans decline
  pre b-waiting, rejected
  post b-idle, retry
left negotiate = negotiate
left go = go
left retry = retry
right offer = offer
right accepted = accepted
right rejected = rejected
)";

constexpr const char* kClient = R"(# Accepts or rejects offers and receives the product.
net client
place c-idle init 1
place c-waiting
place c-done
place offer
place accepted
place rejected
place product
trans accept
  pre c-idle, offer
  post c-waiting, accepted
trans reject
  pre c-idle, offer
  post c-idle, rejected
trans receive
  pre c-waiting, product
  post c-done
left offer = offer
left accepted = accepted
left rejected = rejected
left product = product
)";

constexpr const char* kClaimA = R"(# Driver reports the accident.
net A
place driver-start init 1
place driver-waiting
place report
trans report-accident
  pre driver-start
  post driver-waiting, report
right report = report
right driver-waiting = driver-waiting
)";

constexpr const char* kClaimB = R"(# Insurance receives the report.
net B
place insurance-start init 1
place report
place insurance-busy
trans receive-report
  pre insurance-start, report
  post insurance-busy
left report = report
right insurance-busy = insurance-busy
)";

constexpr const char* kClaimC = R"(# Driver hires a car, possibly several times.
net C
place driver-waiting
trans hire-car
  pre driver-waiting
  post driver-waiting
left driver-waiting = driver-waiting
right driver-waiting = driver-waiting
)";

constexpr const char* kClaimD = R"(# Insurance solicits more information.
net D
place insurance-busy
place info-request
trans solicit-information
  pre insurance-busy
  post insurance-busy, info-request
left insurance-busy = insurance-busy
right insurance-busy = insurance-busy
right info-request = info-request
)";

constexpr const char* kClaimE = R"(# Insurance decides.
net E
place insurance-busy
place insurance-done
place decision
trans decide
  pre insurance-busy
  post insurance-done, decision
left insurance-busy = insurance-busy
right decision = decision
)";

constexpr const char* kClaimF = R"(# Driver answers requests and is informed about the decision.
net F
place driver-waiting
place info-request
place decision
place driver-done
trans answer-request
  pre driver-waiting, info-request
  post driver-waiting
trans receive-decision
  pre driver-waiting, decision
  post driver-done
left driver-waiting = driver-waiting
left info-request = info-request
left decision = decision
)";

constexpr const char* kGuest = R"(# A guest who, once greeted, orders coffee or cake, or leaves.
net guest
place g-outside init 1
place g-seated
place g-waiting
place g-served
place arrival
place greeting
place coffee-order
place cake-order
place goodbye
place served
place payment
trans enter
  pre g-outside
  post g-seated, arrival
trans order-coffee
  pre g-seated, greeting
  post g-waiting, coffee-order
trans order-cake
  pre g-seated, greeting
  post g-waiting, cake-order
trans leave
  pre g-seated, greeting
  post g-outside, goodbye
trans eat
  pre g-waiting, served
  post g-served
trans pay
  pre g-served
  post g-outside, payment
right arrival = arrival
right greeting = greeting
right coffee-order = coffee-order
right cake-order = cake-order
right goodbye = goodbye
right served = served
right payment = payment
)";

constexpr const char* kWaiter = R"(# A waiter reacting to each of the guest's choices.
net waiter
place w-idle init 1
place w-attending
place w-busy
place w-collecting
place arrival
place greeting
place coffee-order
place cake-order
place goodbye
place served
place payment
trans greet
  pre w-idle, arrival
  post w-attending, greeting
trans brew-coffee
  pre w-attending, coffee-order
  post w-busy
trans cut-cake
  pre w-attending, cake-order
  post w-busy
trans bid-farewell
  pre w-attending, goodbye
  post w-idle
trans serve
  pre w-busy
  post w-collecting, served
trans collect
  pre w-collecting, payment
  post w-idle
left arrival = arrival
left greeting = greeting
left coffee-order = coffee-order
left cake-order = cake-order
left goodbye = goodbye
left served = served
left payment = payment
)";

std::vector<Module> modules(const std::vector<File>& fs) {
  std::vector<Module> out;
  for (const auto& f : fs) out.push_back(parse_module(f.text, f.name));
  return out;
}

}  // namespace

std::vector<std::string> names() {
  return {"bakery",          "bakery-steps",     "four-seasons",
          "light-fan",       "light-fan-steps",  "producer-chain",
          "claim-settlement", "coffee-house",    "dining",
          "dining-shared-sets", "dining-free-sets"};
}

std::vector<File> files(const std::string& name) {
  if (name == "bakery") return {{"bakery.net", kBakery}};
  if (name == "bakery-steps") return {{"bakery.steps", kBakerySteps}};
  if (name == "four-seasons") return {{"four-seasons.net", kFourSeasons}};
  if (name == "light-fan") return {{"light-fan.net", kLightFan}};
  if (name == "light-fan-steps") return {{"light-fan.steps", kLightFanSteps}};
  if (name == "producer-chain")
    return {{"producer.mod", kProducer}, {"broker.mod", kBroker}, {"client.mod", kClient}};
  if (name == "claim-settlement")
    return {{"claim-a.mod", kClaimA}, {"claim-b.mod", kClaimB}, {"claim-c.mod", kClaimC},
            {"claim-d.mod", kClaimD}, {"claim-e.mod", kClaimE}, {"claim-f.mod", kClaimF}};
  if (name == "coffee-house") return {{"guest.mod", kGuest}, {"waiter.mod", kWaiter}};
  if (name == "dining") {
    auto m = hl::dining(5, hl::DiningVariant::basic);
    return {{"dining.hl", serialize(m.net, m.interp)}};
  }
  if (name == "dining-shared-sets") {
    auto m = hl::dining(5, hl::DiningVariant::shared_sets);
    return {{"dining-shared-sets.hl", serialize(m.net, m.interp)}};
  }
  if (name == "dining-free-sets") {
    auto m = hl::dining(3, hl::DiningVariant::free_sets);
    return {{"dining-free-sets.hl", serialize(m.net, m.interp)}};
  }
  throw StructuralError("unknown example '" + name + "'");
}

Net bakery() { return parse_net(kBakery, "bakery.net"); }
Net four_seasons() { return parse_net(kFourSeasons, "four-seasons.net"); }
Net light_fan() { return parse_net(kLightFan, "light-fan.net"); }
std::vector<Run> bakery_steps() { return parse_steps(kBakerySteps, "bakery.steps"); }
std::vector<Run> light_fan_steps() { return parse_steps(kLightFanSteps, "light-fan.steps"); }
std::vector<Module> producer_chain() { return modules(files("producer-chain")); }
std::vector<Module> claim_settlement() { return modules(files("claim-settlement")); }
std::vector<Module> coffee_house() { return modules(files("coffee-house")); }

}  // namespace petri::examples
