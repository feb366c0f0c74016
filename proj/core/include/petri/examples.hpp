#pragma once

#include <string>
#include <vector>

#include "petri/module.hpp"
#include "petri/net.hpp"
#include "petri/run.hpp"

/// Bundled example models in their textual form.
namespace petri::examples {

struct File {
  std::string name;  // suggested file name, e.g. "bakery.net"
  std::string text;
};

/// Example names accepted by files().
std::vector<std::string> names();

/// Files making up an example. Throws StructuralError for unknown names.
std::vector<File> files(const std::string& name);

Net bakery();
Net four_seasons();
Net light_fan();
std::vector<Run> bakery_steps();
std::vector<Run> light_fan_steps();
std::vector<Module> producer_chain();    // producer, broker, client
std::vector<Module> claim_settlement();  // A .. F
std::vector<Module> coffee_house();      // guest, waiter

}  // namespace petri::examples
