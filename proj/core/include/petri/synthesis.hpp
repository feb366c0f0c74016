#pragma once

#include <string>
#include <vector>

#include "petri/net.hpp"
#include "petri/run.hpp"

namespace petri {

/// Single-event run from explicit pre/post condition labels.
Run make_step(const TransitionId& t, const std::vector<PlaceId>& pre,
              const std::vector<PlaceId>& post);

/// Net obtained by merging all equally labeled conditions of the given
/// single-event steps into one place each. Places appear in order of first
/// occurrence; transitions in step order. Throws SynthesisError for
/// malformed steps or repeated transition labels.
Net synthesize(const std::vector<Run>& steps, const std::string& name = {});

/// Composes the steps named by `seq` (in order) after a module holding the
/// conditions of `m0`, and checks that the composite is a valid run of
/// synthesize(steps) from m0. An undefined composition yields false.
bool runs_round_trip(const std::vector<Run>& steps,
                     const std::vector<TransitionId>& seq, const Marking& m0);

}  // namespace petri
