#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "petri/hlnet.hpp"
#include "petri/module.hpp"
#include "petri/net.hpp"
#include "petri/run.hpp"

/// Line-oriented textual formats. `#` starts a comment, identifiers may be
/// double-quoted to contain spaces or punctuation.
///
///     net bakery
///     place ready-to-bake init 1
///     place on-counter
///     trans bake
///       pre ready-to-bake
///       post on-counter
///
/// Modules add `left <label> = <element>`, `right <label> = <element>` and
/// `label <element> = <label>` lines. Step files hold `step <t>` blocks
/// with `pre`/`post` label lists. High-level nets use `universe`,
/// `function`, `const`, `hlplace` and `hltrans` declarations.
namespace petri {

/// Throws ParseError (file, line, identifier) on malformed input.
Net parse_net(std::string_view text, const std::string& source = {});
Module parse_module(std::string_view text, const std::string& source = {});
std::vector<Run> parse_steps(std::string_view text, const std::string& source = {});

/// Emits declarations in stored order; arc lists follow place order with
/// multiplicities written as repetitions. Module face lines are sorted by
/// label.
std::string serialize(const Net& net);
std::string serialize(const Module& module);
std::string serialize_steps(const std::vector<Run>& steps);

struct HLDocument {
  hl::HLNet net;
  hl::Interpretation interp;
};

HLDocument parse_hlnet(std::string_view text, const std::string& source = {});
std::string serialize(const hl::HLNet& net, const hl::Interpretation& interp);

/// Parses a term such as `elm(S(x))` against no particular net.
hl::Term parse_term(std::string_view text);

/// Parses `x=p1, Y={f1, f2}` into a mode; set members are put in universe
/// order.
hl::Mode parse_mode(const hl::HLNet& net, std::string_view text);

/// Parses `p:2, q` (count defaults to 1) into a marking.
Marking parse_marking(std::string_view text);

/// Splits a comma-separated identifier list; quoting is honored.
std::vector<std::string> parse_id_list(std::string_view text);

}  // namespace petri
