#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "petri/algebra.hpp"
#include "petri/concurrency.hpp"
#include "petri/dot.hpp"
#include "petri/error.hpp"
#include "petri/examples.hpp"
#include "petri/hlnet.hpp"
#include "petri/module.hpp"
#include "petri/run.hpp"
#include "petri/synthesis.hpp"
#include "petri/text.hpp"

namespace petri::cli {

namespace {

constexpr std::size_t kDefaultGraphCap = 10000;
constexpr std::size_t kDefaultLinearizationCap = 1000;
constexpr std::size_t kDefaultModeCap = 100000;
constexpr std::size_t kCycleSearchCap = 100000;

// Unreadable input files are reported like parse errors.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Module files are accepted wherever a plain net is expected.
Net load_net(const std::string& path) {
  auto text = read_file(path);
  if (has_suffix(path, ".mod")) return parse_module(text, path).net;
  return parse_net(text, path);
}

Marking start_marking(const Net& net, const std::string& text) {
  if (text.empty()) return net.initial_marking();
  Marking m = parse_marking(text);
  for (const auto& [p, n] : m)
    if (!net.has_place(p)) throw StructuralError("unknown place '" + p + "'");
  return m;
}

std::vector<TransitionId> sequence(const Net& net, const std::string& text) {
  auto seq = parse_id_list(text);
  for (const auto& t : seq)
    if (!net.has_transition(t)) throw StructuralError("unknown transition '" + t + "'");
  return seq;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

InvariantVector parse_weights(const Net& net, const std::string& text) {
  InvariantVector v;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    item = trim(item);
    if (item.empty()) continue;
    auto colon = item.rfind(':');
    std::string place = trim(item.substr(0, colon));
    Count w = 1;
    if (colon != std::string::npos) {
      auto num = trim(item.substr(colon + 1));
      std::size_t used = 0;
      try {
        w = std::stoll(num, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != num.size())
        throw StructuralError("bad weight '" + num + "' for place '" + place + "'");
    }
    if (!net.has_place(place)) throw StructuralError("unknown place '" + place + "'");
    if (w != 0) v.weights[place] += w;
  }
  return v;
}

struct HLStep {
  std::string transition;
  hl::Mode mode;
};

HLStep parse_hl_step(const hl::HLNet& net, const std::string& text) {
  auto colon = text.find(':');
  std::string t = text.substr(0, colon);
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  net.transition(t);
  std::string mode = colon == std::string::npos ? "" : text.substr(colon + 1);
  return {t, parse_mode(net, mode)};
}

hl::HLMarking replay(const HLDocument& doc, const std::vector<std::string>& steps) {
  auto m = hl::initial_marking(doc.net, doc.interp);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto step = parse_hl_step(doc.net, steps[i]);
    try {
      m = hl::hl_fire(doc.net, doc.interp, m, step.transition, step.mode);
    } catch (const EnablingError& e) {
      throw EnablingError("step " + std::to_string(i + 1) + ": " + e.what(),
                          e.deficient_places(), i);
    }
  }
  return m;
}

int exit_code_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
      return kParse;
    case ErrorKind::capacity:
      return kCapExceeded;
    default:
      return kSemantic;
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Petri net modeling toolkit", "petri"};
  app.require_subcommand(1);

  std::string file, seq, marking, weights, round, init, name, trans, out_dir;
  std::vector<std::string> files, hl_steps;
  std::size_t cap = 0, rounds = 3;
  bool dot = false, text = false;

  auto* show = app.add_subcommand("show", "Render a net, module, step set or HL net as DOT");
  show->add_option("file", file, "Input file")->required();
  show->add_flag("--text", text, "Print the canonical textual form instead");

  auto* fire_cmd = app.add_subcommand("fire", "Fire a sequence and print the marking trace");
  fire_cmd->add_option("file", file)->required();
  fire_cmd->add_option("--seq", seq, "Comma-separated transitions")->required();
  fire_cmd->add_option("--marking", marking, "Start marking, e.g. \"p:2, q\"");

  auto* graph = app.add_subcommand("graph", "Breadth-first marking graph");
  graph->add_option("file", file)->required();
  graph->add_option("--cap", cap, "Maximum number of markings")->default_val(kDefaultGraphCap);
  graph->add_option("--marking", marking);
  graph->add_flag("--dot", dot);

  auto* unfold_cmd = app.add_subcommand("unfold", "Distributed run of a sequence as DOT");
  unfold_cmd->add_option("file", file)->required();
  unfold_cmd->add_option("--seq", seq)->required();
  unfold_cmd->add_option("--marking", marking);

  auto* invariants = app.add_subcommand("invariants", "Basis of place invariants");
  invariants->add_option("file", file)->required();

  auto* check = app.add_subcommand("check-invariant", "Check a weighting along a sequence");
  check->add_option("file", file)->required();
  check->add_option("--weights", weights, "e.g. \"a:1, b:2\"")->required();
  check->add_option("--seq", seq);
  check->add_option("--marking", marking);

  auto* compose_cmd = app.add_subcommand("compose", "Compose modules left to right");
  compose_cmd->add_option("files", files, "Module files")->required();
  compose_cmd->add_flag("--dot", dot);

  auto* synth = app.add_subcommand("synthesize", "Build a net from a step file");
  synth->add_option("file", file)->required();
  synth->add_option("--init", init, "Initial marking, e.g. \"p, q\"");
  synth->add_option("--name", name, "Net name (default: file stem)");

  auto* co_cmd = app.add_subcommand("co", "Concurrency structure over repeated rounds");
  co_cmd->add_option("file", file)->required();
  co_cmd->add_option("--rounds", rounds, "Number of rounds")->default_val(3)->check(
      CLI::PositiveNumber);
  co_cmd->add_option("--round", round, "One round (default: shortest cycle to M0)");
  co_cmd->add_option("--marking", marking);
  co_cmd->add_flag("--dot", dot);

  auto* lin = app.add_subcommand("linearize", "Interleavings of the run of a sequence");
  lin->add_option("file", file)->required();
  lin->add_option("--seq", seq)->required();
  lin->add_option("--cap", cap)->default_val(kDefaultLinearizationCap);
  lin->add_option("--marking", marking);

  auto* hl_cmd = app.add_subcommand("hl", "High-level nets");
  hl_cmd->require_subcommand(1);
  auto* hl_modes_cmd = hl_cmd->add_subcommand("modes", "Enabled modes of a transition");
  hl_modes_cmd->add_option("file", file)->required();
  hl_modes_cmd->add_option("transition", trans)->required();
  hl_modes_cmd->add_option("--step", hl_steps, "Steps \"t: x=v\" fired first");
  hl_modes_cmd->add_option("--cap", cap)->default_val(kDefaultModeCap);
  auto* hl_fire_cmd = hl_cmd->add_subcommand("fire", "Fire steps and print the marking");
  hl_fire_cmd->add_option("file", file)->required();
  hl_fire_cmd->add_option("--step", hl_steps, "Step \"t: x=v, Y={a, b}\"")->required();
  auto* hl_expand_cmd = hl_cmd->add_subcommand("expand", "Elementary expansion");
  hl_expand_cmd->add_option("file", file)->required();
  hl_expand_cmd->add_flag("--dot", dot);
  auto* hl_graph_cmd = hl_cmd->add_subcommand("graph", "Reachable markings of an HL net");
  hl_graph_cmd->add_option("file", file)->required();
  hl_graph_cmd->add_option("--cap", cap)->default_val(kDefaultGraphCap);

  auto* examples_cmd = app.add_subcommand("examples", "List or emit bundled examples");
  examples_cmd->add_option("name", name);
  examples_cmd->add_option("--out", out_dir, "Write the files into this directory");

  std::string context;  // file named in semantic diagnostics
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    context = file;

    if (*show) {
      auto source = read_file(file);
      if (has_suffix(file, ".mod")) {
        auto m = parse_module(source, file);
        out << (text ? serialize(m) : to_dot(m));
      } else if (has_suffix(file, ".hl")) {
        auto doc = parse_hlnet(source, file);
        out << (text ? serialize(doc.net, doc.interp)
                     : to_dot(hl::expand(doc.net, doc.interp).net));
      } else if (has_suffix(file, ".steps")) {
        auto steps = parse_steps(source, file);
        out << (text ? serialize_steps(steps) : to_dot(synthesize(steps, stem(file))));
      } else {
        auto net = parse_net(source, file);
        out << (text ? serialize(net) : to_dot(net));
      }
      return kOk;
    }

    if (*fire_cmd) {
      auto net = load_net(file);
      auto m = start_marking(net, marking);
      auto ts = sequence(net, seq);
      out << to_string(m) << '\n';
      for (std::size_t i = 0; i < ts.size(); ++i) {
        try {
          m = fire(net, m, ts[i]);
        } catch (const EnablingError& e) {
          throw EnablingError("step " + std::to_string(i + 1) + ": " + e.what(),
                              e.deficient_places(), i);
        }
        out << to_string(m) << '\n';
      }
      return kOk;
    }

    if (*graph) {
      auto net = load_net(file);
      auto g = marking_graph(net, start_marking(net, marking), cap);
      if (dot) {
        out << to_dot(g);
      } else {
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
          out << 'm' << i << ' ' << to_string(g.nodes[i]) << '\n';
        for (const auto& e : g.edges)
          out << 'm' << e.source << " -" << e.transition << "-> m" << e.target << '\n';
      }
      if (g.truncated) {
        err << "petri: " << file << ": marking graph truncated at " << cap
            << " markings\n";
        return kCapExceeded;
      }
      return kOk;
    }

    if (*unfold_cmd) {
      auto net = load_net(file);
      out << to_dot(unfold(net, start_marking(net, marking), sequence(net, seq)));
      return kOk;
    }

    if (*invariants) {
      auto net = load_net(file);
      for (const auto& v : place_invariants(net)) out << to_string(net, v) << '\n';
      return kOk;
    }

    if (*check) {
      auto net = load_net(file);
      auto v = parse_weights(net, weights);
      auto m0 = start_marking(net, marking);
      auto ts = sequence(net, seq);
      auto trace = fire_sequence(net, m0, ts);
      for (std::size_t i = 0; i < trace.size(); ++i)
        out << 'M' << i << ' ' << v.apply(trace[i]) << '\n';
      bool holds = check_invariant(net, v, m0, ts);
      out << "place invariant: " << (is_place_invariant(net, v) ? "yes" : "no") << '\n';
      out << "constant along trace: " << (holds ? "yes" : "no") << '\n';
      return holds ? kOk : kSemantic;
    }

    if (*compose_cmd) {
      std::vector<Module> modules;
      for (const auto& f : files) {
        context = f;
        modules.push_back(parse_module(read_file(f), f));
      }
      context = files.size() == 1 ? files.front() : "compose";
      auto result = compose_chain(modules);
      out << (dot ? to_dot(result) : serialize(result));
      return kOk;
    }

    if (*synth) {
      auto steps = parse_steps(read_file(file), file);
      auto net = synthesize(steps, name.empty() ? stem(file) : name);
      if (!init.empty()) net.set_initial_marking(start_marking(net, init));
      out << serialize(net);
      return kOk;
    }

    if (*co_cmd) {
      auto net = load_net(file);
      auto m0 = start_marking(net, marking);
      std::vector<TransitionId> one;
      if (!round.empty()) {
        one = sequence(net, round);
      } else {
        auto cycle = shortest_cycle(net, m0, kCycleSearchCap);
        if (!cycle) throw StructuralError("no firing sequence returns to the start marking");
        one = *cycle;
      }
      std::vector<TransitionId> all;
      for (std::size_t i = 0; i < rounds; ++i) all.insert(all.end(), one.begin(), one.end());
      auto run = unfold(net, m0, all);
      auto s = concurrency_structure(net, run);
      if (dot) {
        out << to_dot(net, s);
      } else {
        out << "round: " << join(one) << '\n';
        out << "rounds: " << rounds << '\n';
        for (const auto& [a, b] : s.links) out << a << " ~ " << b << '\n';
        out << "connected: " << (is_connected(s) ? "yes" : "no") << '\n';
      }
      return kOk;
    }

    if (*lin) {
      auto net = load_net(file);
      auto run = unfold(net, start_marking(net, marking), sequence(net, seq));
      auto result = linearizations(run, cap);
      for (const auto& s : result.sequences) out << join(event_labels(run, s)) << '\n';
      if (result.truncated) {
        err << "petri: " << file << ": more than " << cap << " linearizations\n";
        return kCapExceeded;
      }
      return kOk;
    }

    if (*hl_cmd) {
      auto doc = parse_hlnet(read_file(file), file);
      if (*hl_modes_cmd) {
        auto m = replay(doc, hl_steps);
        const auto& t = doc.net.transition(trans);
        auto modes = hl::hl_modes(doc.net, doc.interp, m, trans, cap);
        for (const auto& mode : modes.modes) out << hl::to_string(t, mode) << '\n';
        if (modes.truncated) {
          err << "petri: " << file << ": more than " << cap << " modes\n";
          return kCapExceeded;
        }
        return kOk;
      }
      if (*hl_fire_cmd) {
        out << hl::to_string(doc.net, replay(doc, hl_steps));
        return kOk;
      }
      if (*hl_expand_cmd) {
        auto x = hl::expand(doc.net, doc.interp);
        out << (dot ? to_dot(x.net) : serialize(x.net));
        return kOk;
      }
      if (*hl_graph_cmd) {
        auto g = hl::hl_marking_graph(doc.net, doc.interp,
                                      hl::initial_marking(doc.net, doc.interp), cap);
        out << "markings: " << g.nodes.size() << '\n';
        out << "steps: " << g.edges.size() << '\n';
        if (g.truncated) {
          err << "petri: " << file << ": marking graph truncated at " << cap
              << " markings\n";
          return kCapExceeded;
        }
        return kOk;
      }
    }

    if (*examples_cmd) {
      if (name.empty()) {
        for (const auto& n : examples::names()) out << n << '\n';
        return kOk;
      }
      auto fs = examples::files(name);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& f : fs) {
          auto path = (std::filesystem::path(out_dir) / f.name).string();
          std::ofstream o(path, std::ios::binary);
          o << f.text;
          if (!o) throw InputError(path + ": cannot write file");
          out << path << '\n';
        }
      } else if (fs.size() == 1) {
        out << fs.front().text;
      } else {
        for (const auto& f : fs) out << "==> " << f.name << " <==\n" << f.text;
      }
      return kOk;
    }
    return kUsage;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  } catch (const InputError& e) {
    err << "petri: " << e.what() << '\n';
    return kParse;
  } catch (const ParseError& e) {
    err << "petri: " << e.what() << '\n';
    return kParse;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "petri: " << e.what() << '\n';
    return kParse;
  } catch (const Error& e) {
    err << "petri: ";
    if (!context.empty()) err << context << ": ";
    err << e.what() << '\n';
    return exit_code_of(e.kind());
  }
}

}  // namespace petri::cli
