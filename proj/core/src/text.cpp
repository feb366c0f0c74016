#include "petri/text.hpp"

#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "text_util.hpp"

namespace petri {

using detail::LineReader;
using detail::quote_if_needed;
using detail::tokenize;

namespace {

struct Ref {
  std::string id;
  std::size_t line;
};

struct PendingTransition {
  std::string id;
  std::size_t line;
  std::vector<Ref> pre;
  std::vector<Ref> post;
};

struct PendingFace {
  std::string side;  // left, right, label
  std::string key;
  std::string value;
  std::size_t line;
};

// Comma-separated words until end of line; an empty list is allowed.
std::vector<std::string> word_list(LineReader& r, const char* what) {
  std::vector<std::string> out;
  if (r.done()) return out;
  out.push_back(r.word(what));
  while (r.accept(",")) out.push_back(r.word(what));
  r.finish();
  return out;
}

Module parse_module_impl(std::string_view text, const std::string& source,
                         bool allow_faces) {
  const auto lines = tokenize(text, source);
  std::string name;
  bool named = false;
  std::vector<std::pair<Ref, Count>> places;
  std::vector<PendingTransition> transitions;
  std::vector<PendingFace> faces;

  for (const auto& line : lines) {
    LineReader r(line, source);
    const auto& head = r.next();
    if (head.is_keyword("net")) {
      if (named) r.fail("duplicate 'net' line");
      named = true;
      name = r.word("net name");
      r.finish();
    } else if (head.is_keyword("place")) {
      Ref id{r.word("place identifier"), line.number};
      Count init = 0;
      if (r.accept_keyword("init")) init = static_cast<Count>(r.natural("token count"));
      r.finish();
      places.emplace_back(std::move(id), init);
    } else if (head.is_keyword("trans")) {
      transitions.push_back({r.word("transition identifier"), line.number, {}, {}});
      r.finish();
    } else if (head.is_keyword("pre") || head.is_keyword("post")) {
      if (transitions.empty()) r.fail("'" + head.text + "' outside a transition block");
      auto& target = head.text == "pre" ? transitions.back().pre : transitions.back().post;
      for (auto& id : word_list(r, "place identifier"))
        target.push_back({std::move(id), line.number});
    } else if (allow_faces &&
               (head.is_keyword("left") || head.is_keyword("right") ||
                head.is_keyword("label"))) {
      PendingFace f{head.text, r.word("identifier"), {}, line.number};
      r.expect("=");
      f.value = r.word("identifier");
      r.finish();
      faces.push_back(std::move(f));
    } else {
      r.fail("unknown declaration '" + head.text + "'");
    }
  }

  Module m;
  m.net.set_name(name);
  for (const auto& [ref, init] : places) {
    try {
      m.net.add_place(ref.id, init);
    } catch (const StructuralError& e) {
      throw ParseError(source, ref.line, e.what());
    }
  }
  for (const auto& t : transitions) {
    Marking pre, post;
    for (const auto* refs : {&t.pre, &t.post})
      for (const auto& ref : *refs)
        if (!m.net.has_place(ref.id))
          throw ParseError(source, ref.line, "undeclared place '" + ref.id + "'");
    for (const auto& ref : t.pre) pre.add(ref.id);
    for (const auto& ref : t.post) post.add(ref.id);
    try {
      m.net.add_transition(t.id, std::move(pre), std::move(post));
    } catch (const StructuralError& e) {
      throw ParseError(source, t.line, e.what());
    }
  }
  for (const auto& f : faces) {
    const auto& element = f.side == "label" ? f.key : f.value;
    if (!m.net.has_place(element) && !m.net.has_transition(element))
      throw ParseError(source, f.line, "unknown element '" + element + "'");
    try {
      if (f.side == "left")
        m.left.add(f.key, f.value);
      else if (f.side == "right")
        m.right.add(f.key, f.value);
      else if (!m.labels.emplace(f.key, f.value).second)
        throw StructuralError("duplicate label for '" + f.key + "'");
    } catch (const StructuralError& e) {
      throw ParseError(source, f.line, e.what());
    }
  }
  return m;
}

void emit_bag(std::string& out, const Net& net, const char* keyword, const Marking& bag) {
  if (bag.empty()) return;
  out += "  ";
  out += keyword;
  bool first = true;
  for (const auto& p : net.places())
    for (Count k = 0; k < bag[p]; ++k) {
      out += first ? " " : ", ";
      first = false;
      out += quote_if_needed(p);
    }
  out += '\n';
}

}  // namespace

Net parse_net(std::string_view text, const std::string& source) {
  return parse_module_impl(text, source, false).net;
}

Module parse_module(std::string_view text, const std::string& source) {
  return parse_module_impl(text, source, true);
}

std::string serialize(const Net& net) {
  std::string out;
  if (!net.name().empty()) out += "net " + quote_if_needed(net.name()) + "\n";
  for (const auto& p : net.places()) {
    out += "place " + quote_if_needed(p);
    if (const auto n = net.initial_marking()[p]; n != 0) out += " init " + std::to_string(n);
    out += '\n';
  }
  for (const auto& t : net.transitions()) {
    out += "trans " + quote_if_needed(t.id) + "\n";
    emit_bag(out, net, "pre", t.pre);
    emit_bag(out, net, "post", t.post);
  }
  return out;
}

std::string serialize(const Module& module) {
  std::string out = serialize(module.net);
  // Face lines in label order, so the text does not depend on face history.
  auto emit_face = [&](const char* side, const Interface& face) {
    auto entries = face.entries();
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.label < y.label; });
    for (const auto& e : entries)
      out += std::string(side) + " " + quote_if_needed(e.label) + " = " +
             quote_if_needed(e.element) + "\n";
  };
  emit_face("left", module.left);
  emit_face("right", module.right);
  for (const auto& [element, label] : module.labels)
    out += "label " + quote_if_needed(element) + " = " + quote_if_needed(label) + "\n";
  return out;
}

std::vector<Run> parse_steps(std::string_view text, const std::string& source) {
  const auto lines = tokenize(text, source);
  std::vector<Run> steps;
  std::vector<std::size_t> event_of;
  for (const auto& line : lines) {
    LineReader r(line, source);
    const auto& head = r.next();
    if (head.is_keyword("step")) {
      Run step;
      step.add_event(r.word("step identifier"));
      r.finish();
      steps.push_back(std::move(step));
    } else if (head.is_keyword("pre") || head.is_keyword("post")) {
      if (steps.empty()) r.fail("'" + head.text + "' outside a step block");
      auto& step = steps.back();
      for (auto& label : word_list(r, "place label")) {
        const auto c = step.add_condition(std::move(label));
        if (head.text == "pre")
          step.add_input(c, 0);
        else
          step.add_output(0, c);
      }
    } else {
      r.fail("unknown declaration '" + head.text + "'");
    }
  }
  return steps;
}

std::string serialize_steps(const std::vector<Run>& steps) {
  std::string out;
  for (const auto& step : steps) {
    for (std::size_t e = 0; e < step.events().size(); ++e) {
      out += "step " + quote_if_needed(step.events()[e]) + "\n";
      for (const auto* kind : {"pre", "post"}) {
        const auto conds = std::string(kind) == "pre" ? step.preset(e) : step.postset(e);
        if (conds.empty()) continue;
        out += std::string("  ") + kind;
        for (std::size_t i = 0; i < conds.size(); ++i)
          out += (i ? ", " : " ") + quote_if_needed(step.conditions()[conds[i]]);
        out += '\n';
      }
    }
  }
  return out;
}

namespace {

hl::Term read_term(LineReader& r) {
  if (r.accept("{")) {
    std::vector<hl::Term> members;
    if (!r.accept("}")) {
      members.push_back(read_term(r));
      while (r.accept(",")) members.push_back(read_term(r));
      r.expect("}");
    }
    return hl::Term::set_of(std::move(members));
  }
  const auto& tok = r.next();
  if (!tok.is_word()) r.fail("expected a term, found '" + tok.text + "'");
  if (r.accept("(")) {
    hl::Term arg = read_term(r);
    r.expect(")");
    if (tok.is_keyword("elm")) return hl::Term::elm(std::move(arg));
    return hl::Term::apply(tok.text, std::move(arg));
  }
  return hl::Term::symbol(tok.text);
}

std::vector<hl::Term> read_terms(LineReader& r) {
  std::vector<hl::Term> out;
  out.push_back(read_term(r));
  while (r.accept(",")) out.push_back(read_term(r));
  return out;
}

// Element or `{e, ...}` literal, validated against the net.
hl::Value read_value(LineReader& r, const hl::HLNet& net) {
  auto element = [&](std::string e) {
    if (!net.universe_of(e)) r.fail("unknown element '" + e + "'");
    return e;
  };
  if (r.accept("{")) {
    std::vector<hl::Element> members;
    if (!r.accept("}")) {
      members.push_back(element(r.word("element")));
      while (r.accept(",")) members.push_back(element(r.word("element")));
      r.expect("}");
    }
    return hl::Value::set(net.canonical_set(std::move(members)));
  }
  return hl::Value::element(element(r.word("element")));
}

void read_arc(LineReader& r, std::vector<hl::Arc>& arcs) {
  hl::Arc arc;
  arc.place = r.word("place identifier");
  r.expect(":");
  arc.inscription = read_terms(r);
  r.finish();
  arcs.push_back(std::move(arc));
}

}  // namespace

HLDocument parse_hlnet(std::string_view text, const std::string& source) {
  const auto lines = tokenize(text, source);
  HLDocument doc;
  auto& net = doc.net;
  std::optional<std::pair<hl::Transition, std::size_t>> pending;
  bool named = false;

  auto flush = [&]() {
    if (!pending) return;
    try {
      net.add_transition(std::move(pending->first));
    } catch (const Error& e) {
      throw ParseError(source, pending->second, e.what());
    }
    pending.reset();
  };

  for (const auto& line : lines) {
    LineReader r(line, source);
    const auto& head = r.next();
    try {
      if (head.is_keyword("net")) {
        if (named) r.fail("duplicate 'net' line");
        named = true;
        net.set_name(r.word("net name"));
        r.finish();
      } else if (head.is_keyword("universe")) {
        hl::Universe u{r.word("universe name"), {}};
        r.expect("=");
        r.expect("{");
        if (!r.accept("}")) {
          u.elements.push_back(r.word("element"));
          while (r.accept(",")) u.elements.push_back(r.word("element"));
          r.expect("}");
        }
        r.finish();
        net.add_universe(std::move(u));
      } else if (head.is_keyword("function")) {
        hl::Function f;
        f.name = r.word("function name");
        r.expect(":");
        f.domain = r.word("domain universe");
        r.expect("->");
        if (r.accept_keyword("set")) f.codomain.is_set = true;
        f.codomain.universe = r.word("codomain universe");
        if (!net.has_universe(f.domain)) r.fail("unknown universe '" + f.domain + "'");
        if (!net.has_universe(f.codomain.universe))
          r.fail("unknown universe '" + f.codomain.universe + "'");
        r.expect("{");
        if (!r.accept("}")) {
          do {
            auto arg = r.word("element");
            if (net.universe_of(arg) != f.domain)
              r.fail("'" + arg + "' is not an element of '" + f.domain + "'");
            r.expect("->");
            auto value = read_value(r, net);
            if (value.is_set() != f.codomain.is_set)
              r.fail("value " + hl::to_string(value) + " does not match the codomain");
            for (const auto& e : value.items)
              if (net.universe_of(e) != f.codomain.universe)
                r.fail("'" + e + "' is not an element of '" + f.codomain.universe + "'");
            if (!f.table.emplace(arg, std::move(value)).second)
              r.fail("duplicate entry for '" + arg + "'");
          } while (r.accept(","));
          r.expect("}");
        }
        r.finish();
        if (f.table.size() != net.universe(f.domain).elements.size())
          r.fail("function '" + f.name + "' is not total on '" + f.domain + "'");
        if (doc.interp.functions.count(f.name))
          r.fail("duplicate function '" + f.name + "'");
        doc.interp.functions.emplace(f.name, std::move(f));
      } else if (head.is_keyword("const")) {
        auto name = r.word("constant name");
        r.expect("=");
        auto value = read_value(r, net);
        r.finish();
        if (!doc.interp.constants.emplace(name, std::move(value)).second)
          r.fail("duplicate constant '" + name + "'");
      } else if (head.is_keyword("hlplace")) {
        flush();
        hl::Place p;
        p.name = r.word("place identifier");
        r.expect(":");
        p.universe = r.word("universe");
        if (r.accept_keyword("init")) p.initial = read_terms(r);
        r.finish();
        net.add_place(std::move(p));
      } else if (head.is_keyword("hltrans")) {
        flush();
        hl::Transition t;
        t.name = r.word("transition identifier");
        while (!r.done()) {
          hl::Variable v;
          if (r.accept_keyword("var")) {
            v.name = r.word("variable");
            r.expect(":");
            v.universe = r.word("universe");
          } else if (r.accept_keyword("setvar")) {
            v.is_set = true;
            v.name = r.word("variable");
            r.expect("<=");
            v.universe = r.word("universe");
            if (r.accept_keyword("in")) {
              if (!net.has_universe(v.universe))
                r.fail("unknown universe '" + v.universe + "'");
              r.expect("{");
              do {
                auto value = read_value(r, net);
                if (!value.is_set()) r.fail("set variable range must list sets");
                v.range.push_back(std::move(value.items));
              } while (r.accept(","));
              r.expect("}");
            }
          } else {
            r.fail("expected 'var' or 'setvar'");
          }
          t.variables.push_back(std::move(v));
          r.accept(",");
        }
        pending.emplace(std::move(t), line.number);
      } else if (head.is_keyword("pre") || head.is_keyword("post")) {
        if (!pending) r.fail("'" + head.text + "' outside an hltrans block");
        read_arc(r, head.text == "pre" ? pending->first.pre : pending->first.post);
      } else {
        r.fail("unknown declaration '" + head.text + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, line.number, e.what());
    }
  }
  flush();

  // Initial inscriptions must evaluate now so errors carry a location.
  try {
    hl::initial_marking(net, doc.interp);
  } catch (const Error& e) {
    throw ParseError(source, lines.empty() ? 0 : lines.back().number, e.what());
  }
  return doc;
}

std::string serialize(const hl::HLNet& net, const hl::Interpretation& interp) {
  std::string out;
  auto join_items = [](const std::vector<std::string>& items) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i)
      s += (i ? ", " : "") + quote_if_needed(items[i]);
    return s;
  };
  auto join_terms = [](const std::vector<hl::Term>& terms) {
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i)
      s += (i ? ", " : "") + hl::to_string(terms[i]);
    return s;
  };
  if (!net.name().empty()) out += "net " + quote_if_needed(net.name()) + "\n";
  for (const auto& u : net.universes())
    out += "universe " + quote_if_needed(u.name) + " = {" + join_items(u.elements) + "}\n";
  for (const auto& [name, value] : interp.constants) {
    if (net.has_universe(name) && value == hl::Value::set(net.universe(name).elements))
      continue;
    out += "const " + quote_if_needed(name) + " = " + hl::to_string(value) + "\n";
  }
  for (const auto& [name, f] : interp.functions) {
    out += "function " + quote_if_needed(name) + ": " + quote_if_needed(f.domain) +
           " -> " + (f.codomain.is_set ? "set " : "") +
           quote_if_needed(f.codomain.universe) + " {";
    bool first = true;
    for (const auto& e : net.universe(f.domain).elements) {
      auto it = f.table.find(e);
      if (it == f.table.end()) continue;
      out += (first ? "" : ", ") + quote_if_needed(e) + " -> " + hl::to_string(it->second);
      first = false;
    }
    out += "}\n";
  }
  for (const auto& p : net.places()) {
    out += "hlplace " + quote_if_needed(p.name) + ": " + quote_if_needed(p.universe);
    if (!p.initial.empty()) out += " init " + join_terms(p.initial);
    out += "\n";
  }
  for (const auto& t : net.transitions()) {
    out += "hltrans " + quote_if_needed(t.name);
    for (std::size_t i = 0; i < t.variables.size(); ++i) {
      const auto& v = t.variables[i];
      out += i ? ", " : " ";
      if (v.is_set) {
        out += "setvar " + quote_if_needed(v.name) + " <= " + quote_if_needed(v.universe);
        if (v.range != hl::nonempty_subsets(net.universe(v.universe))) {
          out += " in {";
          for (std::size_t k = 0; k < v.range.size(); ++k)
            out += (k ? ", " : "") + hl::to_string(hl::Value::set(v.range[k]));
          out += "}";
        }
      } else {
        out += "var " + quote_if_needed(v.name) + ": " + quote_if_needed(v.universe);
      }
    }
    out += "\n";
    for (const auto& a : t.pre)
      out += "  pre " + quote_if_needed(a.place) + ": " + join_terms(a.inscription) + "\n";
    for (const auto& a : t.post)
      out += "  post " + quote_if_needed(a.place) + ": " + join_terms(a.inscription) + "\n";
  }
  return out;
}

hl::Term parse_term(std::string_view text) {
  const auto lines = tokenize(text, "<term>");
  if (lines.size() != 1) throw ParseError("<term>", 1, "expected a single term");
  LineReader r(lines.front(), "<term>");
  auto t = read_term(r);
  r.finish();
  return t;
}

hl::Mode parse_mode(const hl::HLNet& net, std::string_view text) {
  hl::Mode mode;
  const auto lines = tokenize(text, "<mode>");
  if (lines.empty()) return mode;
  if (lines.size() != 1) throw ParseError("<mode>", 1, "mode must fit on one line");
  LineReader r(lines.front(), "<mode>");
  do {
    auto var = r.word("variable");
    r.expect("=");
    auto value = read_value(r, net);
    if (!mode.emplace(var, std::move(value)).second)
      r.fail("variable '" + var + "' bound twice");
  } while (r.accept(","));
  r.finish();
  return mode;
}

Marking parse_marking(std::string_view text) {
  Marking m;
  const auto lines = tokenize(text, "<marking>");
  if (lines.empty()) return m;
  if (lines.size() != 1) throw ParseError("<marking>", 1, "marking must fit on one line");
  LineReader r(lines.front(), "<marking>");
  do {
    auto place = r.word("place");
    Count n = 1;
    if (r.accept(":")) n = static_cast<Count>(r.natural("token count"));
    m.add(place, n);
  } while (r.accept(","));
  r.finish();
  return m;
}

std::vector<std::string> parse_id_list(std::string_view text) {
  const auto lines = tokenize(text, "<list>");
  if (lines.empty()) return {};
  if (lines.size() != 1) throw ParseError("<list>", 1, "list must fit on one line");
  LineReader r(lines.front(), "<list>");
  return word_list(r, "identifier");
}

}  // namespace petri
