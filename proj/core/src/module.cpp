#include "petri/module.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "petri/error.hpp"

namespace petri {

void Interface::add(std::string label, std::string element) {
  if (contains(label))
    throw StructuralError("duplicate interface label '" + label + "'");
  entries_.push_back({std::move(label), std::move(element)});
}

std::optional<std::string> Interface::find(const std::string& label) const {
  for (const auto& e : entries_)
    if (e.label == label) return e.element;
  return std::nullopt;
}

const std::string& Module::label_of(const std::string& element) const {
  auto it = labels.find(element);
  return it == labels.end() ? element : it->second;
}

void Module::validate() const {
  auto exists = [this](const std::string& e) {
    return net.has_place(e) || net.has_transition(e);
  };
  for (const auto* face : {&left, &right})
    for (const auto& entry : face->entries())
      if (!exists(entry.element))
        throw StructuralError("interface label '" + entry.label +
                              "' refers to unknown element '" + entry.element +
                              "'");
  for (const auto& [element, label] : labels)
    if (!exists(element))
      throw StructuralError("annotation for unknown element '" + element + "'");
}

namespace {

std::string composite_name(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "." + b;
}

}  // namespace

Module compose(const Module& a, const Module& b) {
  a.validate();
  b.validate();

  // b element -> a element for every shared label.
  std::map<std::string, std::string> fused;
  std::set<std::string> shared;
  for (const auto& entry : a.right.entries()) {
    auto other = b.left.find(entry.label);
    if (!other) continue;
    const bool place_a = a.net.has_place(entry.element);
    const bool place_b = b.net.has_place(*other);
    if (place_a != place_b)
      throw CompositionError("label '" + entry.label +
                                 "' joins a place with a transition",
                             entry.label);
    auto [it, inserted] = fused.emplace(*other, entry.element);
    if (!inserted && it->second != entry.element)
      throw CompositionError("label '" + entry.label + "' would fuse '" +
                                 *other + "' with two different elements",
                             entry.label);
    shared.insert(entry.label);
  }

  // Identifiers for b's unfused elements.
  std::set<std::string> used;
  for (const auto& p : a.net.places()) used.insert(p);
  for (const auto& t : a.net.transitions()) used.insert(t.id);
  std::map<std::string, std::string> rename;
  auto assign = [&](const std::string& id) {
    if (auto it = fused.find(id); it != fused.end()) {
      rename[id] = it->second;
      return;
    }
    std::string name = id;
    while (used.count(name)) name += '\'';
    used.insert(name);
    rename[id] = name;
  };
  for (const auto& p : b.net.places()) assign(p);
  for (const auto& t : b.net.transitions()) assign(t.id);

  auto map_bag = [&](const Marking& bag) {
    Marking out;
    for (const auto& [place, n] : bag) out.add(rename.at(place), n);
    return out;
  };

  Module result;
  result.net.set_name(composite_name(a.net.name(), b.net.name()));
  for (const auto& p : a.net.places()) result.net.add_place(p);
  for (const auto& p : b.net.places())
    if (!fused.count(p)) result.net.add_place(rename.at(p));

  std::map<std::string, std::pair<Marking, Marking>> extra;  // fused transitions
  for (const auto& t : b.net.transitions())
    if (auto it = fused.find(t.id); it != fused.end()) {
      auto& [pre, post] = extra[it->second];
      pre += map_bag(t.pre);
      post += map_bag(t.post);
    }
  for (const auto& t : a.net.transitions()) {
    Marking pre = t.pre, post = t.post;
    if (auto it = extra.find(t.id); it != extra.end()) {
      pre += it->second.first;
      post += it->second.second;
    }
    result.net.add_transition(t.id, std::move(pre), std::move(post));
  }
  for (const auto& t : b.net.transitions())
    if (!fused.count(t.id))
      result.net.add_transition(rename.at(t.id), map_bag(t.pre), map_bag(t.post));

  result.net.set_initial_marking(a.net.initial_marking() +
                                 map_bag(b.net.initial_marking()));

  auto add_entry = [](Interface& face, const std::string& label,
                      const std::string& element, const char* side) {
    if (face.contains(label))
      throw CompositionError("label '" + label + "' would occur twice in the " +
                                 side + " face",
                             label);
    face.add(label, element);
  };
  for (const auto& e : a.left.entries()) add_entry(result.left, e.label, e.element, "left");
  for (const auto& e : b.left.entries())
    if (!shared.count(e.label))
      add_entry(result.left, e.label, rename.at(e.element), "left");
  for (const auto& e : b.right.entries())
    add_entry(result.right, e.label, rename.at(e.element), "right");
  for (const auto& e : a.right.entries())
    if (!shared.count(e.label)) add_entry(result.right, e.label, e.element, "right");

  result.labels = a.labels;
  for (const auto& [element, label] : b.labels)
    if (!fused.count(element)) result.labels.emplace(rename.at(element), label);
  return result;
}

Module compose_chain(const std::vector<Module>& modules) {
  if (modules.empty()) return {};
  Module acc = modules.front();
  for (std::size_t i = 1; i < modules.size(); ++i) {
    try {
      acc = compose(acc, modules[i]);
    } catch (const CompositionError& e) {
      throw CompositionError("chain position " + std::to_string(i) + ": " +
                                 e.what(),
                             e.label());
    }
  }
  return acc;
}

namespace {

// Colored bipartite graph of a module for isomorphism testing.
struct Shape {
  struct Arc {
    std::size_t other;
    Count pre;
    Count post;
  };
  std::size_t places = 0;
  std::vector<std::string> base;  // initial color key per element
  std::vector<std::vector<Arc>> adj;
  // weights[place][transition] = (pre, post)
  std::map<std::pair<std::size_t, std::size_t>, std::pair<Count, Count>> weights;

  std::size_t size() const { return base.size(); }
};

std::string face_key(const Module& m, const std::string& element) {
  std::vector<std::string> l, r;
  for (const auto& e : m.left.entries())
    if (e.element == element) l.push_back(e.label);
  for (const auto& e : m.right.entries())
    if (e.element == element) r.push_back(e.label);
  std::sort(l.begin(), l.end());
  std::sort(r.begin(), r.end());
  std::string key = "L";
  for (const auto& s : l) key += "\x1f" + s;
  key += "\x1eR";
  for (const auto& s : r) key += "\x1f" + s;
  auto it = m.labels.find(element);
  key += "\x1e";
  if (it != m.labels.end()) key += "A" + it->second;
  return key;
}

Shape shape_of(const Module& m) {
  Shape s;
  const auto& net = m.net;
  s.places = net.places().size();
  for (const auto& p : net.places())
    s.base.push_back("P" + std::to_string(net.initial_marking()[p]) + "\x1d" +
                     face_key(m, p));
  for (const auto& t : net.transitions()) s.base.push_back("T\x1d" + face_key(m, t.id));
  s.adj.resize(s.size());
  for (std::size_t j = 0; j < net.transitions().size(); ++j) {
    const auto& t = net.transitions()[j];
    std::set<std::string> touched;
    for (const auto& [p, n] : t.pre) touched.insert(p);
    for (const auto& [p, n] : t.post) touched.insert(p);
    for (const auto& p : touched) {
      const auto pi = net.place_index(p);
      const auto ti = s.places + j;
      s.adj[pi].push_back({ti, t.pre[p], t.post[p]});
      s.adj[ti].push_back({pi, t.pre[p], t.post[p]});
      s.weights[{pi, ti}] = {t.pre[p], t.post[p]};
    }
  }
  return s;
}

// Joint color refinement of two shapes; returns stable colors per element.
std::pair<std::vector<int>, std::vector<int>> refine(const Shape& a, const Shape& b) {
  std::map<std::string, int> initial;
  auto seed = [&](const Shape& s) {
    std::vector<int> c;
    for (const auto& key : s.base)
      c.push_back(initial.emplace(key, static_cast<int>(initial.size())).first->second);
    return c;
  };
  std::vector<int> ca = seed(a), cb = seed(b);
  std::size_t classes = initial.size();
  while (true) {
    std::map<std::vector<Count>, int> palette;
    auto step = [&](const Shape& s, const std::vector<int>& c) {
      std::vector<int> next;
      for (std::size_t v = 0; v < s.size(); ++v) {
        std::vector<std::vector<Count>> nb;
        for (const auto& arc : s.adj[v]) nb.push_back({c[arc.other], arc.pre, arc.post});
        std::sort(nb.begin(), nb.end());
        std::vector<Count> sig{c[v]};
        for (const auto& x : nb) sig.insert(sig.end(), x.begin(), x.end());
        next.push_back(palette.emplace(sig, static_cast<int>(palette.size())).first->second);
      }
      return next;
    };
    auto na = step(a, ca);
    auto nb = step(b, cb);
    ca = std::move(na);
    cb = std::move(nb);
    if (palette.size() == classes) break;
    classes = palette.size();
  }
  return {ca, cb};
}

}  // namespace

bool modules_isomorphic(const Module& a, const Module& b) {
  if (a.net.places().size() != b.net.places().size() ||
      a.net.transitions().size() != b.net.transitions().size() ||
      a.left.size() != b.left.size() || a.right.size() != b.right.size() ||
      a.net.arc_count() != b.net.arc_count())
    return false;
  const Shape sa = shape_of(a), sb = shape_of(b);
  const auto [ca, cb] = refine(sa, sb);
  {
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
  }

  // Backtracking over elements of a, smallest color classes first.
  const std::size_t n = sa.size();
  std::map<int, std::size_t> class_size;
  for (int c : ca) ++class_size[c];
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return class_size[ca[x]] < class_size[ca[y]];
  });

  std::vector<std::ptrdiff_t> map_ab(n, -1);
  std::vector<bool> used(n, false);
  auto weight = [](const Shape& s, std::size_t x, std::size_t y) {
    std::size_t p = x < s.places ? x : y, t = x < s.places ? y : x;
    auto it = s.weights.find({p, t});
    return it == s.weights.end() ? std::pair<Count, Count>{0, 0} : it->second;
  };
  auto consistent = [&](std::size_t x, std::size_t y) {
    for (std::size_t k = 0; k < n; ++k) {
      if (map_ab[k] < 0) continue;
      const bool x_place = x < sa.places, k_place = k < sa.places;
      if (x_place == k_place) continue;
      if (weight(sa, x, k) != weight(sb, y, static_cast<std::size_t>(map_ab[k])))
        return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const auto x = order[depth];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || cb[y] != ca[x] || !consistent(x, y)) continue;
      map_ab[x] = static_cast<std::ptrdiff_t>(y);
      used[y] = true;
      if (self(self, depth + 1)) return true;
      used[y] = false;
      map_ab[x] = -1;
    }
    return false;
  };
  return search(search, 0);
}

Module module_of_run(const Run& run) {
  Module m;
  for (std::size_t c = 0; c < run.conditions().size(); ++c) {
    const auto id = to_string(Occurrence::condition(c));
    m.net.add_place(id);
    m.labels[id] = run.conditions()[c];
  }
  for (std::size_t e = 0; e < run.events().size(); ++e) {
    Marking pre, post;
    for (auto c : run.preset(e)) pre.add(to_string(Occurrence::condition(c)));
    for (auto c : run.postset(e)) post.add(to_string(Occurrence::condition(c)));
    const auto id = to_string(Occurrence::event(e));
    m.net.add_transition(id, std::move(pre), std::move(post));
    m.labels[id] = run.events()[e];
  }
  auto fill = [&](Interface& face, bool minimal) {
    std::map<std::string, int> seen;
    for (std::size_t c = 0; c < run.conditions().size(); ++c) {
      const bool open = minimal ? run.producers(c).empty() : run.consumers(c).empty();
      if (!open) continue;
      const auto& label = run.conditions()[c];
      const int k = ++seen[label];
      face.add(k == 1 ? label : label + "#" + std::to_string(k),
               to_string(Occurrence::condition(c)));
    }
  };
  fill(m.left, true);
  fill(m.right, false);
  return m;
}

Run run_of_module(const Module& m) {
  Run run;
  for (const auto& p : m.net.places()) run.add_condition(m.label_of(p));
  for (std::size_t e = 0; e < m.net.transitions().size(); ++e) {
    const auto& t = m.net.transitions()[e];
    run.add_event(m.label_of(t.id));
    for (const auto& p : m.net.places()) {
      const auto c = m.net.place_index(p);
      for (Count k = 0; k < t.pre[p]; ++k) run.add_input(c, e);
    }
    for (const auto& p : m.net.places()) {
      const auto c = m.net.place_index(p);
      for (Count k = 0; k < t.post[p]; ++k) run.add_output(e, c);
    }
  }
  return run;
}

}  // namespace petri
