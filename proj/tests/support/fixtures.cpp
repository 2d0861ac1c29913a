#include "fixtures.hpp"

#include <functional>

namespace nred::testing {

Branches branches() {
  Branches f;
  TemplateBuilder o;
  o.edge("l0", Action::plain("a"), "l2")
      .edge("l0", Action::plain("b1"), "l1")
      .edge("l1", Action::plain("b2"), "l2")
      .edge("l0", Action::plain("c"), "l2")
      .init("l0")
      .exit("l2");
  f.original = o.build();
  TemplateBuilder outer;
  outer.edge("l0", Action::plain("a"), "l2")
      .edge("l0", Action::block("B"), "l2")
      .edge("l0", Action::plain("c"), "l2")
      .init("l0")
      .exit("l2");
  TemplateBuilder body;
  body.edge("s", Action::plain("b1"), "m").edge("m", Action::plain("b2"), "t").init("s").exit("t");
  f.fusion = {outer.build(), {{"B", body.build()}}};
  const std::vector<std::string> sigma{"a", "b1", "b2", "c"};
  f.i = CommutativityRelation::from_conflicts(sigma, {{"a", "b2"}, {"b1", "c"}});
  f.i_prime = f.i.without({{"b1", "b2"}});
  return f;
}

Phased phased() {
  Phased f;
  TemplateBuilder b;
  b.edge("l0", Action::plain("a"), "l1")
      .edge("l1", Action::plain("b"), "l2")
      .edge("l2", Action::plain("c"), "l3")
      .init("l0")
      .exit("l3");
  f.base = b.build();
  f.inst = insert_syncpoints(f.base, {"l1", "l2"});
  const std::vector<std::string> sigma{"a", "b", "c"};
  f.i = CommutativityRelation::from_conflicts(sigma, {{"b", "b"}, {"c", "c"}});
  f.i_prime = CommutativityRelation::from_conflicts(sigma, {{"b", "c"}, {"c", "b"}});
  return f;
}

ThreadTemplate line(const std::vector<std::string>& actions) {
  TemplateBuilder b;
  for (std::size_t k = 0; k < actions.size(); ++k)
    b.edge("q" + std::to_string(k), Action::plain(actions[k]), "q" + std::to_string(k + 1));
  b.init("q0").exit("q" + std::to_string(actions.size()));
  return b.build();
}

std::set<std::vector<std::string>> bounded_traces(const ThreadTemplate& t, std::size_t max_len) {
  std::set<std::vector<std::string>> out;
  std::vector<std::string> cur;
  std::function<void(LocationId)> walk = [&](LocationId l) {
    if (l == t.exit()) out.insert(cur);
    if (cur.size() == max_len) return;
    for (auto e : t.out_edges(l)) {
      cur.push_back(t.edge(e).action.label());
      walk(t.edge(e).target);
      cur.pop_back();
    }
  };
  walk(t.init());
  return out;
}

}  // namespace nred::testing
