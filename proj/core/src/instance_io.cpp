// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pandora/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pandora {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}
std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(join(path, key), "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<long long>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

TypeId type_key(const std::string& key, const std::string& path) {
  try {
    std::size_t used = 0;
    const int t = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return t;
  } catch (const std::exception&) {
    throw ParseError(join(path, key), "type keys must be integers");
  }
}

// Wraps library validation errors with the field path.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

JointVC parse_joint(const json& j, const std::string& path) {
  std::vector<JointAtom> atoms;
  const json& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = index(path, i);
    const json& a = array(arr[i], p);
    if (a.size() != 3) throw ParseError(p, "expected [value, cost, prob]");
    atoms.push_back({number(a[0], p + "[0]"), number(a[1], p + "[1]"),
                     number(a[2], p + "[2]")});
  }
  return at_path(path, [&] { return JointVC(std::move(atoms)); });
}

BoxSpec parse_box(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  if (j.contains("atoms")) {
    JointVC law = parse_joint(j["atoms"], join(path, "atoms"));
    return BoxSpec::single_type(std::move(law), 0);
  }
  const std::string td_path = join(path, "type_dist");
  const json& td = array(field(j, path, "type_dist"), td_path);
  const std::string pt_path = join(path, "per_type");
  const json& per_type = field(j, path, "per_type");
  if (!per_type.is_object()) throw ParseError(pt_path, "expected an object");
  std::vector<TypeBranch> branches;
  for (std::size_t i = 0; i < td.size(); ++i) {
    const std::string p = index(td_path, i);
    const json& entry = array(td[i], p);
    if (entry.size() != 2) throw ParseError(p, "expected [type, prob]");
    const auto type = static_cast<TypeId>(integer(entry[0], p + "[0]"));
    const double prob = number(entry[1], p + "[1]");
    const std::string key = std::to_string(type);
    auto it = per_type.find(key);
    if (it == per_type.end()) throw ParseError(join(pt_path, key), "missing law for type");
    const std::string law_path = join(join(pt_path, key), "atoms");
    branches.push_back({type, prob, parse_joint(field(*it, join(pt_path, key), "atoms"), law_path)});
  }
  for (auto it = per_type.begin(); it != per_type.end(); ++it) {
    const TypeId t = type_key(it.key(), pt_path);
    bool listed = false;
    for (const TypeBranch& b : branches) listed = listed || b.type == t;
    if (!listed) throw ParseError(join(pt_path, it.key()), "type not listed in type_dist");
  }
  return at_path(path, [&] { return BoxSpec(std::move(branches)); });
}

KeepConstraint parse_keep(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "one") return KeepOne{};
    throw ParseError(path, "unknown keep constraint '" + j.get<std::string>() + "'");
  }
  if (!j.is_object() || j.size() != 1) {
    throw ParseError(path, "expected \"one\", {\"k\"}, {\"knapsack\"} or {\"partition\"}");
  }
  if (j.contains("k")) {
    return KeepCardinality{static_cast<int>(integer(j["k"], join(path, "k")))};
  }
  if (j.contains("knapsack")) {
    const std::string p = join(path, "knapsack");
    const json& k = j["knapsack"];
    KeepKnapsack c;
    c.capacity = number(field(k, p, "C"), join(p, "C"));
    const json& sizes = field(k, p, "sizes");
    if (!sizes.is_object()) throw ParseError(join(p, "sizes"), "expected an object");
    for (auto it = sizes.begin(); it != sizes.end(); ++it) {
      c.sizes[type_key(it.key(), join(p, "sizes"))] =
          number(it.value(), join(join(p, "sizes"), it.key()));
    }
    return c;
  }
  if (j.contains("partition")) {
    const std::string p = join(path, "partition");
    const json& k = j["partition"];
    KeepPartition c;
    const json& groups = field(k, p, "groups");
    if (!groups.is_object()) throw ParseError(join(p, "groups"), "expected an object");
    for (auto it = groups.begin(); it != groups.end(); ++it) {
      c.groups[type_key(it.key(), join(p, "groups"))] = static_cast<int>(
          integer(it.value(), join(join(p, "groups"), it.key())));
    }
    const json& caps = array(field(k, p, "caps"), join(p, "caps"));
    for (std::size_t i = 0; i < caps.size(); ++i) {
      c.caps.push_back(static_cast<int>(integer(caps[i], index(join(p, "caps"), i))));
    }
    return c;
  }
  throw ParseError(path, "unknown keep constraint kind '" + j.begin().key() + "'");
}

OpenConstraint parse_open(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "none") return OpenUnconstrained{};
    throw ParseError(path, "unknown open constraint '" + j.get<std::string>() + "'");
  }
  if (j.is_object() && j.size() == 1 && j.contains("rounds")) {
    return OpenOnePerRound{static_cast<int>(integer(j["rounds"], join(path, "rounds")))};
  }
  throw ParseError(path, "expected \"none\" or {\"rounds\": R}");
}

Instance parse_pandora(const json& doc) {
  Instance inst;
  if (doc.contains("id")) {
    if (!doc["id"].is_string()) throw ParseError("id", "expected a string");
    inst.id = doc["id"].get<std::string>();
  }
  const json& boxes = array(field(doc, "", "boxes"), "boxes");
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string p = index("boxes", i);
    long long repeat = 1;
    if (boxes[i].is_object() && boxes[i].contains("repeat")) {
      repeat = integer(boxes[i]["repeat"], join(p, "repeat"));
      if (repeat < 1) throw ParseError(join(p, "repeat"), "must be >= 1");
    }
    BoxSpec box = parse_box(boxes[i], p);
    for (long long r = 0; r < repeat; ++r) inst.boxes.push_back(box);
  }
  if (inst.boxes.empty()) throw ParseError("boxes", "no boxes");
  if (doc.contains("constraint")) {
    const json& c = doc["constraint"];
    if (!c.is_object()) throw ParseError("constraint", "expected an object");
    if (c.contains("keep")) inst.keep = parse_keep(c["keep"], "constraint.keep");
    if (c.contains("open")) inst.open = parse_open(c["open"], "constraint.open");
  }
  at_path("constraint", [&] { validate(inst); });
  return inst;
}

MultiArmInstance parse_multiarm(const json& doc) {
  MultiArmInstance inst;
  if (doc.contains("id")) {
    if (!doc["id"].is_string()) throw ParseError("id", "expected a string");
    inst.id = doc["id"].get<std::string>();
  }
  inst.rounds = static_cast<int>(integer(field(doc, "", "rounds"), "rounds"));
  const json& arms = array(field(doc, "", "arms"), "arms");
  for (std::size_t t = 0; t < arms.size(); ++t) {
    const std::string p = index("arms", t);
    const double cost = number(field(arms[t], p, "cost"), join(p, "cost"));
    const std::string vp = join(p, "values");
    const json& vals = array(field(arms[t], p, "values"), vp);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const std::string ap = index(vp, i);
      const json& a = array(vals[i], ap);
      if (a.size() != 2) throw ParseError(ap, "expected [value, prob]");
      atoms.push_back({number(a[0], ap + "[0]"), number(a[1], ap + "[1]")});
    }
    DiscreteDist d = at_path(vp, [&] { return DiscreteDist(std::move(atoms)); });
    inst.arms.push_back({cost, std::move(d)});
  }
  at_path("", [&] { validate(inst); });
  return inst;
}

json joint_json(const JointVC& law) {
  json atoms = json::array();
  for (const JointAtom& a : law.atoms()) atoms.push_back({a.value, a.cost, a.prob});
  return atoms;
}

}  // namespace

AnyInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "expected a top-level object");
  const json& kind = field(doc, "", "kind");
  if (!kind.is_string()) throw ParseError("kind", "expected a string");
  if (kind == "pandora") return parse_pandora(doc);
  if (kind == "multiarm") return parse_multiarm(doc);
  throw ParseError("kind", "unknown kind '" + kind.get<std::string>() + "'");
}

AnyInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read instance file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  AnyInstance inst = parse_instance(text.str());
  std::visit(
      [&](auto& i) {
        if (i.id.empty()) i.id = path.stem().string();
      },
      inst);
  return inst;
}

std::string to_json(const Instance& instance) {
  json doc;
  doc["kind"] = "pandora";
  doc["id"] = instance.id;
  json boxes = json::array();
  for (const BoxSpec& box : instance.boxes) {
    json b;
    json td = json::array();
    json pt = json::object();
    for (const TypeBranch& t : box.branches()) {
      td.push_back({t.type, t.prob});
      pt[std::to_string(t.type)] = {{"atoms", joint_json(t.law)}};
    }
    b["type_dist"] = td;
    b["per_type"] = pt;
    boxes.push_back(b);
  }
  doc["boxes"] = boxes;
  json keep;
  if (std::holds_alternative<KeepOne>(instance.keep)) {
    keep = "one";
  } else if (const auto* c = std::get_if<KeepCardinality>(&instance.keep)) {
    keep = {{"k", c->k}};
  } else if (const auto* k = std::get_if<KeepKnapsack>(&instance.keep)) {
    json sizes = json::object();
    for (const auto& [t, s] : k->sizes) sizes[std::to_string(t)] = s;
    keep = {{"knapsack", {{"sizes", sizes}, {"C", k->capacity}}}};
  } else if (const auto* p = std::get_if<KeepPartition>(&instance.keep)) {
    json groups = json::object();
    for (const auto& [t, g] : p->groups) groups[std::to_string(t)] = g;
    keep = {{"partition", {{"groups", groups}, {"caps", p->caps}}}};
  }
  json open = "none";
  if (const auto* r = std::get_if<OpenOnePerRound>(&instance.open)) {
    open = {{"rounds", r->rounds}};
  }
  doc["constraint"] = {{"keep", keep}, {"open", open}};
  return doc.dump(2);
}

std::string to_json(const MultiArmInstance& instance) {
  json doc;
  doc["kind"] = "multiarm";
  doc["id"] = instance.id;
  doc["rounds"] = instance.rounds;
  json arms = json::array();
  for (const Arm& arm : instance.arms) {
    json vals = json::array();
    for (const Atom& a : arm.values.atoms()) vals.push_back({a.value, a.prob});
    arms.push_back({{"cost", arm.cost}, {"values", vals}});
  }
  doc["arms"] = arms;
  return doc.dump(2);
}

}  // namespace pandora
