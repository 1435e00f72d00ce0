#include "compactify/io.hpp"

#include <limits>
#include <map>

#include "compactify/error.hpp"

namespace compactify {

namespace {

// A JSON value plus its pointer-style path, for diagnostics.
class Field {
 public:
  Field(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "field " + (path_.empty() ? std::string("/") : path_) + ": " + what);
  }

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Field at(const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail("missing key '" + key + "'");
    return Field(*it, path_ + "/" + key);
  }

  std::size_t array_size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  Field at(std::size_t i) const { return Field((*j_)[i], path_ + "/" + std::to_string(i)); }

  std::uint64_t as_uint() const {
    if (!j_->is_number_integer() || j_->is_number_float()) fail("expected a non-negative integer");
    if (j_->is_number_integer() && !j_->is_number_unsigned() && j_->get<std::int64_t>() < 0) {
      fail("expected a non-negative integer");
    }
    return j_->get<std::uint64_t>();
  }

  Point as_point() const {
    const std::uint64_t v = as_uint();
    if (v > std::numeric_limits<Point>::max()) fail("index too large");
    return static_cast<Point>(v);
  }

  std::size_t as_size() const { return static_cast<std::size_t>(as_uint()); }

  std::string as_string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool as_bool() const {
    if (!j_->is_boolean()) fail("expected a boolean");
    return j_->get<bool>();
  }

  std::vector<Point> as_points() const {
    std::vector<Point> out;
    const std::size_t n = array_size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i).as_point());
    return out;
  }

 private:
  const Json* j_;
  std::string path_;
};

SelfmapSystem system_from(const Field& f) {
  const std::uint64_t size = f.at("size").as_uint();
  if (size == 0) f.at("size").fail("a system needs at least one point");
  const Field map = f.at("map");
  if (map.array_size() != size) {
    map.fail("has " + std::to_string(map.array_size()) + " entries, size is " + std::to_string(size));
  }
  std::vector<Point> table;
  table.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const Field entry = map.at(i);
    const Point t = entry.as_point();
    if (t >= size) entry.fail("index " + std::to_string(t) + " is outside [0, " + std::to_string(size) + ")");
    table.push_back(t);
  }
  return SelfmapSystem(std::move(table));
}

std::optional<std::size_t> parse_ray_name(const std::string& s) {
  if (s.size() < 2 || s[0] != 'b') return std::nullopt;
  std::size_t n = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(s[i] - '0');
  }
  return n;
}

RayPresentation ray_from(const Field& f) {
  RayPresentation ray;
  ray.prefix = f.at("prefix").as_size();
  if (f.has("star_included")) ray.star_included = f.at("star_included").as_bool();
  const Field branches = f.at("branches");
  const std::size_t count = branches.array_size();

  std::map<std::string, std::pair<std::size_t, std::size_t>> where;
  for (std::size_t b = 0; b < count; ++b) {
    const Field nodes = branches.at(b).at("nodes");
    RayBranch branch;
    for (std::size_t i = 0; i < nodes.array_size(); ++i) {
      branch.nodes.push_back(nodes.at(i).as_string());
      where.emplace(branch.nodes.back(), std::make_pair(b, i));
    }
    ray.branches.push_back(std::move(branch));
  }
  for (std::size_t b = 0; b < count; ++b) {
    const Field parent = branches.at(b).at("parent");
    if (!parent.json().is_object()) parent.fail("expected an object");
    RayBranch& branch = ray.branches[b];
    for (const std::string& name : branch.nodes) {
      const Field ref = parent.at(name);
      const std::string target = ref.as_string();
      RayNodeRef r;
      if (target == "*") {
        r.kind = RayNodeRef::Kind::Star;
      } else if (auto n = parse_ray_name(target)) {
        r.kind = RayNodeRef::Kind::Ray;
        r.index = *n;
      } else if (auto it = where.find(target); it != where.end()) {
        r.kind = RayNodeRef::Kind::Node;
        r.branch = it->second.first;
        r.index = it->second.second;
      } else {
        ref.fail("unknown node '" + target + "'");
      }
      branch.parent.push_back(r);
    }
    for (const auto& [key, value] : parent.json().items()) {
      if (std::find(branch.nodes.begin(), branch.nodes.end(), key) == branch.nodes.end()) {
        parent.fail("parent given for '" + key + "', which is not a node of this branch");
      }
    }
  }
  return ray;
}

std::string ref_name(const RayPresentation& ray, const RayNodeRef& r) {
  switch (r.kind) {
    case RayNodeRef::Kind::Star: return "*";
    case RayNodeRef::Kind::Ray: return ray_point_name(r.index);
    case RayNodeRef::Kind::Node: return ray.branches.at(r.branch).nodes.at(r.index);
  }
  return "*";
}

Partition partition_from(const Field& f) {
  std::vector<IndexSet> blocks;
  for (std::size_t i = 0; i < f.array_size(); ++i) blocks.push_back(f.at(i).as_points());
  try {
    return Partition::from_blocks(std::move(blocks));
  } catch (const Error& e) {
    f.fail(e.what());
  }
}

std::vector<Partition> partitions_from(const Field& f) {
  std::vector<Partition> out;
  for (std::size_t i = 0; i < f.array_size(); ++i) out.push_back(partition_from(f.at(i)));
  return out;
}

Json order_json(const AtomOrder& o) { return Json{{"atom", o.atom}, {"sequence", o.sequence}, {"last", o.last}}; }

AtomOrder order_from(const Field& f) {
  AtomOrder o;
  o.atom = f.at("atom").as_points();
  o.sequence = f.at("sequence").as_points();
  o.last = f.at("last").as_point();
  return o;
}

Json lex_json(const LexEntry& e) {
  return Json{{"point", e.point}, {"atom", e.atom},           {"position", e.position},
              {"image", e.image}, {"image_atom", e.image_atom}, {"image_position", e.image_position}};
}

LexEntry lex_from(const Field& f) {
  LexEntry e;
  e.point = f.at("point").as_point();
  e.atom = f.at("atom").as_size();
  e.position = f.at("position").as_size();
  e.image = f.at("image").as_point();
  e.image_atom = f.at("image_atom").as_size();
  e.image_position = f.at("image_position").as_size();
  return e;
}

ChainWitness chain_witness_from(const Field& f) {
  ChainWitness cw;
  cw.atomization.pis = partitions_from(f.at("pis"));
  cw.atomization.lambdas = partitions_from(f.at("lambdas"));
  const Field orders = f.at("orders");
  for (std::size_t k = 0; k < orders.array_size(); ++k) {
    const Field level = orders.at(k);
    cw.orders.emplace_back();
    for (std::size_t a = 0; a < level.array_size(); ++a) cw.orders.back().push_back(order_from(level.at(a)));
  }
  const Field lex = f.at("lex");
  for (std::size_t k = 0; k < lex.array_size(); ++k) {
    const Field level = lex.at(k);
    cw.lex.emplace_back();
    for (std::size_t i = 0; i < level.array_size(); ++i) cw.lex.back().push_back(lex_from(level.at(i)));
  }
  return cw;
}

std::string_view kind_name(AddressKind k) {
  switch (k) {
    case AddressKind::Star: return "star";
    case AddressKind::Class: return "class";
    case AddressKind::Branch: return "branch";
  }
  return "star";
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": malformed JSON");
  }
}

Instance instance_from_json(const Json& j) {
  const Field root(j, "");
  if (!j.is_object()) root.fail("expected an object");
  if (j.contains("ray")) return ray_from(root.at("ray"));
  return system_from(root);
}

Instance parse_instance(std::string_view text) { return instance_from_json(parse_json_text(text)); }

Json to_json(const SelfmapSystem& system) { return Json{{"size", system.size()}, {"map", system.table()}}; }

Json to_json(const RayPresentation& ray) {
  Json branches = Json::array();
  for (const RayBranch& b : ray.branches) {
    Json parent = Json::object();
    for (std::size_t i = 0; i < b.nodes.size() && i < b.parent.size(); ++i) {
      parent[b.nodes[i]] = ref_name(ray, b.parent[i]);
    }
    branches.push_back(Json{{"nodes", b.nodes}, {"parent", parent}});
  }
  return Json{{"ray", Json{{"prefix", ray.prefix}, {"branches", branches}, {"star_included", ray.star_included}}}};
}

Json to_json(const Instance& instance) {
  return std::visit([](const auto& v) { return to_json(v); }, instance);
}

Json to_json(const ConditionReport& r) {
  return Json{{"holds", r.holds},
              {"fixed_point", r.fixed_point ? Json(*r.fixed_point) : Json(nullptr)},
              {"stabilized_at", r.stabilized_at},
              {"eventual_image", r.eventual_image}};
}

Json to_json(const Partition& p) { return Json(p.blocks()); }

Json to_json(const ClassDecomposition& forest) {
  Json classes = Json::array();
  for (const GrandOrbitClass& c : forest.classes) {
    classes.push_back(Json{{"members", c.members},
                           {"kind", c.kind == ClassKind::First ? "first" : "second"},
                           {"seed", c.seed}});
  }
  return Json{{"star", forest.star}, {"classes", classes}};
}

Json to_json(const Chain& chain) {
  Json maps = Json::array();
  for (const MapBetween& m : chain.maps()) maps.push_back(m.images());
  return Json{{"levels", chain.levels()}, {"maps", maps}};
}

Json to_json(const Atomization& atom) {
  Json pis = Json::array();
  Json lambdas = Json::array();
  for (const Partition& p : atom.pis) pis.push_back(to_json(p));
  for (const Partition& p : atom.lambdas) lambdas.push_back(to_json(p));
  return Json{{"pis", pis}, {"lambdas", lambdas}};
}

Json to_json(const ChainWitness& w) {
  Json j = to_json(w.atomization);
  Json orders = Json::array();
  for (const auto& level : w.orders) {
    Json l = Json::array();
    for (const AtomOrder& o : level) l.push_back(order_json(o));
    orders.push_back(l);
  }
  Json lex = Json::array();
  for (const auto& level : w.lex) {
    Json l = Json::array();
    for (const LexEntry& e : level) l.push_back(lex_json(e));
    lex.push_back(l);
  }
  j["orders"] = orders;
  j["lex"] = lex;
  return j;
}

Json to_json(const TopologyWitness& w) {
  Json classes = Json::array();
  for (const ClassWitness& c : w.classes) {
    classes.push_back(Json{{"seed", c.seed}, {"members", c.members}, {"chain", to_json(c.chain)}});
  }
  Json branches = Json::array();
  for (const BranchWitness& b : w.branches) {
    branches.push_back(Json{{"ray_index", b.ray_index}, {"chain", to_json(b.chain)}});
  }
  Json addresses = Json::array();
  for (const PointAddress& a : w.addresses) {
    addresses.push_back(Json{{"point", a.point},
                             {"kind", kind_name(a.kind)},
                             {"component", a.component},
                             {"level", a.level},
                             {"atom", a.atom},
                             {"position", a.position}});
  }
  Json tail = nullptr;
  if (w.tail) {
    tail = Json{{"from", w.tail->from},
                {"branch_cardinality",
                 w.tail->branch_cardinality ? Json(*w.tail->branch_cardinality) : Json("infinite")}};
  }
  Json j{{"source", w.source == WitnessSource::Finite ? "finite" : "ray"},
         {"star", w.star},
         {"points", w.point_count},
         {"classes", classes},
         {"branches", branches},
         {"tail", tail},
         {"addresses", addresses}};
  if (!w.names.empty()) j["names"] = w.names;
  return j;
}

Json to_json(const CheckReport& r) {
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    violations.push_back(Json{{"location", v.location}, {"rule", rule_id(v.rule)}, {"description", v.description}});
  }
  return Json{{"passed", r.passed()}, {"violations", violations}};
}

Partition partition_from_json(const Json& j) { return partition_from(Field(j, "")); }

TopologyWitness witness_from_json(const Json& j) {
  const Field f(j, "");
  TopologyWitness w;
  const std::string source = f.at("source").as_string();
  if (source == "finite") {
    w.source = WitnessSource::Finite;
  } else if (source == "ray") {
    w.source = WitnessSource::Ray;
  } else {
    f.at("source").fail("expected 'finite' or 'ray'");
  }
  w.star = f.at("star").as_point();
  w.point_count = f.at("points").as_size();

  const Field classes = f.at("classes");
  for (std::size_t i = 0; i < classes.array_size(); ++i) {
    const Field c = classes.at(i);
    w.classes.push_back({c.at("seed").as_point(), c.at("members").as_points(), chain_witness_from(c.at("chain"))});
  }
  const Field branches = f.at("branches");
  for (std::size_t i = 0; i < branches.array_size(); ++i) {
    const Field b = branches.at(i);
    w.branches.push_back({b.at("ray_index").as_size(), chain_witness_from(b.at("chain"))});
  }
  const Field tail = f.at("tail");
  if (!tail.json().is_null()) {
    TailSchema t;
    t.from = tail.at("from").as_size();
    const Field card = tail.at("branch_cardinality");
    if (card.json().is_string()) {
      if (card.as_string() != "infinite") card.fail("expected a count or 'infinite'");
      t.branch_cardinality = std::nullopt;
    } else {
      t.branch_cardinality = card.as_size();
    }
    w.tail = t;
  }
  const Field addresses = f.at("addresses");
  for (std::size_t i = 0; i < addresses.array_size(); ++i) {
    const Field a = addresses.at(i);
    PointAddress pa;
    pa.point = a.at("point").as_point();
    const std::string kind = a.at("kind").as_string();
    if (kind == "star") {
      pa.kind = AddressKind::Star;
    } else if (kind == "class") {
      pa.kind = AddressKind::Class;
    } else if (kind == "branch") {
      pa.kind = AddressKind::Branch;
    } else {
      a.at("kind").fail("expected 'star', 'class' or 'branch'");
    }
    pa.component = a.at("component").as_size();
    pa.level = a.at("level").as_size();
    pa.atom = a.at("atom").as_size();
    pa.position = a.at("position").as_size();
    w.addresses.push_back(pa);
  }
  if (f.has("names")) {
    const Field names = f.at("names");
    for (std::size_t i = 0; i < names.array_size(); ++i) w.names.push_back(names.at(i).as_string());
  }
  return w;
}

}  // namespace compactify
