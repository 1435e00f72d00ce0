#include "compactify/system_model.hpp"

#include <algorithm>
#include <set>

#include "compactify/error.hpp"

namespace compactify {

SelfmapSystem::SelfmapSystem(std::vector<Point> map) : map_(std::move(map)) {
  if (map_.empty()) throw Error(ErrorKind::InvalidSystem, "a system needs at least one point");
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] >= map_.size()) {
      throw Error(ErrorKind::InvalidSystem, "map[" + std::to_string(i) + "] = " +
                                                std::to_string(map_[i]) + " is outside [0, " +
                                                std::to_string(map_.size()) + ")");
    }
  }
}

ConditionReport check_condition(const SelfmapSystem& system) {
  const std::size_t n = system.size();
  std::vector<char> current(n, 1);
  std::size_t step = 0;
  for (;;) {
    std::vector<char> next(n, 0);
    for (Point x = 0; x < n; ++x) {
      if (current[x]) next[system(x)] = 1;
    }
    if (next == current) break;
    current = std::move(next);
    ++step;
  }

  ConditionReport report;
  report.stabilized_at = step;
  for (Point x = 0; x < n; ++x) {
    if (current[x]) report.eventual_image.push_back(x);
  }
  if (report.eventual_image.size() == 1 && system(report.eventual_image.front()) == report.eventual_image.front()) {
    report.holds = true;
    report.fixed_point = report.eventual_image.front();
  }
  return report;
}

IndexSet preimage(const SelfmapSystem& system, const IndexSet& targets) {
  std::vector<char> wanted(system.size(), 0);
  for (Point t : targets) {
    if (t >= system.size()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "point " + std::to_string(t) + " is not in a system of size " + std::to_string(system.size()));
    }
    wanted[t] = 1;
  }
  IndexSet out;
  for (Point x = 0; x < system.size(); ++x) {
    if (wanted[system(x)]) out.push_back(x);
  }
  return out;
}

std::vector<Point> orbit(const SelfmapSystem& system, Point x) {
  if (x >= system.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "orbit start " + std::to_string(x) + " is out of range");
  }
  std::vector<char> seen(system.size(), 0);
  std::vector<Point> out;
  while (!seen[x]) {
    seen[x] = 1;
    out.push_back(x);
    x = system(x);
  }
  return out;
}

// --- ray presentations ------------------------------------------------------

std::string ray_point_name(std::size_t n) { return "b" + std::to_string(n); }

namespace {

bool reserved_name(const std::string& name) {
  if (name == "*") return true;
  if (name.size() < 2 || name[0] != 'b') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

[[noreturn]] void invalid(std::size_t branch, const std::string& what) {
  throw Error(ErrorKind::InvalidPresentation, "branch " + std::to_string(branch) + ": " + what);
}

}  // namespace

void validate(const RayPresentation& ray) {
  if (!ray.star_included) {
    throw Error(ErrorKind::InvalidPresentation, "the fixed point x* must be included");
  }
  if (ray.branches.size() != ray.prefix) {
    throw Error(ErrorKind::InvalidPresentation, "prefix is " + std::to_string(ray.prefix) + " but " +
                                                    std::to_string(ray.branches.size()) +
                                                    " branches are given");
  }
  std::set<std::string> names;
  for (std::size_t n = 0; n < ray.branches.size(); ++n) {
    const RayBranch& branch = ray.branches[n];
    if (branch.parent.size() != branch.nodes.size()) invalid(n, "every node needs exactly one parent");
    for (const std::string& name : branch.nodes) {
      if (name.empty()) invalid(n, "empty node name");
      if (reserved_name(name)) invalid(n, "node name '" + name + "' is reserved");
      if (!names.insert(name).second) invalid(n, "node name '" + name + "' is used twice");
    }
    for (std::size_t i = 0; i < branch.nodes.size(); ++i) {
      const RayNodeRef& p = branch.parent[i];
      const std::string& name = branch.nodes[i];
      switch (p.kind) {
        case RayNodeRef::Kind::Star:
          invalid(n, "node '" + name + "' maps into x*");
        case RayNodeRef::Kind::Ray:
          if (p.index != n) {
            invalid(n, "node '" + name + "' attaches to " + ray_point_name(p.index) + " instead of " +
                           ray_point_name(n));
          }
          break;
        case RayNodeRef::Kind::Node:
          if (p.branch != n) invalid(n, "node '" + name + "' maps into another branch");
          if (p.index >= branch.nodes.size()) invalid(n, "node '" + name + "' has a dangling parent");
          break;
      }
    }
    // Every node must reach the root b_n; walking more than |nodes| steps means a cycle.
    for (std::size_t i = 0; i < branch.nodes.size(); ++i) {
      std::size_t at = i;
      std::size_t steps = 0;
      while (branch.parent[at].kind == RayNodeRef::Kind::Node) {
        at = branch.parent[at].index;
        if (++steps > branch.nodes.size()) invalid(n, "node '" + branch.nodes[i] + "' lies on a cycle");
      }
    }
  }
}

RayLayout::RayLayout(const RayPresentation& ray) : prefix_(ray.prefix) {
  validate(ray);
  names_.push_back("*");
  image_.push_back(Point{0});
  branch_of_.push_back(0);
  depth_.push_back(0);
  for (std::size_t n = 0; n < prefix_; ++n) {
    names_.push_back(ray_point_name(n));
    image_.push_back(n + 1 < prefix_ ? std::optional<Point>(static_cast<Point>(n + 2)) : std::nullopt);
    branch_of_.push_back(n);
    depth_.push_back(0);
  }
  for (std::size_t n = 0; n < prefix_; ++n) {
    node_offset_.push_back(names_.size());
    for (const std::string& name : ray.branches[n].nodes) {
      names_.push_back(name);
      branch_of_.push_back(n);
      depth_.push_back(0);
      image_.push_back(std::nullopt);
    }
  }
  branch_depth_.assign(prefix_, 0);
  for (std::size_t n = 0; n < prefix_; ++n) {
    const RayBranch& branch = ray.branches[n];
    for (std::size_t i = 0; i < branch.nodes.size(); ++i) {
      const RayNodeRef& p = branch.parent[i];
      image_[node_offset_[n] + i] =
          p.kind == RayNodeRef::Kind::Ray ? ray_point(n) : node_point(n, p.index);
      std::size_t depth = 1;
      for (std::size_t at = i; branch.parent[at].kind == RayNodeRef::Kind::Node; at = branch.parent[at].index) {
        ++depth;
      }
      depth_[node_offset_[n] + i] = depth;
      branch_depth_[n] = std::max(branch_depth_[n], depth);
    }
  }
}

Point RayLayout::ray_point(std::size_t n) const {
  if (n >= prefix_) throw Error(ErrorKind::IndexOutOfRange, ray_point_name(n) + " lies in the tail");
  return static_cast<Point>(n + 1);
}

Point RayLayout::node_point(std::size_t branch, std::size_t i) const {
  return static_cast<Point>(node_offset_.at(branch) + i);
}

std::optional<Point> RayLayout::image(Point p) const { return image_.at(p); }

ConditionReport check_condition_ray(const RayPresentation& ray) {
  const RayLayout layout(ray);
  std::size_t depth = 0;
  for (std::size_t n = 0; n < layout.prefix(); ++n) depth = std::max(depth, layout.branch_depth(n));
  ConditionReport report;
  report.holds = true;
  report.fixed_point = RayLayout::star();
  report.stabilized_at = depth + layout.prefix();
  report.eventual_image = {RayLayout::star()};
  return report;
}

}  // namespace compactify
