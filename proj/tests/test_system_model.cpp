#include <random>

#include "compactify/error.hpp"
#include "compactify/system_model.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace compactify;

namespace {

RayPresentation attached_ray() {
  RayPresentation ray;
  ray.prefix = 2;
  ray.branches.resize(2);
  ray.branches[1].nodes = {"c"};
  ray.branches[1].parent = {{RayNodeRef::Kind::Ray, 0, 1}};
  return ray;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("check_condition on a single fixed point") {
  const ConditionReport r = check_condition(SelfmapSystem({0}));
  CHECK(r.holds);
  CHECK(r.fixed_point == Point{0});
  CHECK(r.eventual_image == IndexSet{0});
  CHECK(r.stabilized_at == 0);
}

TEST_CASE("check_condition shrinks [0,0,0,1] to 0 after two steps") {
  const ConditionReport r = check_condition(SelfmapSystem({0, 0, 0, 1}));
  CHECK(r.holds);
  CHECK(r.fixed_point == Point{0});
  CHECK(r.eventual_image == IndexSet{0});
  CHECK(r.stabilized_at == 2);
}

TEST_CASE("check_condition rejects a swap") {
  const ConditionReport r = check_condition(SelfmapSystem({1, 0}));
  CHECK_FALSE(r.holds);
  CHECK_FALSE(r.fixed_point.has_value());
  CHECK(r.eventual_image == IndexSet{0, 1});
  CHECK(r.stabilized_at == 0);
}

TEST_CASE("check_condition rejects two fixed points") {
  const ConditionReport r = check_condition(SelfmapSystem({0, 1, 0}));
  CHECK_FALSE(r.holds);
  CHECK(r.eventual_image == IndexSet{0, 1});
}

TEST_CASE("eventual image equals cycle points and images shrink monotonically") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<Point> map(n);
    for (auto& m : map) m = static_cast<Point>(rng() % n);
    const SelfmapSystem system(map);
    const ConditionReport r = check_condition(system);
    CHECK(r.eventual_image == oracle::cycle_points(map));
    CHECK(r.stabilized_at <= n);
    CHECK(r.holds == oracle::unique_self_loop(map));
    CHECK(check_condition(system) == r);

    // T^{n+1}X is contained in T^n X at every step up to stabilization.
    IndexSet image(n);
    for (Point x = 0; x < n; ++x) image[x] = x;
    for (std::size_t step = 0; step <= r.stabilized_at; ++step) {
      std::vector<Point> next;
      for (Point x : image) next.push_back(map[x]);
      const IndexSet next_set = make_index_set(next);
      CHECK(std::includes(image.begin(), image.end(), next_set.begin(), next_set.end()));
      image = next_set;
    }
    CHECK(image == r.eventual_image);
  }
}

TEST_CASE("SelfmapSystem rejects empty and non-total tables") {
  CHECK(kind_of([] { SelfmapSystem({}); }) == ErrorKind::InvalidSystem);
  CHECK(kind_of([] { SelfmapSystem({0, 2}); }) == ErrorKind::InvalidSystem);
}

TEST_CASE("preimage") {
  const SelfmapSystem s({0, 0, 0, 1});
  CHECK(preimage(s, {0}) == IndexSet{0, 1, 2});
  CHECK(preimage(s, {}).empty());
  CHECK(preimage(s, {1}) == IndexSet{3});
  CHECK(kind_of([&] { preimage(s, {4}); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("orbit stops at the first repetition") {
  CHECK(orbit(SelfmapSystem({0, 0, 0, 1}), 3) == std::vector<Point>{3, 1, 0});
  CHECK(orbit(SelfmapSystem({0, 0, 0, 1}), 0) == std::vector<Point>{0});
  CHECK(orbit(SelfmapSystem({1, 0}), 0) == std::vector<Point>{0, 1});
  CHECK(kind_of([] { orbit(SelfmapSystem({0}), 1); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("check_condition_ray on valid presentations") {
  const ConditionReport bare = check_condition_ray(RayPresentation{});
  CHECK(bare.holds);
  CHECK(bare.fixed_point == Point{0});
  CHECK(bare.eventual_image == IndexSet{0});
  CHECK(bare.stabilized_at == 0);

  const ConditionReport attached = check_condition_ray(attached_ray());
  CHECK(attached.holds);
  CHECK(attached.stabilized_at == 3);  // depth 1 + prefix 2
}

TEST_CASE("ray truncations satisfy the finite condition") {
  // Hand oracle: cutting the ray at b_M and sending b_M to x* gives a finite
  // system whose only cycle is x*, for every M >= prefix.
  for (const RayPresentation& ray : {RayPresentation{}, attached_ray()}) {
    for (std::size_t m = ray.prefix; m < ray.prefix + 6; ++m) {
      const oracle::Truncation t = oracle::truncate_ray(ray, m);
      CHECK(oracle::unique_self_loop(t.map));
      CHECK(check_condition(SelfmapSystem(t.map)).holds);
    }
  }
}

TEST_CASE("invalid ray presentations") {
  RayPresentation into_star;
  into_star.prefix = 1;
  into_star.branches.resize(1);
  into_star.branches[0].nodes = {"c"};
  into_star.branches[0].parent = {{RayNodeRef::Kind::Star, 0, 0}};
  CHECK(kind_of([&] { check_condition_ray(into_star); }) == ErrorKind::InvalidPresentation);

  RayPresentation wrong_root = attached_ray();
  wrong_root.branches[1].parent[0].index = 0;
  CHECK(kind_of([&] { validate(wrong_root); }) == ErrorKind::InvalidPresentation);

  RayPresentation cycle;
  cycle.prefix = 1;
  cycle.branches.resize(1);
  cycle.branches[0].nodes = {"c", "d"};
  cycle.branches[0].parent = {{RayNodeRef::Kind::Node, 0, 1}, {RayNodeRef::Kind::Node, 0, 0}};
  CHECK(kind_of([&] { validate(cycle); }) == ErrorKind::InvalidPresentation);

  RayPresentation short_prefix = attached_ray();
  short_prefix.prefix = 3;
  CHECK(kind_of([&] { validate(short_prefix); }) == ErrorKind::InvalidPresentation);

  RayPresentation dup = attached_ray();
  dup.branches[0].nodes = {"c"};
  dup.branches[0].parent = {{RayNodeRef::Kind::Ray, 0, 0}};
  CHECK(kind_of([&] { validate(dup); }) == ErrorKind::InvalidPresentation);

  RayPresentation reserved = attached_ray();
  reserved.branches[1].nodes = {"b7"};
  CHECK(kind_of([&] { validate(reserved); }) == ErrorKind::InvalidPresentation);

  RayPresentation cross = attached_ray();
  cross.branches[0].nodes = {"d"};
  cross.branches[0].parent = {{RayNodeRef::Kind::Node, 1, 0}};
  CHECK(kind_of([&] { validate(cross); }) == ErrorKind::InvalidPresentation);
}

TEST_CASE("RayLayout numbering") {
  const RayLayout layout(attached_ray());
  CHECK(layout.point_count() == 4);
  CHECK(layout.name(0) == "*");
  CHECK(layout.name(layout.ray_point(1)) == "b1");
  CHECK(layout.image(layout.ray_point(0)) == layout.ray_point(1));
  CHECK_FALSE(layout.image(layout.ray_point(1)).has_value());
  const Point c = layout.node_point(1, 0);
  CHECK(layout.name(c) == "c");
  CHECK(layout.image(c) == layout.ray_point(1));
  CHECK(layout.depth(c) == 1);
  CHECK(layout.branch_of(c) == 1);
}
