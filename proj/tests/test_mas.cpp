#include <doctest.h>

#include <random>

#include "check_errc.hpp"
#include "fixtures.hpp"
#include "iiot/mas.hpp"
#include "random_models.hpp"

using namespace iiot;
using fixtures::d;

namespace {

MasModel example_mas() { return MasModel(2, 3, {{{0, 1}, {1, 2}}, {{0, 1}, {1, 1}}}); }

void check_structure_agrees(const MasModel& m) {
  const StructureMatrix f = build_structure_matrix(m);
  const std::size_t n = m.state_count();
  REQUIRE(f.matrix().rows() == n);
  REQUIRE(f.matrix().cols() == n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t a = 0; a < n; ++a) {
      const auto next = step_logical(m, m.decode(a), m.decode(u));
      const LogicalVector expected = m.encode(next);
      const LogicalVector ua = stp(LogicalVector(n, u + 1), LogicalVector(n, a + 1));
      CHECK(stp_logical(f.matrix(), ua) == expected);
      CHECK(f.next(u, a) == expected.offset());
    }
}

}  // namespace

TEST_CASE("modular agent dynamics") {
  const MasModel m = example_mas();
  const std::vector<int> a{1, 0}, u{2, 0};
  CHECK(step_logical(m, a, u) == std::vector<int>{0, 1});
  const std::vector<int> b{1, 1}, v{1, 0};
  CHECK(step_logical(m, b, v) == std::vector<int>{1, 2});

  const MasModel zero(3, 4, {{{0, 0}}, {{1, 0}, {0, 0}}, {{2, 0}}});
  const std::vector<int> any{3, 1, 2}, none{0, 0, 0};
  CHECK(step_logical(zero, any, none) == none);

  const std::vector<int> bad{3, 0};
  CHECK_ERRC(step_logical(m, bad, u), Errc::ValueOutOfDomain);
  const std::vector<int> short_t{1};
  CHECK_ERRC(step_logical(m, short_t, u), Errc::DimensionMismatch);
}

TEST_CASE("model validation") {
  CHECK_ERRC(MasModel(1, 1, {{{0, 0}}}), Errc::ValidationError);
  CHECK_ERRC(MasModel(2, 3, {{{0, 3}}, {}}), Errc::ValidationError);
  CHECK_ERRC(MasModel(2, 3, {{{2, 1}}, {}}), Errc::ValidationError);
  CHECK_ERRC(MasModel(2, 3, {{{1, 1}, {1, 2}}, {}}), Errc::ValidationError);
  CHECK_NOTHROW(MasModel(2, 4, {{{0, 3}}, {{0, 2}}}));  // composite kappa is fine
  CHECK(example_mas().in_neighbors(0) == std::vector<std::size_t>{1});
}

TEST_CASE("structure matrix columns") {
  const MasModel one(1, 2, {{{0, 1}}});
  CHECK(build_structure_matrix(one).matrix().column(0) == 1);

  const MasModel m = example_mas();
  const StructureMatrix f = build_structure_matrix(m);
  CHECK(f.next(d(7), d(4)) == d(2));
  CHECK(stp_logical(f.matrix(), LogicalVector(81, (7 - 1) * 9 + 4)) == LogicalVector(9, 2));
}

TEST_CASE("structure matrix agrees with the tuple dynamics") {
  check_structure_agrees(example_mas());
  std::mt19937_64 g(41);
  const std::pair<std::size_t, int> shapes[] = {{1, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 4}, {2, 5}, {1, 7}};
  for (int rep = 0; rep < 3; ++rep)
    for (auto [n, k] : shapes) check_structure_agrees(fixtures::random_mas(g, n, k));
}

TEST_CASE("admissible inputs in the example") {
  const Scenario sc = fixtures::bundled_scenario();
  const auto& f = sc.structure;
  const auto& c = sc.constraints;
  CHECK(admissible_inputs(f, c, d(4), d(2)).to_vector() == std::vector<std::size_t>{d(7)});
  CHECK(admissible_inputs(f, c, d(4), d(4)).empty());

  // With every input allowed, each (a,b) pair still admits at most one input.
  const ConstraintSets all = ConstraintSets::uniform(IndexSet::full(9), IndexSet::full(9));
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) CHECK(admissible_inputs(f, all, a, b).size() == 1);

  ConstraintSets none = c;
  none.inputs[d(4)] = IndexSet(9);
  for (std::size_t b = 0; b < 9; ++b) CHECK(admissible_inputs(f, none, d(4), b).empty());
}

TEST_CASE("one-step reachable sets") {
  const Scenario sc = fixtures::bundled_scenario();
  // From (1,0): δ7 → δ2 and δ8 → δ3; δ4 and δ5 lead to δ8 and δ9, outside C_α.
  CHECK(one_step_reach(sc.structure, sc.constraints, d(4)).to_vector() == std::vector<std::size_t>{d(2), d(3)});
  CHECK_ERRC(one_step_reach(sc.structure, sc.constraints, d(9)), Errc::StateNotInConstraint);

  ConstraintSets none = sc.constraints;
  none.inputs[d(4)] = IndexSet(9);
  CHECK(one_step_reach(sc.structure, none, d(4)).empty());

  const MasModel single(1, 2, {{{0, 1}}});
  const auto f1 = build_structure_matrix(single);
  const auto full = ConstraintSets::uniform(IndexSet::full(2), IndexSet::full(2));
  for (std::size_t a = 0; a < 2; ++a) CHECK(one_step_reach(f1, full, a) == IndexSet::full(2));
}

TEST_CASE("one-step reach equals direct enumeration") {
  std::mt19937_64 g(43);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = fixtures::random_instance(g);
    const std::size_t n = r.mas.state_count();
    r.constraints.states.for_each([&](std::size_t a) {
      IndexSet expected(n);
      r.constraints.inputs[a].for_each([&](std::size_t u) {
        const auto next = r.mas.encode(step_logical(r.mas, r.mas.decode(a), r.mas.decode(u))).offset();
        if (r.constraints.states.contains(next)) expected.insert(next);
      });
      CHECK(one_step_reach(r.f, r.constraints, a) == expected);
      for (std::size_t b = 0; b < n; ++b) {
        const auto us = admissible_inputs(r.f, r.constraints, a, b);
        us.for_each([&](std::size_t u) { CHECK(r.f.next(u, a) == b); });
      }
    });
  }
}
