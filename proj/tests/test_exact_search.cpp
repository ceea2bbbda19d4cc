#include "doctest.h"
#include "oracles.hpp"
#include "spcp/error.hpp"
#include "spcp/exact_search.hpp"
#include "spcp/preprocess.hpp"

using namespace spcp;
using namespace spcp::testing;

TEST_CASE("evaluate_centers on the line fixture") {
  const auto inst = line_instance();
  const auto sol = evaluate_centers(inst, {3, 1});
  CHECK(sol.centers == std::vector<int>{1, 3});
  CHECK(sol.per_stratum_max == std::vector<double>{2, 4});
  CHECK(sol.objective == doctest::Approx(2.8));

  const auto all = evaluate_centers(build_instance(inst.dm, inst.strata, 3), {0, 1, 2});
  CHECK(all.per_stratum_max[0] == 0);

  for (const auto& bad : std::vector<std::vector<int>>{{1}, {1, 1}, {1, 7}, {0, 1, 2}}) {
    try {
      evaluate_centers(inst, bad);
      FAIL("expected BadCardinality");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadCardinality);
    }
  }
}

TEST_CASE("weight scaling is linear") {
  auto inst = line_instance();
  const auto a = evaluate_centers(inst, {0, 4});
  auto st = inst.strata;
  for (auto& w : st.weights) w *= 3;
  const auto b = evaluate_centers(build_instance(inst.dm, st, 2), {0, 4});
  CHECK(b.objective == doctest::Approx(3 * a.objective));
  CHECK(b.per_stratum_max == a.per_stratum_max);
}

TEST_CASE("brute force on fixtures") {
  const auto inst = line_instance();
  const auto sol = brute_force(inst);
  CHECK(sol.centers == std::vector<int>{1, 3});
  CHECK(sol.objective == doctest::Approx(2.8));
  CHECK(evaluate_centers(inst, {1, 4}).objective == doctest::Approx(2.8));
  CHECK(sol.proof == Proof::Exhaustive);
  CHECK(brute_force(build_instance(inst.dm, inst.strata, 5)).objective == 0);

  const auto r = random_instance(3, 10, 3, 1);
  StrataSet everyone;
  everyone.members = {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
  everyone.weights = {1};
  const auto single = build_instance(r.dm, everyone, 3);
  CHECK(brute_force(single).objective == pcenter_enumerate(single, everyone.members[0]));

  try {
    brute_force(random_instance(1, 40, 10, 2));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("combinatorial branch and bound matches brute force") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = 6 + static_cast<int>(seed % 9);
    const int p = 2 + static_cast<int>(seed % 4);
    const auto inst = random_instance(seed * 13, n, p, 1 + static_cast<int>(seed % 4));
    const auto bf = brute_force(inst);
    const auto idx = build_distance_index(inst);
    const auto plain = branch_and_bound_combinatorial(inst);
    const auto tight = branch_and_bound_combinatorial(inst, stratum_bounds(inst, idx, PreprocessMode::Binary));
    CAPTURE(seed);
    CHECK(plain.centers == bf.centers);
    CHECK(tight.centers == bf.centers);
    CHECK(plain.objective == bf.objective);
    CHECK(tight.nodes <= plain.nodes);
    CHECK(evaluate_centers(inst, bf.centers).objective == bf.objective);
    CHECK(bf.objective == doctest::Approx(spcp_enumerate(inst)));
  }
}

TEST_CASE("p = n - 1 leaves one site out") {
  const auto base = random_instance(9, 8, 2, 3);
  const auto inst = build_instance(base.dm, base.strata, 7);
  double best = 1e300;
  for (int out = 0; out < 8; ++out) {
    std::vector<int> c;
    for (int i = 0; i < 8; ++i)
      if (i != out) c.push_back(i);
    best = std::min(best, evaluate_centers(inst, c).objective);
  }
  CHECK(branch_and_bound_combinatorial(inst).objective == best);
}

TEST_CASE("objective is nonincreasing in p") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto base = random_instance(seed, 9, 2, 3);
    double prev = 1e300;
    for (int p = 2; p <= 9; ++p) {
      const double v = brute_force(build_instance(base.dm, base.strata, p)).objective;
      CHECK(v <= prev);
      prev = v;
    }
  }
}
