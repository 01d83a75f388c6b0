#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace acc;
using namespace acc::testing;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::MalformedInput;
}

SigmaProcessSpec spec(std::size_t p, std::vector<std::vector<std::size_t>> clusters,
                      std::map<std::size_t, std::int64_t> nu = {}) {
  SigmaProcessSpec s;
  s.point = PointId(p);
  for (const auto& c : clusters) {
    auto& out = s.clusters.emplace_back();
    for (auto b : c) {
      out.emplace_back(b);
      s.nu[BranchId(b)] = nu.contains(b) ? nu.at(b) : 1;
    }
  }
  return s;
}

}  // namespace

TEST(Sigma, SixLinesSingletons) {
  Acc s = sixlines();
  auto r = apply_sigma_process(s, singleton_spec(s, PointId(0)));
  const Acc& w = r.acc;
  EXPECT_EQ(w.component_count(), 7u);
  EXPECT_EQ(w.points().size(), 6u);
  EXPECT_EQ(w.branch_count(), 12u);
  EXPECT_FALSE(w.is_live(PointId(0)));
  EXPECT_EQ(r.created.exceptional, ComponentId(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) EXPECT_EQ(w.mu(BranchId(i), BranchId(j)), 0);
  for (PointId p : w.points()) {
    const auto& here = w.branches_at(p);
    ASSERT_EQ(here.size(), 2u);
    EXPECT_EQ(w.mu(here[0], here[1]), 1);
  }
  EXPECT_TRUE(check_normal_crossing(w).normal_crossing);
}

TEST(Sigma, ConicTangencyCluster) {
  Acc c = conic();
  auto r = apply_sigma_process(c, spec(0, {{0, 1}, {2}}));
  const Acc& w = r.acc;
  EXPECT_EQ(w.mu(BranchId(0), BranchId(1)), 1);
  EXPECT_EQ(w.attach(BranchId(0)), w.attach(BranchId(1)));
  ASSERT_EQ(r.created.branches.size(), 2u);
  // chord separated, meeting the new divisor once
  PointId chord_point = w.attach(BranchId(2));
  EXPECT_EQ(w.branches_at(chord_point).size(), 2u);
  EXPECT_EQ(branch_component_multiplicity(w, BranchId(2), r.created.exceptional), 1);
  EXPECT_EQ(pairwise_intersection(w, ComponentId(0), ComponentId(1)), 1);
}

TEST(Sigma, AllInOneClusterBreaksCohabitation) {
  EXPECT_EQ(code_of([] { apply_sigma_process(conic(), spec(0, {{0, 1, 2}})); }),
            ErrorCode::CohabitationViolation);
}

TEST(Sigma, SeparatedTangencyBreaksSeparation) {
  EXPECT_EQ(code_of([] { apply_sigma_process(conic(), spec(0, {{0}, {1}, {2}})); }),
            ErrorCode::SeparationViolation);
}

TEST(Sigma, InvalidInputs) {
  Acc c = conic();
  EXPECT_EQ(code_of([&] { apply_sigma_process(c, spec(7, {{0}})); }), ErrorCode::InvalidPoint);
  EXPECT_EQ(code_of([&] { apply_sigma_process(c, spec(0, {{0, 1}})); }), ErrorCode::InvalidPartition);
  EXPECT_EQ(code_of([&] { apply_sigma_process(c, spec(0, {{0, 1}, {2}}, {{2, 0}})); }),
            ErrorCode::InvalidPartition);
  auto blown = apply_sigma_process(c, spec(0, {{0, 1}, {2}})).acc;
  EXPECT_EQ(code_of([&] { apply_sigma_process(blown, spec(0, {{0, 1}, {2}})); }),
            ErrorCode::InvalidPoint);
}

TEST(Sigma, HigherNuNeedsMatchingContact) {
  // three branches with pairwise contact 4
  RawAcc r;
  r.components = 3;
  r.points = 1;
  r.branches = {{0, 0}, {0, 1}, {0, 2}};
  r.mu = {{0, 1, 4}, {0, 2, 4}, {1, 2, 4}};
  Acc a = validate_acc(r);
  EXPECT_NO_THROW(apply_sigma_process(a, spec(0, {{0}, {1}, {2}}, {{0, 2}, {1, 2}, {2, 2}})));
  auto w = apply_sigma_process(a, spec(0, {{0, 1, 2}})).acc;
  EXPECT_EQ(w.mu(BranchId(0), BranchId(1)), 3);
}

TEST(Sigma, FreshIdsAreAppended) {
  Acc c = conic();
  auto r = apply_sigma_process(c, spec(0, {{0, 1}, {2}}));
  EXPECT_EQ(r.created.exceptional, ComponentId(4));
  EXPECT_EQ(r.created.points, (std::vector<PointId>{PointId(3), PointId(4)}));
  EXPECT_EQ(r.created.branches, (std::vector<BranchId>{BranchId(8), BranchId(9)}));
  for (std::size_t b = 0; b < c.branch_count(); ++b)
    EXPECT_EQ(r.acc.owner(BranchId(b)), c.owner(BranchId(b)));
}

TEST(NormalCrossing, Examples) {
  auto nc = check_normal_crossing(sixlines());
  EXPECT_FALSE(nc.normal_crossing);
  EXPECT_EQ(nc.point, PointId(0));
  EXPECT_EQ(nc.branch_count, 6u);
  auto t = validate_resolution_script(conic(), conic_script());
  EXPECT_TRUE(check_normal_crossing(t.final_stage()).normal_crossing);
  EXPECT_TRUE(check_normal_crossing(validate_resolution_script(sixlines(), sixlines_script()).final_stage())
                  .normal_crossing);
}

TEST(Script, ConicFourSteps) {
  auto t = validate_resolution_script(conic(), conic_script());
  EXPECT_EQ(t.steps().size(), 4u);
  EXPECT_EQ(t.final_stage().component_count(), 8u);
  for (std::size_t e = 4; e < 8; ++e) {
    EXPECT_FALSE(t.is_original(ComponentId(e)));
    EXPECT_EQ(t.creation_step(ComponentId(e)), e - 4);
  }
  EXPECT_EQ(t.script(), conic_script());
}

TEST(Script, ConicTwoStepsIsNotEnough) {
  auto script = conic_script();
  script.resize(2);
  EXPECT_EQ(code_of([&] { validate_resolution_script(conic(), script); }),
            ErrorCode::NotNormalCrossingAtEnd);
}

TEST(Script, ErrorsNameTheStep) {
  auto script = conic_script();
  script[1].clusters = {{BranchId(3), BranchId(4), BranchId(5)}};
  try {
    validate_resolution_script(conic(), script);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CohabitationViolation);
    EXPECT_EQ(e.detail().rfind("step 2:", 0), 0u) << e.detail();
  }
}

TEST(Script, ExceptionalBranchesKeepNuOne) {
  auto script = conic_script();
  script[2].nu[BranchId(8)] = 2;
  EXPECT_EQ(code_of([&] { validate_resolution_script(conic(), script); }),
            ErrorCode::ExceptionalMultiplicityViolation);
}

TEST(Auto, SixLinesOneStep) {
  auto t = auto_resolve(sixlines(), 10);
  EXPECT_EQ(t.script(), sixlines_script());
}

TEST(Auto, NormalCrossingNeedsNothing) {
  Acc s = sixlines();
  Acc resolved = apply_sigma_process(s, singleton_spec(s, PointId(0))).acc;
  EXPECT_TRUE(auto_resolve(resolved, 10).steps().empty());
}

TEST(Auto, ConicMatchesHandScript) {
  auto t = auto_resolve(conic(), 10);
  EXPECT_EQ(t.script(), conic_script());
  EXPECT_TRUE(check_normal_crossing(t.final_stage()).normal_crossing);
}

TEST(Auto, BudgetExhausted) {
  EXPECT_EQ(code_of([] { auto_resolve(conic(), 3); }), ErrorCode::BudgetExhausted);
  EXPECT_EQ(code_of([] { auto_resolve(conic(), 0); }), ErrorCode::BudgetExhausted);
}

TEST(Auto, ContactFourUsesNuOne) {
  RawAcc r;
  r.components = 3;
  r.points = 1;
  r.branches = {{0, 0}, {0, 1}, {0, 2}};
  r.mu = {{0, 1, 4}, {0, 2, 4}, {1, 2, 4}};
  auto t = auto_resolve(validate_acc(r), 12);
  EXPECT_TRUE(check_normal_crossing(t.final_stage()).normal_crossing);
  // coarsest partition is tried first
  EXPECT_EQ(t.steps().front().spec.clusters.size(), 1u);
}

TEST(Enumerate, CoarsestFirstAndAllValid) {
  Acc c = conic();
  auto specs = enumerate_sigma_specs(c, PointId(0), c.branch_count());
  ASSERT_FALSE(specs.empty());
  EXPECT_EQ(specs.front().clusters.size(), 2u);
  for (const auto& s : specs) EXPECT_NO_THROW(check_sigma_spec(c, s));
}

TEST(Partitions, BellNumbers) {
  std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52};
  for (std::size_t n = 1; n < bell.size(); ++n)
    EXPECT_EQ(detail::partitions_coarsest_first(n).size(), bell[n]);
}
