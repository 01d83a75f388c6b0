#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace acc;
using namespace acc::testing;

namespace {

VectorFamily family(std::size_t dim, std::vector<RationalVector> vs) { return {dim, std::move(vs)}; }

VectorFamily conic_family() {
  return family(2, {rv({-1, -1}), rv({1, 0}), rv({1, 0}), rv({0, 2})});
}

}  // namespace

TEST(BranchVector, ConicExamples) {
  Acc c = conic();
  auto fam = conic_family();
  EXPECT_EQ(branch_vector(c, fam, BranchId(0)), rv({2, 2}));
  EXPECT_EQ(branch_vector(c, fam, BranchId(2)), rv({0, -1}));
}

TEST(BranchVector, LoneBranchIsZero) {
  RawAcc r = conic_raw();
  r.points = 4;
  r.branches.push_back({3, 0});
  Acc a = validate_acc(r);
  EXPECT_TRUE(is_zero(branch_vector(a, conic_family(), BranchId(8))));
}

TEST(Parallel, Examples) {
  EXPECT_TRUE(is_parallel(rv({2, 2}), rv({-1, -1})));
  EXPECT_FALSE(is_parallel(rv({1, 0}), rv({0, 1})));
  EXPECT_TRUE(is_parallel(rv({0, 0}), rv({3, 7})));
  EXPECT_TRUE(is_parallel(rv({1, 2, 3}), rv({2, 4, 6})));
  EXPECT_FALSE(is_parallel(rv({1, 2, 3}), rv({2, 4, 7})));
  EXPECT_THROW(is_parallel(rv({1}), rv({1, 2})), Error);
}

TEST(Admissible, ConicPencilFamily) {
  auto r = is_admissible_family(conic(), conic_family());
  EXPECT_TRUE(r.admissible);
  EXPECT_TRUE(r.spanning);
}

TEST(Admissible, ZeroFamily) {
  Acc c = conic();
  auto r = is_admissible_family(c, family(2, std::vector<RationalVector>(4, rv({0, 0}))));
  EXPECT_TRUE(r.admissible);
  EXPECT_FALSE(r.spanning);
}

TEST(Admissible, ConicBrokenChord) {
  Acc c = conic();
  auto fam = conic_family();
  fam.vectors[3] = rv({1, 1});
  auto r = is_admissible_family(c, fam);
  EXPECT_FALSE(r.admissible);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(c.attach(*r.witness), PointId(0));
}

TEST(Admissible, WrongShape) {
  EXPECT_THROW(is_admissible_family(conic(), family(2, {rv({1, 0})})), Error);
  EXPECT_THROW(is_admissible_family(conic(), family(3, conic_family().vectors)), Error);
}

TEST(FromPencil, SixLines) {
  auto fam = family_from_pencil(sixlines(), sixlines_pencil());
  EXPECT_EQ(fam.dim, 2u);
  EXPECT_EQ(fam.vectors, (std::vector<RationalVector>{rv({-1, -1}), rv({-1, -1}), rv({1, 0}),
                                                      rv({1, 0}), rv({0, 1}), rv({0, 1})}));
}

TEST(FromPencil, Conic) {
  EXPECT_EQ(family_from_pencil(conic(), conic_pencil()), conic_family());
}

TEST(FromPencil, FourFibersGiveDimensionThree) {
  Acc s = sixlines();
  auto p = pencil_of(s, partition({{0, 1}, {2, 3}, {4}, {5}}), {1, 1, 1, 1, 2, 2});
  auto fam = family_from_pencil(s, p);
  EXPECT_EQ(fam.dim, 3u);
  EXPECT_TRUE(is_admissible_family(s, fam).admissible);
}

TEST(FromPencil, RejectsMismatchedPencil) {
  CombinatorialPencil p;
  p.fibers = partition({{0}, {1}});
  p.multiplicity = {1, 1};
  EXPECT_THROW(family_from_pencil(conic(), p), Error);
}

TEST(Transport, SixLinesExceptionalIsZero) {
  Acc s = sixlines();
  auto fam = transport_family(s, singleton_spec(s, PointId(0)), family_from_pencil(s, sixlines_pencil()));
  EXPECT_EQ(fam.vectors.size(), 7u);
  EXPECT_TRUE(is_zero(fam.vectors[6]));
}

TEST(Transport, ConicFirstStep) {
  auto fam = transport_family(conic(), conic_script()[0], conic_family());
  EXPECT_EQ(fam.vectors[4], rv({0, 1}));
}

TEST(Transport, OneFiberPointGivesParallelVector) {
  auto t = validate_resolution_script(conic(), conic_script());
  auto fams = transport_along(t, conic_family());
  ASSERT_EQ(fams.size(), 5u);
  // the apex of the two tangents lies in one fiber
  Acc w = t.final_stage();
  auto apex = transport_family(w, singleton_spec(w, PointId(2)), fams.back());
  EXPECT_EQ(apex.vectors.back(), rv({2, 0}));
  for (std::size_t l = 0; l < fams.size(); ++l)
    EXPECT_TRUE(is_admissible_family(t.stages()[l], fams[l]).admissible);
}

TEST(Divisors, SixLines) {
  auto t = validate_resolution_script(sixlines(), sixlines_script());
  auto fam = transport_to_final(t, family_from_pencil(sixlines(), sixlines_pencil()));
  auto dc = classify_divisors(t, fam);
  EXPECT_EQ(dc.kind[6], DivisorKind::Dicritical);
  EXPECT_TRUE(dc.is_trivial(ComponentId(6)));
  for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(dc.kind[c], DivisorKind::Original);
}

TEST(Divisors, Conic) {
  auto t = validate_resolution_script(conic(), conic_script());
  auto dc = classify_divisors(t, transport_to_final(t, conic_family()));
  EXPECT_EQ(dc.kind[4], DivisorKind::Plain);
  EXPECT_EQ(dc.kind[5], DivisorKind::Plain);
  EXPECT_EQ(dc.kind[6], DivisorKind::Dicritical);
  EXPECT_EQ(dc.kind[7], DivisorKind::Dicritical);
}

TEST(Divisors, BitangentConicsFirstDivisorTrivialOnly) {
  Acc a = bitangent_triple();
  auto p = pencil_of(a, partition({{0}, {1}, {2}}), {1, 1, 1});
  auto t = auto_resolve(a, 12);
  auto fam = transport_to_final(t, family_from_pencil(a, p));
  auto dc = classify_divisors(t, fam);
  // first blow-up at each tangency point: zero vector, meets only the next divisor
  ASSERT_EQ(t.steps()[0].spec.clusters.size(), 1u);
  ComponentId first = t.steps()[0].created.exceptional;
  EXPECT_EQ(dc.kind[first.index()], DivisorKind::Trivial);
  std::size_t dicritical = 0;
  for (auto k : dc.kind) dicritical += k == DivisorKind::Dicritical;
  EXPECT_EQ(dicritical, 2u);
}

TEST(Divisors, FamilyMustCoverLastStage) {
  // family of the first stage does not cover the last one
  auto t = validate_resolution_script(conic(), conic_script());
  EXPECT_THROW(classify_divisors(t, conic_family()), Error);
}
