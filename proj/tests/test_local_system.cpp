#include <gtest/gtest.h>

#include "schober/local_system.hpp"
#include "support.hpp"

using namespace schober;

namespace {

LatticeLocalSystem circle(const Matrix& m, const std::string& gen = "g") {
  LatticeLocalSystem L;
  L.presentation.basepoints = {"x"};
  L.presentation.generators = {{gen, "x", "x"}};
  L.dims["x"] = m.rows();
  L.matrices[gen] = m;
  return L;
}

// Two basepoints, a free loop at each and arrows both ways; one relation.
LatticeLocalSystem random_system(fuzz::Gen& g, std::size_t n) {
  LatticeLocalSystem L;
  L.presentation.basepoints = {"x", "y"};
  L.presentation.generators = {{"a", "x", "x"}, {"b", "y", "y"}, {"p", "x", "y"}, {"q", "y", "x"}};
  L.dims = {{"x", n}, {"y", n}};
  L.matrices["a"] = g.unimodular_matrix(n);
  L.matrices["b"] = g.unimodular_matrix(n);
  L.matrices["p"] = g.unimodular_matrix(n);
  // q p a = 1 at x
  L.matrices["q"] = inverse(L.matrices["p"] * L.matrices["a"]);
  L.presentation.relations = {{"r", {{"a", 1}, {"p", 1}, {"q", 1}}}};
  return L;
}

PathWord random_loop(fuzz::Gen& g, std::size_t len) {
  PathWord w;
  std::string at = "x";
  for (std::size_t i = 0; i < len; ++i) {
    const int s = g.coin() ? 1 : -1;
    if (at == "x") {
      if (g.coin()) w.push_back({"a", s});
      else if (s > 0) w.push_back({"p", 1}), at = "y";
      else w.push_back({"q", -1}), at = "y";
    } else {
      if (g.coin()) w.push_back({"b", s});
      else if (s > 0) w.push_back({"q", 1}), at = "x";
      else w.push_back({"p", -1}), at = "x";
    }
  }
  if (at == "y") w.push_back({"q", 1});
  return w;
}

}  // namespace

TEST(PathWords, ParsePrintInverse) {
  const PathWord w = parse_path_word("a b^-1  c");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[1], (PathLetter{"b", -1}));
  EXPECT_EQ(to_string(w), "a b^-1 c");
  EXPECT_EQ(to_string(inverse(w)), "c^-1 b a^-1");
  EXPECT_THROW(parse_path_word("a^2"), Error);
}

TEST(LocalSystem, ValidateExamples) {
  fuzz::Gen g(1);
  LatticeLocalSystem id = random_system(g, 2);
  for (auto& [gen, m] : id.matrices) m = Matrix::identity(2);
  EXPECT_TRUE(ls_validate(id).valid);

  EXPECT_TRUE(ls_validate(circle(Matrix{{0, -1}, {1, 2}})).valid);

  LatticeLocalSystem singular = circle(Matrix{{1, 1}, {1, 1}});
  auto r = ls_validate(singular);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.failure->code, ErrorCode::SingularGenerator);
  EXPECT_EQ(r.failure->label, "g");

  LatticeLocalSystem rel = circle(Matrix{{0, -1}, {1, 2}});
  rel.presentation.relations = {{"gg", {{"g", 1}, {"g", 1}}}};
  r = ls_validate(rel);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.failure->code, ErrorCode::RelationViolated);
  EXPECT_EQ(r.failure->label, "gg");

  LatticeLocalSystem shape = circle(Matrix{{1, 0}});
  EXPECT_THROW(ls_validate(shape), Error);
}

TEST(LocalSystem, MonodromyExamples) {
  const LatticeLocalSystem L = circle(Matrix{{0, -1}, {1, 2}});
  EXPECT_TRUE(ls_monodromy(L, {}, "x").is_identity());
  EXPECT_TRUE(ls_monodromy(L, parse_path_word("g g^-1")).is_identity());
  EXPECT_EQ(ls_monodromy(L, parse_path_word("g g")), (Matrix{{-1, -2}, {2, 3}}));
  EXPECT_THROW(ls_monodromy(L, parse_path_word("h")), Error);

  fuzz::Gen g(2);
  const LatticeLocalSystem S = random_system(g, 2);
  try {
    ls_monodromy(S, parse_path_word("p p"), "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotComposable);
  }
  // path order: the first letter traversed is the rightmost factor
  EXPECT_EQ(ls_monodromy(S, parse_path_word("a p")), S.matrix("p") * S.matrix("a"));
}

TEST(LocalSystem, MonodromyIsHomomorphism) {
  fuzz::Gen g(61);
  for (int trial = 0; trial < 100; ++trial) {
    const LatticeLocalSystem L = random_system(g, 3);
    ASSERT_TRUE(ls_validate(L).valid);
    const PathWord u = random_loop(g, 5);
    const PathWord v = random_loop(g, 5);
    EXPECT_EQ(ls_monodromy(L, u + v, "x"), ls_monodromy(L, v, "x") * ls_monodromy(L, u, "x"));
    EXPECT_TRUE(ls_monodromy(L, u + inverse(u), "x").is_identity());
  }
}

TEST(LocalSystem, IsomorphismChecks) {
  fuzz::Gen g(67);
  for (int trial = 0; trial < 50; ++trial) {
    const LatticeLocalSystem L = random_system(g, 3);
    EXPECT_TRUE(ls_check_strong_iso(L, L));
    const Matrix cx = g.invertible_matrix(3);
    const Matrix cy = g.invertible_matrix(3);
    LatticeLocalSystem M = L;
    for (const auto& gen : L.presentation.generators) {
      const Matrix& src = gen.source == "x" ? cx : cy;
      const Matrix& dst = gen.target == "x" ? cx : cy;
      M.matrices[gen.label] = dst * L.matrix(gen.label) * inverse(src);
    }
    EXPECT_TRUE(ls_validate(M).valid);
    EXPECT_TRUE(ls_check_iso(L, M, {{"x", cx}, {"y", cy}}));
    // equal monodromy conjugacy classes at each basepoint
    const PathWord loop = random_loop(g, 6);
    EXPECT_EQ(characteristic_polynomial(ls_monodromy(L, loop, "x")),
              characteristic_polynomial(ls_monodromy(M, loop, "x")));

    LatticeLocalSystem flipped = L;
    flipped.matrices["a"] = -flipped.matrices["a"];
    EXPECT_FALSE(ls_check_iso(L, flipped, {{"x", Matrix::identity(3)}, {"y", Matrix::identity(3)}}));
  }
  const LatticeLocalSystem L = circle(Matrix{{1}});
  EXPECT_THROW(ls_check_iso(L, L, {{"x", Matrix{{1, 0}}}}), Error);
  EXPECT_THROW(ls_check_iso(L, circle(Matrix{{1}}, "h"), {{"x", Matrix{{1}}}}), Error);
}

TEST(LocalSystem, Refinement) {
  const LatticeLocalSystem coarse = circle(Matrix{{0, -1}, {1, 2}});
  EXPECT_TRUE(ls_check_refinement(coarse, coarse, {{"g", parse_path_word("g")}}));

  // the loop factors through a second basepoint as two half-monodromies
  LatticeLocalSystem fine;
  fine.presentation.basepoints = {"x", "y"};
  fine.presentation.generators = {{"h1", "x", "y"}, {"h2", "y", "x"}};
  fine.dims = {{"x", 2}, {"y", 2}};
  fine.matrices = {{"h1", Matrix{{1, 0}, {1, 1}}}, {"h2", Matrix{{0, -1}, {1, 2}} * inverse(Matrix{{1, 0}, {1, 1}})}};
  EXPECT_TRUE(ls_check_refinement(coarse, fine, {{"g", parse_path_word("h1 h2")}}));

  LatticeLocalSystem corrupted = fine;
  corrupted.matrices["h1"](0, 0) = 2;
  EXPECT_FALSE(ls_check_refinement(coarse, corrupted, {{"g", parse_path_word("h1 h2")}}));

  try {
    ls_check_refinement(coarse, fine, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingFactorization);
  }
}

TEST(Pullback, TrivialCover) {
  fuzz::Gen g(3);
  const LatticeLocalSystem L = random_system(g, 2);
  CoveringSpec c;
  c.sheets = {{0, ""}};
  for (const auto& gen : L.presentation.generators) c.lifts.push_back({gen.label, 0, 0, gen.label});
  const Pullback pb = ls_pullback(L, c);
  EXPECT_EQ(pb.system, L);
  EXPECT_TRUE(pb.boundary.empty());
}

TEST(Pullback, CyclicCoverOfCircle) {
  const Matrix m{{0, -1}, {1, 2}};
  const LatticeLocalSystem L = circle(m);
  const Pullback pb = ls_pullback(L, cyclic_cover(L.presentation, {{"g", 1}}, -2, 2));
  const auto& P = pb.system.presentation;
  EXPECT_EQ(P.basepoints.size(), 5u);
  ASSERT_EQ(P.generators.size(), 4u);
  for (const auto& gen : P.generators) EXPECT_EQ(pb.system.matrix(gen.label), m);
  EXPECT_EQ(P.generators.front().source, "x@-2");
  EXPECT_EQ(P.generators.front().target, "x@-1");
  ASSERT_EQ(pb.boundary.size(), 1u);
  EXPECT_EQ(pb.boundary[0].generator, "g");
  EXPECT_EQ(pb.boundary[0].sheet, 2);
  EXPECT_TRUE(ls_validate(pb.system).valid);
  // a chain of five copies: walking from -2 to 2 composes four of them
  EXPECT_EQ(ls_monodromy(pb.system, parse_path_word("g@-2 g@-1 g@0 g@1"), "x@-2"), power(m, 4));
  try {
    lift_word(L.presentation, cyclic_cover(L.presentation, {{"g", 1}}, -2, 2), parse_path_word("g g g"), "x", 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationBoundary);
  }
}

TEST(Pullback, RelationsLiftWhereTheyClose) {
  fuzz::Gen g(71);
  for (int trial = 0; trial < 20; ++trial) {
    const LatticeLocalSystem L = random_system(g, 2);
    const Pullback pb = ls_pullback(L, cyclic_cover(L.presentation, {{"a", 1}, {"q", -1}}, -3, 3));
    EXPECT_TRUE(ls_validate(pb.system).valid);
    // r = a p q moves x by a: +1, q: -1 so it closes on every sheet where a lifts inside
    EXPECT_EQ(pb.system.presentation.relations.size(), 6u);
  }
}

TEST(Pullback, InconsistentCoverRejected) {
  const LatticeLocalSystem L = circle(Matrix{{1}});
  CoveringSpec c;
  c.sheets = {{0, "@0"}, {1, "@1"}};
  c.lifts = {{"g", 0, 1, "g@0"}, {"g", 1, 1, "g@1"}};
  EXPECT_THROW(ls_pullback(L, c), Error);
  c.lifts = {{"g", 0, 1, "g@0"}, {"g", 1, 2, "g@1"}};
  EXPECT_THROW(ls_pullback(L, c), Error);
  c.truncated = true;
  EXPECT_EQ(ls_pullback(L, c).boundary.size(), 1u);
}
