#include <gtest/gtest.h>

#include <numeric>

#include "schober/laurent.hpp"
#include "schober/matrix.hpp"
#include "schober/smith.hpp"
#include "support.hpp"

using namespace schober;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/-4")), "-3/2");
  EXPECT_EQ(to_string(parse_rational("-7")), "-7");
  EXPECT_EQ(to_string(parse_rational("0/5")), "0");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("1.5"), Error);
  EXPECT_THROW(parse_rational(""), Error);
  EXPECT_EQ(parse_integer("123456789012345678901234567890") * 10, parse_integer("1234567890123456789012345678900"));
  EXPECT_THROW(to_integer(Rational(1, 2)), Error);
}

TEST(Matrix, InverseExamples) {
  auto r = mat_rank_inverse_solve(Matrix{{1, 0}, {-1, 1}});
  ASSERT_TRUE(r.inverse);
  EXPECT_EQ(*r.inverse, (Matrix{{1, 0}, {1, 1}}));

  r = mat_rank_inverse_solve(Matrix{{0, 0}, {0, 1}});
  EXPECT_EQ(r.rank, 1u);
  EXPECT_FALSE(r.inverse);
  EXPECT_THROW(inverse(Matrix{{0, 0}, {0, 1}}), Error);

  const Matrix m{{0, -1}, {1, 2}};
  EXPECT_EQ(inverse(m), (Matrix{{2, 1}, {-1, 0}}));
  EXPECT_TRUE((m * inverse(m)).is_identity());
}

TEST(Matrix, SolveAndShapes) {
  const Matrix a{{2, 1}, {1, 3}};
  const Matrix b{{3}, {5}};
  auto r = mat_rank_inverse_solve(a, b);
  ASSERT_TRUE(r.solution);
  EXPECT_EQ(a * *r.solution, b);
  EXPECT_EQ((*r.solution)(0, 0), Rational(4, 5));

  auto inconsistent = mat_rank_inverse_solve(Matrix{{1, 1}, {1, 1}}, Matrix{{1}, {2}});
  EXPECT_FALSE(inconsistent.solution);
  EXPECT_THROW(mat_rank_inverse_solve(a, Matrix{{1}}), Error);
  EXPECT_THROW(Matrix({{1, 2}}) * Matrix({{1, 2}}), Error);
  EXPECT_THROW(Matrix({{1, 2}}) + Matrix({{1}, {2}}), Error);
}

TEST(Matrix, RandomInversesAreExact) {
  fuzz::Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(g.uniform(1, 6));
    Matrix m = g.rational_matrix(n, n);
    if (!is_invertible(m)) continue;
    EXPECT_TRUE((m * inverse(m)).is_identity());
    EXPECT_TRUE((inverse(m) * m).is_identity());
    EXPECT_EQ(determinant(m) * determinant(inverse(m)), Rational(1));
  }
}

TEST(Matrix, PowerAndCharacteristicPolynomial) {
  const Matrix m{{0, -1}, {1, 2}};
  EXPECT_EQ(power(m, 2), (Matrix{{-1, -2}, {2, 3}}));
  EXPECT_EQ(power(m, -1), inverse(m));
  EXPECT_TRUE(power(m, 0).is_identity());
  // (x - 1)^2 = 1 - 2x + x^2
  EXPECT_EQ(characteristic_polynomial(m), (std::vector<Rational>{1, -2, 1}));
}

namespace {

// gcd of all k x k minors, by cofactor expansion.
Integer minor_det(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  Integer total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::size_t> r(rows.begin() + 1, rows.end());
    std::vector<std::size_t> c = cols;
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(j));
    Integer term = to_integer(m(rows[0], cols[j])) * minor_det(m, r, c);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

Integer determinantal_divisor(const Matrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(m.rows(), k, 0, cur, rs);
  subsets(m.cols(), k, 0, cur, cs);
  Integer g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) g = gcd(g, abs(minor_det(m, r, c)));
  return g;
}

}  // namespace

TEST(Smith, Examples) {
  auto s = smith_normal_form(Matrix::identity(3));
  EXPECT_TRUE(s.diag.is_identity());

  s = smith_normal_form(Matrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.diag, (Matrix{{1, 0}, {0, 6}}));

  s = smith_normal_form(Matrix::zero(2, 3));
  EXPECT_TRUE(s.diag.is_zero());
  EXPECT_THROW(smith_normal_form(Matrix{{Rational(1, 2)}}), Error);
}

TEST(Smith, AgreesWithDeterminantalDivisors) {
  fuzz::Gen g(5);
  for (int trial = 0; trial < 150; ++trial) {
    const auto rows = static_cast<std::size_t>(g.uniform(1, 4));
    const auto cols = static_cast<std::size_t>(g.uniform(1, 4));
    const Matrix m = g.integer_matrix(rows, cols, 6);
    const auto s = smith_normal_form(m);
    ASSERT_EQ(s.left * m * s.right, s.diag);
    EXPECT_TRUE(is_unimodular(s.left));
    EXPECT_TRUE(is_unimodular(s.right));
    Integer prev = 1;
    const std::size_t k = std::min(rows, cols);
    for (std::size_t i = 0; i < k; ++i) {
      const Integer d = determinantal_divisor(m, i + 1);
      const Integer expected = d == 0 ? Integer(0) : Integer(d / prev);
      EXPECT_EQ(to_integer(s.diag(i, i)), expected) << to_string(m);
      if (i + 1 < k && s.diag(i, i) != 0) {
        EXPECT_EQ(to_integer(s.diag(i + 1, i + 1)) % to_integer(s.diag(i, i)), 0);
      }
      if (d != 0) prev = d;
    }
  }
}

namespace {

LaurentPoly poly(std::initializer_list<std::pair<std::int64_t, int>> terms) {
  LaurentPoly p;
  for (auto [e, c] : terms) p.add_term(e, c);
  return p;
}

// Exact division by a modulus with unit leading coefficient; nullopt if not divisible.
std::optional<LaurentPoly> divide(LaurentPoly p, const LaurentPoly& m) {
  LaurentPoly q;
  const Integer lead = m.terms().rbegin()->second;
  while (!p.is_zero() && p.span() >= m.span()) {
    const std::int64_t e = p.max_exponent() - m.max_exponent();
    const Integer c = p.coefficient(p.max_exponent()) * lead;
    q.add_term(e, c);
    p = p - c * m.shifted(e);
  }
  if (!p.is_zero()) return std::nullopt;
  return q;
}

}  // namespace

TEST(Laurent, ReduceExamples) {
  const LaurentPoly sq = poly({{0, 1}, {1, -2}, {2, 1}});
  EXPECT_EQ(laurent_reduce(LaurentPoly::monomial(2), sq, {0, 1}), poly({{1, 2}, {0, -1}}));
  EXPECT_EQ(laurent_reduce(LaurentPoly::monomial(0), sq, {0, 1}), LaurentPoly::monomial(0));
  const LaurentPoly m = LaurentPoly::one_minus_power(1) * LaurentPoly::one_minus_power(2);
  EXPECT_EQ(laurent_reduce(LaurentPoly::monomial(3), m, {0, 2}), poly({{2, 1}, {1, 1}, {0, -1}}));
}

TEST(Laurent, ReduceErrors) {
  EXPECT_THROW(laurent_reduce(LaurentPoly::monomial(3), poly({{0, 2}, {1, 1}}), {0, 0}), Error);
  EXPECT_THROW(laurent_reduce(LaurentPoly::monomial(3), poly({{0, 1}, {1, 1}}), {0, 3}), Error);
  EXPECT_THROW(LaurentPoly::monomial(std::numeric_limits<std::int64_t>::max()).shifted(1), Error);
  try {
    laurent_reduce(LaurentPoly::monomial(0), poly({{0, 3}, {2, 1}}), {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadModulus);
  }
}

TEST(Laurent, ReductionProperties) {
  fuzz::Gen g(3);
  for (int trial = 0; trial < 300; ++trial) {
    LaurentPoly m = LaurentPoly::monomial(0);
    const auto factors = g.uniform(1, 3);
    for (int i = 0; i < factors; ++i) m = m * LaurentPoly::one_minus_power(g.uniform(1, 3) * (g.coin() ? 1 : -1));
    const ExponentWindow win = ExponentWindow::of_length(g.uniform(-4, 4), m.span());
    LaurentPoly p, q;
    for (int i = 0; i < 4; ++i) {
      p.add_term(g.uniform(-8, 8), g.uniform(-3, 3));
      q.add_term(g.uniform(-8, 8), g.uniform(-3, 3));
    }
    const LaurentPoly rp = laurent_reduce(p, m, win);
    for (const auto& [e, c] : rp.terms()) EXPECT_TRUE(win.contains(e));
    EXPECT_EQ(laurent_reduce(rp, m, win), rp);
    EXPECT_EQ(laurent_reduce(p + q, m, win), rp + laurent_reduce(q, m, win));
    EXPECT_TRUE(laurent_reduce(p * m, m, win).is_zero());
    EXPECT_TRUE(divide(p - rp, m).has_value());
  }
}

TEST(Laurent, WindowReductionIsBijective) {
  const LaurentPoly m = LaurentPoly::one_minus_power(1) * LaurentPoly::one_minus_power(2) *
                        LaurentPoly::one_minus_power(-3);
  for (std::int64_t lo = -5; lo <= 5; ++lo) {
    const Matrix r = reduction_matrix(m, ExponentWindow::of_length(lo, m.span()), ExponentWindow::of_length(0, m.span()));
    EXPECT_TRUE(is_unimodular(r));
  }
}
