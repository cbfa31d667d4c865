#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>

#include "schober/schober.hpp"

namespace schober::fuzz {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return uniform(0, 1) == 1; }

  Matrix integer_matrix(std::size_t rows, std::size_t cols, std::int64_t bound = 3) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(-bound, bound);
    return m;
  }

  Matrix rational_matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(uniform(-4, 4), uniform(1, 3));
    return m;
  }

  Matrix invertible_matrix(std::size_t n, std::int64_t bound = 3) {
    for (;;) {
      Matrix m = integer_matrix(n, n, bound);
      if (is_invertible(m)) return m;
    }
  }

  /// Product of elementary integer operations; determinant +-1.
  Matrix unimodular_matrix(std::size_t n, int steps = 8) {
    Matrix m = Matrix::identity(n);
    if (n < 2) return coin() ? m : -m;
    for (int s = 0; s < steps; ++s) {
      const auto i = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1));
      auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 2));
      if (j >= i) ++j;
      Matrix e = Matrix::identity(n);
      e(i, j) = uniform(-2, 2);
      m = e * m;
    }
    return m;
  }

  BraidWord braid_word(std::size_t max_len, std::int64_t lo, std::int64_t hi) {
    BraidWord w;
    const auto len = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(max_len)));
    for (std::size_t k = 0; k < len; ++k) w.push_back({uniform(lo, hi), coin() ? 1 : -1});
    return w;
  }

  GmvPoint gmv_point(std::size_t ambient, std::size_t local) {
    for (;;) {
      GmvPoint p{local, integer_matrix(local, ambient, 2), integer_matrix(ambient, local, 2)};
      if (is_invertible(Matrix::identity(ambient) - p.v * p.u)) return p;
    }
  }

  GMVData gmv(std::size_t points, std::size_t max_dim = 4) {
    GMVData d;
    d.ambient_dim = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_dim)));
    for (std::size_t i = 0; i < points; ++i) {
      d.points.push_back(gmv_point(d.ambient_dim, static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_dim)))));
    }
    return d;
  }

  TwistPresentation twist(std::size_t dim, std::size_t local) {
    GmvPoint p = gmv_point(dim, local);
    return {p.u, p.v};
  }

  LinearSphericalPair pair(std::size_t max_dim = 5) {
    for (;;) {
      const auto n = static_cast<std::size_t>(uniform(2, static_cast<std::int64_t>(max_dim)));
      const auto q = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(n) - 1));
      const Matrix a = invertible_matrix(n, 2);
      const Matrix b = invertible_matrix(n, 2);
      LinearSphericalPair p{n, a.block(0, 0, n, q), a.block(0, q, n, n - q), b.block(0, 0, n, q),
                            b.block(0, q, n, n - q)};
      if (pair_validate(p).valid) return p;
    }
  }

 private:
  std::mt19937_64 rng_;
};

// Rewrites w into an equal word by a random relation move.
inline BraidWord perturb(BraidWord w, Gen& g) {
  const auto pos = [&](std::size_t n) { return static_cast<std::size_t>(g.uniform(0, static_cast<std::int64_t>(n))); };
  switch (g.uniform(0, 2)) {
    case 0: {
      const BraidLetter l{g.uniform(-5, 5), g.coin() ? 1 : -1};
      const auto at = static_cast<std::ptrdiff_t>(pos(w.size()));
      w.insert(w.begin() + at, {l, BraidLetter{l.index, -l.sign}});
      break;
    }
    case 1:
      for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        const auto d = w[k].index - w[k + 1].index;
        if (d > 1 || d < -1) {
          std::swap(w[k], w[k + 1]);
          break;
        }
      }
      break;
    default: {
      const std::int64_t i = g.uniform(-5, 4);
      const auto at = static_cast<std::ptrdiff_t>(pos(w.size()));
      const BraidWord lhs{{i, 1}, {i + 1, 1}, {i, 1}};
      const BraidWord trivial = lhs * inverse(BraidWord{{i + 1, 1}, {i, 1}, {i + 1, 1}});
      w.insert(w.begin() + at, trivial.begin(), trivial.end());
      break;
    }
  }
  return w;
}

inline SurfaceSchober disk_in_circle(const GMVData& d, const Matrix& boundary) {
  SurfaceSchober s;
  s.disk = d;
  s.basepoint = "x";
  s.outside.presentation.basepoints = {"x"};
  s.outside.presentation.generators = {{"c", "x", "x"}};
  s.outside.dims["x"] = d.ambient_dim;
  s.outside.matrices["c"] = boundary;
  s.boundary_word = {{"c", 1}};
  return s;
}

// Disk with random points, outside loops c (boundary), a (free) and p around a
// puncture whose loop a p a^-1 acts by the twist t.
struct Punctured {
  SurfaceSchober surface;
  PathWord loop;
  TwistPresentation twist;
};

inline Punctured random_punctured(Gen& g) {
  const auto n = static_cast<std::size_t>(g.uniform(1, 3));
  GMVData d;
  d.ambient_dim = n;
  for (auto k = g.uniform(0, 2); k > 0; --k) d.points.push_back(g.gmv_point(n, static_cast<std::size_t>(g.uniform(1, 2))));
  Punctured p;
  p.surface = disk_in_circle(d, gmv_validate(d).total_monodromy);
  p.twist = g.twist(n, static_cast<std::size_t>(g.uniform(1, 2)));
  const Matrix a = g.unimodular_matrix(n);
  auto& out = p.surface.outside;
  out.presentation.generators.push_back({"a", "x", "x"});
  out.presentation.generators.push_back({"p", "x", "x"});
  out.matrices["a"] = a;
  out.matrices["p"] = a * twist_matrix(p.twist) * inverse(a);
  p.loop = parse_path_word("a p a^-1");
  return p;
}

}  // namespace schober::fuzz
