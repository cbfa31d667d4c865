#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "schober/matrix.hpp"

namespace schober {

struct SmithForm {
  Matrix diag;   // same shape as the input; nonnegative diagonal with d_i | d_{i+1}
  Matrix left;   // unimodular, rows x rows
  Matrix right;  // unimodular, cols x cols
};

/// left * m * right = diag over the integers.
inline SmithForm smith_normal_form(const Matrix& m) {
  using Grid = std::vector<std::vector<Integer>>;
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  auto unit = [](std::size_t n) {
    Grid g(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
    return g;
  };
  Grid a(nr, std::vector<Integer>(nc));
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) a[r][c] = to_integer(m(r, c));
  Grid left = unit(nr);
  Grid right = unit(nc);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(left[i], left[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : right) std::swap(row[i], row[j]);
  };
  // row_i -= q * row_j
  auto row_op = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < nc; ++c) a[i][c] -= q * a[j][c];
    for (std::size_t c = 0; c < nr; ++c) left[i][c] -= q * left[j][c];
  };
  // col_i -= q * col_j
  auto col_op = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < nr; ++r) a[r][i] -= q * a[r][j];
    for (std::size_t r = 0; r < nc; ++r) right[r][i] -= q * right[r][j];
  };

  const std::size_t steps = std::min(nr, nc);
  for (std::size_t t = 0; t < steps; ++t) {
    bool finished = false;
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t r = t; r < nr; ++r)
        for (std::size_t c = t; c < nc; ++c)
          if (a[r][c] != 0 && (!best || abs(a[r][c]) < abs(a[best->first][best->second]))) best = {r, c};
      if (!best) {
        finished = true;
        break;
      }
      if (best->first != t) swap_rows(t, best->first);
      if (best->second != t) swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (a[r][t] == 0) continue;
        row_op(r, t, Integer(a[r][t] / a[t][t]));
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (a[t][c] == 0) continue;
        col_op(c, t, Integer(a[t][c] / a[t][t]));
        if (a[t][c] != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the whole remaining block.
      std::optional<std::size_t> offender;
      for (std::size_t r = t + 1; r < nr && !offender; ++r)
        for (std::size_t c = t + 1; c < nc; ++c)
          if (a[r][c] % a[t][t] != 0) {
            offender = r;
            break;
          }
      if (offender) {
        row_op(t, *offender, Integer(-1));
        continue;
      }
      break;
    }
    if (finished) break;
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : left[t]) x = -x;
    }
  }

  auto to_matrix = [](const Grid& g, std::size_t rows, std::size_t cols) {
    Matrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r, c) = Rational(g[r][c]);
    return out;
  };
  return {to_matrix(a, nr, nc), to_matrix(left, nr, nr), to_matrix(right, nc, nc)};
}

/// Integer matrix with determinant +1 or -1.
inline bool is_unimodular(const Matrix& m) {
  if (!m.is_square() || !m.is_integral()) return false;
  Rational d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace schober
