#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schober/braid.hpp"
#include "schober/matrix.hpp"

namespace schober {

// ---------------------------------------------------------------------------
// GMV description: D with D_i and maps u_i : D -> D_i, v_i : D_i -> D such that
// every m_i = 1 - v_i u_i is invertible. Also serves as the decategorified shadow
// of a schober on a disk for one reference skeleton.
// ---------------------------------------------------------------------------

struct GmvPoint {
  std::size_t local_dim = 0;
  Matrix u;  // local_dim x ambient_dim
  Matrix v;  // ambient_dim x local_dim
  friend bool operator==(const GmvPoint&, const GmvPoint&) = default;
};

struct GMVData {
  std::size_t ambient_dim = 0;
  std::vector<GmvPoint> points;
  friend bool operator==(const GMVData&, const GMVData&) = default;
};

inline void check_shapes(const GMVData& d) {
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const auto& p = d.points[i];
    if (p.u.rows() != p.local_dim || p.u.cols() != d.ambient_dim || p.v.rows() != d.ambient_dim ||
        p.v.cols() != p.local_dim) {
      throw Error(ErrorCode::ShapeMismatch, "point " + std::to_string(i + 1) + ": u is " + p.u.shape() +
                                                ", v is " + p.v.shape() + ", expected local dim " +
                                                std::to_string(p.local_dim) + " over ambient " +
                                                std::to_string(d.ambient_dim));
    }
  }
}

/// m = 1 - v u on the ambient space.
inline Matrix local_monodromy(const GMVData& d, std::size_t i) {
  const auto& p = d.points.at(i);
  return Matrix::identity(d.ambient_dim) - p.v * p.u;
}

struct GmvReport {
  bool valid = true;
  std::vector<Matrix> monodromies;
  Matrix total_monodromy;  // m_1 m_2 ... m_n, m_1 leftmost
  std::optional<Failure> failure;
};

inline GmvReport gmv_validate(const GMVData& d) {
  check_shapes(d);
  GmvReport r;
  r.total_monodromy = Matrix::identity(d.ambient_dim);
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    Matrix m = local_monodromy(d, i);
    if (r.valid && !is_invertible(m)) {
      r.valid = false;
      r.failure = Failure{ErrorCode::Singular, "m" + std::to_string(i + 1),
                          "m" + std::to_string(i + 1) + " = 1 - v u is singular"};
    }
    r.total_monodromy = r.total_monodromy * m;
    r.monodromies.push_back(std::move(m));
  }
  return r;
}

namespace detail {

// sigma_i with 0-based i: points (i, i+1) become (p_{i+1}, p_i transported).
inline void hurwitz_step(GMVData& d, std::size_t i, int sign) {
  GmvPoint a = d.points[i];
  GmvPoint b = d.points[i + 1];
  if (sign > 0) {
    const Matrix mb = local_monodromy(d, i + 1);
    d.points[i] = b;
    d.points[i + 1] = GmvPoint{a.local_dim, a.u * mb, inverse(mb) * a.v};
  } else {
    const Matrix ma = local_monodromy(d, i);
    d.points[i] = GmvPoint{b.local_dim, b.u * inverse(ma), ma * b.v};
    d.points[i + 1] = a;
  }
}

}  // namespace detail

/// Hurwitz action of a braid word on an n-point datum (generators 1..n-1).
/// Left action: the rightmost letter acts first, so act(d, w1 w2) = act(act(d, w2), w1).
/// Conjugates m_{i+1} past m_i and preserves the product m_1 ... m_n.
inline GMVData gmv_braid_act(const GMVData& d, const BraidWord& w) {
  const auto report = gmv_validate(d);
  if (!report.valid) throw Error(ErrorCode::Singular, "datum is not perverse: " + report.failure->message);
  const auto n = static_cast<std::int64_t>(d.points.size());
  for (const auto& l : w) {
    if (l.index < 1 || l.index >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "generator s" + std::to_string(l.index) + " on a " + std::to_string(n) + "-point datum");
    }
  }
  GMVData out = d;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    detail::hurwitz_step(out, static_cast<std::size_t>(it->index - 1), it->sign);
  }
  return out;
}

/// 1 - u v on the source of u, for u : D -> D' and v : D' -> D.
inline Matrix cotwist(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.cols() || u.cols() != v.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "u is " + u.shape() + ", v is " + v.shape());
  }
  return Matrix::identity(u.rows()) - u * v;
}

// ---------------------------------------------------------------------------
// KS description of a perverse sheaf on a disk with one singular point:
// E_- <-> E_0 <-> E_+ with v_+- u_+- = 1 and v_+ u_-, v_- u_+ invertible.
// ---------------------------------------------------------------------------

struct KSQuiverData {
  std::size_t dim_minus = 0;
  std::size_t dim_zero = 0;
  std::size_t dim_plus = 0;
  Matrix u_minus;  // E_- -> E_0
  Matrix u_plus;   // E_+ -> E_0
  Matrix v_minus;  // E_0 -> E_-
  Matrix v_plus;   // E_0 -> E_+
  friend bool operator==(const KSQuiverData&, const KSQuiverData&) = default;
};

struct KsReport {
  bool valid = false;
  std::optional<Matrix> transition_plus_minus;  // v_+ u_- : E_- -> E_+
  std::optional<Matrix> transition_minus_plus;  // v_- u_+ : E_+ -> E_-
  std::optional<Matrix> mu_plus;                // t_{+-} t_{-+} on E_+
  std::optional<Matrix> mu_minus;               // t_{-+} t_{+-} on E_-
  std::optional<Failure> failure;
};

inline KsReport ks_validate(const KSQuiverData& k) {
  auto expect = [](const Matrix& m, std::size_t r, std::size_t c, const char* name) {
    if (m.rows() != r || m.cols() != c) {
      throw Error(ErrorCode::ShapeMismatch, std::string(name) + " is " + m.shape() + ", expected " +
                                                std::to_string(r) + "x" + std::to_string(c));
    }
  };
  expect(k.u_minus, k.dim_zero, k.dim_minus, "u_minus");
  expect(k.u_plus, k.dim_zero, k.dim_plus, "u_plus");
  expect(k.v_minus, k.dim_minus, k.dim_zero, "v_minus");
  expect(k.v_plus, k.dim_plus, k.dim_zero, "v_plus");

  KsReport r;
  if (!(k.v_minus * k.u_minus).is_identity()) {
    r.failure = Failure{ErrorCode::RelationViolated, "v_minus u_minus", "v_- u_- is not the identity"};
    return r;
  }
  if (!(k.v_plus * k.u_plus).is_identity()) {
    r.failure = Failure{ErrorCode::RelationViolated, "v_plus u_plus", "v_+ u_+ is not the identity"};
    return r;
  }
  Matrix t_pm = k.v_plus * k.u_minus;
  Matrix t_mp = k.v_minus * k.u_plus;
  if (!is_invertible(t_pm)) {
    r.failure = Failure{ErrorCode::Singular, "v_plus u_minus", "v_+ u_- is not an isomorphism"};
    return r;
  }
  if (!is_invertible(t_mp)) {
    r.failure = Failure{ErrorCode::Singular, "v_minus u_plus", "v_- u_+ is not an isomorphism"};
    return r;
  }
  r.valid = true;
  r.mu_plus = t_pm * t_mp;
  r.mu_minus = t_mp * t_pm;
  r.transition_plus_minus = std::move(t_pm);
  r.transition_minus_plus = std::move(t_mp);
  return r;
}

// ---------------------------------------------------------------------------
// Linear spherical pair: E_0 = Q_- (+) P_- = Q_+ (+) P_+, subspaces given by
// basis columns, with all four cross compositions invertible.
// ---------------------------------------------------------------------------

struct LinearSphericalPair {
  std::size_t total_dim = 0;
  Matrix q_minus;
  Matrix p_minus;
  Matrix q_plus;
  Matrix p_plus;
  friend bool operator==(const LinearSphericalPair&, const LinearSphericalPair&) = default;
};

/// All canonical maps between the pieces of a valid pair. pi_A iota_B is
/// written a_from_b; projections are taken along the complement in the same
/// decomposition.
struct PairMaps {
  Matrix q_plus_from_q_minus;   // h_{-+} : Q_- -> Q_+
  Matrix q_minus_from_q_plus;   // h_{+-} : Q_+ -> Q_-
  Matrix p_plus_from_p_minus;
  Matrix p_minus_from_p_plus;
  Matrix q_plus_from_p_minus;   // v_1 of the induced spherical functor P_- -> Q_+
  Matrix p_minus_from_q_plus;   // u_1
};

struct PairReport {
  bool valid = false;
  std::optional<PairMaps> maps;
  std::optional<Failure> failure;
};

inline PairReport pair_validate(const LinearSphericalPair& p) {
  const std::size_t n = p.total_dim;
  const std::pair<const Matrix*, const char*> bases[] = {
      {&p.q_minus, "q_minus"}, {&p.p_minus, "p_minus"}, {&p.q_plus, "q_plus"}, {&p.p_plus, "p_plus"}};
  for (const auto& [m, name] : bases) {
    if (m->rows() != n) {
      throw Error(ErrorCode::ShapeMismatch, std::string(name) + " has " + std::to_string(m->rows()) +
                                                " rows, total dimension is " + std::to_string(n));
    }
  }
  PairReport r;
  const Matrix minus_basis = hstack(p.q_minus, p.p_minus);
  const Matrix plus_basis = hstack(p.q_plus, p.p_plus);
  auto minus_inv = minus_basis.is_square() ? mat_rank_inverse_solve(minus_basis).inverse : std::nullopt;
  if (!minus_inv) {
    r.failure = Failure{ErrorCode::NotDirectSum, "minus", "Q_- and P_- do not form a direct sum decomposition"};
    return r;
  }
  auto plus_inv = plus_basis.is_square() ? mat_rank_inverse_solve(plus_basis).inverse : std::nullopt;
  if (!plus_inv) {
    r.failure = Failure{ErrorCode::NotDirectSum, "plus", "Q_+ and P_+ do not form a direct sum decomposition"};
    return r;
  }
  const std::size_t qm = p.q_minus.cols();
  const std::size_t pm = p.p_minus.cols();
  const std::size_t qp = p.q_plus.cols();
  const std::size_t pp = p.p_plus.cols();
  const Matrix coords_plus_of_qm = *plus_inv * p.q_minus;
  const Matrix coords_plus_of_pm = *plus_inv * p.p_minus;
  const Matrix coords_minus_of_qp = *minus_inv * p.q_plus;
  const Matrix coords_minus_of_pp = *minus_inv * p.p_plus;

  PairMaps maps{
      coords_plus_of_qm.block(0, 0, qp, qm),
      coords_minus_of_qp.block(0, 0, qm, qp),
      coords_plus_of_pm.block(qp, 0, pp, pm),
      coords_minus_of_pp.block(qm, 0, pm, pp),
      coords_plus_of_pm.block(0, 0, qp, pm),
      coords_minus_of_qp.block(qm, 0, pm, qp),
  };
  const std::pair<const Matrix*, const char*> cross[] = {
      {&maps.q_plus_from_q_minus, "Q_- -> Q_+"},
      {&maps.q_minus_from_q_plus, "Q_+ -> Q_-"},
      {&maps.p_plus_from_p_minus, "P_- -> P_+"},
      {&maps.p_minus_from_p_plus, "P_+ -> P_-"},
  };
  for (const auto& [m, name] : cross) {
    if (!is_invertible(*m)) {
      r.failure = Failure{ErrorCode::CrossMapSingular, name, std::string("cross map ") + name + " is not invertible"};
      return r;
    }
  }
  r.valid = true;
  r.maps = std::move(maps);
  return r;
}

inline PairMaps require_valid(const LinearSphericalPair& p) {
  auto r = pair_validate(p);
  if (!r.valid) throw Error(r.failure->code, r.failure->message);
  return std::move(*r.maps);
}

/// (h_{-+} : Q_- -> Q_+, h_{+-} : Q_+ -> Q_-)
inline std::pair<Matrix, Matrix> pair_half_monodromies(const LinearSphericalPair& p) {
  PairMaps m = require_valid(p);
  return {std::move(m.q_plus_from_q_minus), std::move(m.q_minus_from_q_plus)};
}

/// Twist of the spherical functor P_- -> Q_+: the composite Q_+ -> Q_- -> Q_+.
inline Matrix pair_twist(const LinearSphericalPair& p) {
  PairMaps m = require_valid(p);
  return m.q_plus_from_q_minus * m.q_minus_from_q_plus;
}

/// One-point GMV datum of the spherical functor P_- -> Q_+: D = Q_+, D_1 = P_-.
/// Resolving the identity of Q_+ against Q_- (+) P_- gives 1 - v_1 u_1 = pair_twist.
inline GMVData pair_to_gmv(const LinearSphericalPair& p) {
  PairMaps m = require_valid(p);
  GMVData d;
  d.ambient_dim = p.q_plus.cols();
  d.points.push_back(GmvPoint{p.p_minus.cols(), std::move(m.p_minus_from_q_plus), std::move(m.q_plus_from_p_minus)});
  return d;
}

}  // namespace schober
