#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "schober/laurent.hpp"
#include "schober/local_system.hpp"
#include "schober/perv_disk.hpp"
#include "schober/surface.hpp"

namespace schober {

// ---------------------------------------------------------------------------
// Toric wall crossing C* acting on V = U_+ (+) U_-^dual with weights a_i on U_+
// and -b_j on U_-^dual. Equivariant K-theory is modelled by Laurent polynomials
// in the character t; restriction to X_-/X_+ kills the Koszul classes
// prod(1 - t^a_i) and prod(1 - t^-b_j).
//
// Two labelings of windows appear below. The pair built by build_git_pair uses
// the exponent offset w: its closed window is t^w .. t^(w+eta). Window
// equivalences Phi^k use the lambda-weight offset k, where lambda-weights are
// negated exponents, so Phi^k restricts from exponents -k-eta+1 .. -k.
// ---------------------------------------------------------------------------

struct WallCrossingSpec {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  std::int64_t w = 0;
  friend bool operator==(const WallCrossingSpec&, const WallCrossingSpec&) = default;
};

inline void validate_spec(const WallCrossingSpec& s) {
  if (s.a.empty() || s.b.empty()) throw Error(ErrorCode::NotCalabiYau, "both weight lists must be nonempty");
  std::int64_t sa = 0;
  std::int64_t sb = 0;
  for (auto x : s.a) {
    if (x <= 0) throw Error(ErrorCode::Unsupported, "weights must be strictly positive");
    sa = checked_add(sa, x);
  }
  for (auto x : s.b) {
    if (x <= 0) throw Error(ErrorCode::Unsupported, "weights must be strictly positive");
    sb = checked_add(sb, x);
  }
  if (sa != sb) {
    throw Error(ErrorCode::NotCalabiYau, "sum of a-weights " + std::to_string(sa) + " differs from sum of b-weights " +
                                             std::to_string(sb));
  }
}

/// prod_i (1 - t^a_i): the unstable locus removed to form X_-.
inline LaurentPoly koszul_minus(const WallCrossingSpec& s) {
  LaurentPoly p = LaurentPoly::monomial(0);
  for (auto x : s.a) p = p * LaurentPoly::one_minus_power(x);
  return p;
}

/// prod_j (1 - t^-b_j): the unstable locus removed to form X_+.
inline LaurentPoly koszul_plus(const WallCrossingSpec& s) {
  LaurentPoly p = LaurentPoly::monomial(0);
  for (auto x : s.b) p = p * LaurentPoly::one_minus_power(-x);
  return p;
}

enum class Direction { MinusToPlus, PlusToMinus };

inline std::string_view to_string(Direction d) { return d == Direction::MinusToPlus ? "-+" : "+-"; }

struct KPresentation {
  WallCrossingSpec spec;
  std::int64_t eta = 0;
  std::int64_t eta_minus = 0;  // span of koszul_minus
  std::int64_t eta_plus = 0;   // span of koszul_plus
  LaurentPoly koszul_minus;
  LaurentPoly koszul_plus;
  ExponentWindow window;         // w .. w+eta-1, basis of Q_+
  ExponentWindow closed_window;  // w .. w+eta, basis of E_0
  Matrix res_minus;              // E_0 -> K(X_-) on t^(w+1) .. t^(w+eta)
  Matrix res_plus;               // E_0 -> K(X_+) on t^w .. t^(w+eta-1)
  std::int64_t lambda_offset = 0;  // k with T = Phi^k Phi^(k+1) for this pair
  Matrix phi_minus_plus;           // Phi^k : K(X_-) -> K(X_+)
  Matrix phi_plus_minus;           // Phi^(k+1) : K(X_+) -> K(X_-)
};

/// Exponents of the lambda-window [k, k+eta).
inline ExponentWindow lambda_window(std::int64_t k, std::int64_t eta) {
  return ExponentWindow::of_length(checked_add(checked_sub(-k, eta), 1), eta);
}

/// Phi^k = res_target o res_source^-1 through the window [k, k+eta). The source
/// side is given the window's own monomial basis; the target basis is the window
/// moved one step along the target's line bundle (down for X_+, up for X_-).
inline Matrix window_equivalence(const WallCrossingSpec& s, std::int64_t k, Direction dir) {
  validate_spec(s);
  const LaurentPoly km = koszul_minus(s);
  const LaurentPoly kp = koszul_plus(s);
  const std::int64_t eta = km.span();
  const ExponentWindow g = lambda_window(k, eta);
  const ExponentWindow down = ExponentWindow::of_length(checked_sub(g.lo, 1), eta);
  const ExponentWindow up = ExponentWindow::of_length(checked_add(g.lo, 1), eta);
  if (dir == Direction::MinusToPlus) {
    const Matrix res_source = reduction_matrix(km, g, g);
    return reduction_matrix(kp, g, down) * inverse(res_source);
  }
  const Matrix res_source = reduction_matrix(kp, g, g);
  return reduction_matrix(km, g, up) * inverse(res_source);
}

inline KPresentation build_windows(const WallCrossingSpec& s) {
  validate_spec(s);
  KPresentation k;
  k.spec = s;
  k.koszul_minus = koszul_minus(s);
  k.koszul_plus = koszul_plus(s);
  k.eta_minus = k.koszul_minus.span();
  k.eta_plus = k.koszul_plus.span();
  if (k.eta_minus != k.eta_plus) {
    throw Error(ErrorCode::NotCalabiYau, "window widths " + std::to_string(k.eta_minus) + " and " +
                                             std::to_string(k.eta_plus) + " differ");
  }
  k.eta = k.eta_plus;
  k.window = ExponentWindow::of_length(s.w, k.eta);
  k.closed_window = ExponentWindow::of_length(s.w, checked_add(k.eta, 1));
  k.res_minus = reduction_matrix(k.koszul_minus, k.closed_window, ExponentWindow::of_length(s.w + 1, k.eta));
  k.res_plus = reduction_matrix(k.koszul_plus, k.closed_window, k.window);
  k.lambda_offset = checked_sub(-s.w, k.eta);
  k.phi_minus_plus = window_equivalence(s, k.lambda_offset, Direction::MinusToPlus);
  k.phi_plus_minus = window_equivalence(s, k.lambda_offset + 1, Direction::PlusToMinus);
  return k;
}

/// E_0 on exponents w..w+eta; P_- = t^w koszul_minus, P_+ = t^(w+eta) koszul_plus,
/// Q_- = e_(w+1)..e_(w+eta), Q_+ = e_w..e_(w+eta-1).
inline LinearSphericalPair build_git_pair(const WallCrossingSpec& s) {
  validate_spec(s);
  const LaurentPoly km = koszul_minus(s);
  const LaurentPoly kp = koszul_plus(s);
  const std::int64_t eta = km.span();
  const ExponentWindow e0 = ExponentWindow::of_length(s.w, eta + 1);
  const auto n = static_cast<std::size_t>(eta + 1);
  LinearSphericalPair p;
  p.total_dim = n;
  p.p_minus = coefficient_column(km.shifted(s.w), e0);
  p.p_plus = coefficient_column(kp.shifted(checked_add(s.w, eta)), e0);
  p.q_minus = Matrix(n, n - 1);
  p.q_plus = Matrix(n, n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    p.q_minus(j + 1, j) = 1;
    p.q_plus(j, j) = 1;
  }
  const auto r = pair_validate(p);
  if (!r.valid) {
    throw Error(ErrorCode::CrossMapSingular, "GIT pair fails validation: " + r.failure->message);
  }
  return p;
}

struct TwistPhiReport {
  bool equal = false;
  std::int64_t lambda_offset = 0;
  Matrix twist;      // pair_twist on Q_+
  Matrix composite;  // Phi^k Phi^(k+1)
};

inline TwistPhiReport twist_vs_phi(const WallCrossingSpec& s) {
  const KPresentation k = build_windows(s);
  TwistPhiReport r;
  r.lambda_offset = k.lambda_offset;
  r.twist = pair_twist(build_git_pair(s));
  r.composite = k.phi_minus_plus * k.phi_plus_minus;
  r.equal = r.twist == r.composite;
  return r;
}

// ---------------------------------------------------------------------------
// Standard flop with exceptional P^n and normal bundle O(-1)^(n+1).
// ---------------------------------------------------------------------------

inline Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// chi(P^n, O(d)) = C(d+n, n) as a polynomial in d.
inline Integer chi_pn(std::int64_t n, std::int64_t d) {
  if (n < 0) throw Error(ErrorCode::Unsupported, "chi_pn needs n >= 0");
  Integer num = 1;
  Integer den = 1;
  for (std::int64_t k = 1; k <= n; ++k) {
    num *= Integer(d) + k;
    den *= k;
  }
  return num / den;
}

/// chi(O_E(i), O_E(j)) in Tot(O(-1)^(n+1)) via the Koszul resolution of O_E.
inline Integer euler_pairing_flop(std::int64_t n, std::int64_t i, std::int64_t j) {
  if (n < 0) throw Error(ErrorCode::Unsupported, "euler_pairing_flop needs n >= 0");
  Integer sum = 0;
  for (std::int64_t k = 0; k <= n + 1; ++k) {
    Integer term = binomial(n + 1, k) * chi_pn(n, checked_add(checked_sub(j, i), k));
    sum += (k % 2 == 0) ? term : Integer(-term);
  }
  return sum;
}

/// Relation of K(P^n): (1 - t)^(n+1).
inline LaurentPoly pn_relation(std::int64_t n) {
  LaurentPoly p = LaurentPoly::monomial(0);
  for (std::int64_t k = 0; k <= n; ++k) p = p * LaurentPoly::one_minus_power(1);
  return p;
}

struct FlopModel {
  std::int64_t n = 1;
  WallCrossingSpec local_spec;          // a = b = (1, ..., 1), w = -1
  ExponentWindow basis_plus;            // [O(k)] on X_+, k = -1 .. n-1
  ExponentWindow basis_minus;           // [O(k)] on X_-, k = 0 .. n
  std::vector<std::string> supported_labels;  // [O_E(k)] on the X_+ basis
  std::vector<std::string> ambient_labels;    // [O_X(k)] on the X_+ basis
  Matrix flop_minus_plus;  // F : K(X_-) -> K(X_+)
  Matrix flop_plus_minus;  // F : K(X_+) -> K(X_-)
  Matrix line_plus;        // (x) L_+ on K(X_+)
  Matrix line_minus;       // (x) L_- on K(X_-)
};

inline FlopModel build_flop_model(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::Unsupported, "flop model needs n >= 1");
  FlopModel m;
  m.n = n;
  m.local_spec = WallCrossingSpec{std::vector<std::int64_t>(n + 1, 1), std::vector<std::int64_t>(n + 1, 1), -1};
  const KPresentation k = build_windows(m.local_spec);
  m.basis_plus = ExponentWindow::of_length(-1, n + 1);
  m.basis_minus = ExponentWindow::of_length(0, n + 1);
  for (std::int64_t e = m.basis_plus.lo; e <= m.basis_plus.hi; ++e) {
    m.supported_labels.push_back("O_E(" + std::to_string(e) + ")");
    m.ambient_labels.push_back("O_X(" + std::to_string(e) + ")");
  }
  std::tie(m.flop_minus_plus, m.flop_plus_minus) = pair_half_monodromies(build_git_pair(m.local_spec));
  const ExponentWindow up{m.basis_plus.lo + 1, m.basis_plus.hi + 1};
  const ExponentWindow down{m.basis_minus.lo - 1, m.basis_minus.hi - 1};
  m.line_plus = reduction_matrix(k.koszul_plus, up, m.basis_plus);
  m.line_minus = reduction_matrix(k.koszul_minus, down, m.basis_minus);
  return m;
}

/// Spherical object O_E(w) on the supported lattice: v = its class, u = chi(O_E(w), -).
inline TwistPresentation flop_twist_presentation(std::int64_t n, std::int64_t w) {
  const ExponentWindow basis = ExponentWindow::of_length(-1, n + 1);
  TwistPresentation t;
  t.v = coefficient_column(laurent_reduce(LaurentPoly::monomial(w), pn_relation(n), basis), basis);
  t.u = Matrix(1, static_cast<std::size_t>(n + 1));
  for (std::int64_t k = basis.lo; k <= basis.hi; ++k) {
    t.u(0, static_cast<std::size_t>(k - basis.lo)) = Rational(euler_pairing_flop(n, w, k));
  }
  return t;
}

struct RelationCheck {
  std::string name;
  bool pass = false;
  Matrix lhs;
  Matrix rhs;
  std::string message;
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.pass; });
  }
};

/// (R1) FF = T_{O_E(-1)}^-1, (R2) F_{+-}^-1 = L_+^-1 F_{-+} L_-^-1,
/// (R3) F_{+-}^-1 L_- F_{-+}^-1 L_+ = Id, (R4) rank(L_+ - Id) = rank(L_- - Id) = 1.
inline RelationReport verify_relations(const FlopModel& m) {
  if (m.n != 1) throw Error(ErrorCode::Unsupported, "relation suite is asserted for n = 1 only");
  RelationReport r;
  auto run = [&r](std::string name, auto&& sides) {
    RelationCheck c;
    c.name = std::move(name);
    try {
      std::tie(c.lhs, c.rhs) = sides();
      c.pass = c.lhs == c.rhs;
    } catch (const Error& e) {
      c.pass = false;
      c.message = e.what();
    }
    r.checks.push_back(std::move(c));
  };
  run("R1 flop-flop inverts twist", [&] {
    return std::pair{m.flop_minus_plus * m.flop_plus_minus, inverse(twist_matrix(flop_twist_presentation(m.n, -1)))};
  });
  run("R2 inverse flop", [&] {
    return std::pair{inverse(m.flop_plus_minus),
                     inverse(m.line_plus) * m.flop_minus_plus * inverse(m.line_minus)};
  });
  run("R3 monodromy at infinity", [&] {
    Matrix w = inverse(m.flop_plus_minus) * m.line_minus * inverse(m.flop_minus_plus) * m.line_plus;
    return std::pair{w, Matrix::identity(w.rows())};
  });
  run("R4 rank one line twists", [&] {
    const Matrix ip = Matrix::identity(m.line_plus.rows());
    const Matrix im = Matrix::identity(m.line_minus.rows());
    Matrix lhs{{Rational(rank(m.line_plus - ip)), Rational(rank(m.line_minus - im))}};
    return std::pair{lhs, Matrix{{1, 1}}};
  });
  return r;
}

// ---------------------------------------------------------------------------
// Schober on (C, iZ): generic fibre K(X_+), monodromy around iw given by
// T^w = Phi^w Phi^(w+1), truncated to w in [first, last].
// ---------------------------------------------------------------------------

struct PeriodicSchober {
  WallCrossingSpec spec;  // spec.w fixes the fibre bases
  std::int64_t first = 0;
  std::int64_t last = -1;
  ExponentWindow fibre_plus;   // basis of K(X_+)
  ExponentWindow fibre_minus;  // basis of K(X_-)
  GMVData disk;                // point i sits at i(first + i)
  std::vector<Matrix> half_minus_plus;  // Phi^w
  std::vector<Matrix> half_plus_minus;  // Phi^(w+1)

  std::int64_t offset(std::size_t i) const { return first + static_cast<std::int64_t>(i); }

  /// Truncation as a surface schober whose outside is a circle at `basepoint`.
  SurfaceSchober surface(const std::string& basepoint = "x") const {
    const auto r = gmv_validate(disk);
    SurfaceSchober s;
    s.disk = disk;
    s.basepoint = basepoint;
    s.outside.presentation.basepoints = {basepoint};
    s.outside.presentation.generators = {{"boundary", basepoint, basepoint}};
    s.outside.dims[basepoint] = disk.ambient_dim;
    s.outside.matrices["boundary"] = r.total_monodromy;
    s.boundary_word = {{"boundary", 1}};
    return s;
  }
};

/// Generic GIT instance: each point is pair_to_gmv of the pair at exponent offset
/// -w-eta, transported into fixed fibre bases t^spec.w.. (X_+) and t^(spec.w+1).. (X_-).
inline PeriodicSchober build_git_schober_C(const WallCrossingSpec& spec, std::int64_t first, std::int64_t last) {
  validate_spec(spec);
  const LaurentPoly km = koszul_minus(spec);
  const LaurentPoly kp = koszul_plus(spec);
  const std::int64_t eta = km.span();
  PeriodicSchober c;
  c.spec = spec;
  c.first = first;
  c.last = last;
  c.fibre_plus = ExponentWindow::of_length(spec.w, eta);
  c.fibre_minus = ExponentWindow::of_length(spec.w + 1, eta);
  c.disk.ambient_dim = static_cast<std::size_t>(eta);
  for (std::int64_t w = first; w <= last; ++w) {
    WallCrossingSpec local = spec;
    local.w = checked_sub(-w, eta);
    const ExponentWindow qp = ExponentWindow::of_length(local.w, eta);
    const ExponentWindow qm = ExponentWindow::of_length(local.w + 1, eta);
    const Matrix to_plus = reduction_matrix(kp, qp, c.fibre_plus);
    const Matrix from_plus = inverse(to_plus);
    const Matrix to_minus = reduction_matrix(km, qm, c.fibre_minus);
    const Matrix from_minus = inverse(to_minus);
    GMVData d = pair_to_gmv(build_git_pair(local));
    GmvPoint pt = d.points.front();
    c.disk.points.push_back(GmvPoint{pt.local_dim, pt.u * from_plus, to_plus * pt.v});
    c.half_minus_plus.push_back(to_plus * window_equivalence(spec, w, Direction::MinusToPlus) * from_minus);
    c.half_plus_minus.push_back(to_minus * window_equivalence(spec, w + 1, Direction::PlusToMinus) * from_plus);
  }
  return c;
}

/// Flop instance (n = 1): points carry the spherical objects O_E(w) with Euler
/// pairing rows, so every T^w is the identity; half monodromies from the windows.
inline PeriodicSchober build_schober_C(std::int64_t n, std::int64_t first, std::int64_t last) {
  if (n != 1) throw Error(ErrorCode::Unsupported, "schober on (C, iZ) is built for n = 1 only");
  const FlopModel m = build_flop_model(n);
  PeriodicSchober c = build_git_schober_C(m.local_spec, first, last);
  for (std::size_t i = 0; i < c.disk.points.size(); ++i) {
    const TwistPresentation t = flop_twist_presentation(n, c.offset(i));
    c.disk.points[i] = GmvPoint{t.u.rows(), t.u, t.v};
  }
  return c;
}

// ---------------------------------------------------------------------------
// SKMS: P^1 minus {+1, -1, p}. Basepoints x_+ and x_-, loops l_+ / l_- around
// +1 / -1 and the two half-arcs around p acting by the flop functors.
// ---------------------------------------------------------------------------

struct SKMSPresentation {
  LatticeLocalSystem system;
  std::string x_plus = "x+";
  std::string x_minus = "x-";
  PathWord infinity;  // loop around infinity based at x_+
};

inline SKMSPresentation build_skms(const FlopModel& m) {
  SKMSPresentation s;
  auto& p = s.system.presentation;
  p.basepoints = {s.x_plus, s.x_minus};
  p.generators = {
      {"l+", s.x_plus, s.x_plus},
      {"l-", s.x_minus, s.x_minus},
      {"f+-", s.x_plus, s.x_minus},
      {"f-+", s.x_minus, s.x_plus},
  };
  s.infinity = {{"l+", 1}, {"f-+", -1}, {"l-", 1}, {"f+-", -1}};
  p.relations = {{"infinity", s.infinity}};
  s.system.dims = {{s.x_plus, m.line_plus.rows()}, {s.x_minus, m.line_minus.rows()}};
  s.system.matrices = {
      {"l+", m.line_plus},
      {"l-", m.line_minus},
      {"f+-", m.flop_plus_minus},
      {"f-+", m.flop_minus_plus},
  };
  return s;
}

inline SKMSPresentation build_skms() { return build_skms(build_flop_model(1)); }

/// Rank-one presentations of the line bundle loops: L_+ = 1 - v u, L_- = 1 - v' u'.
inline std::vector<PunctureTwist> skms_puncture_twists(const SKMSPresentation& s) {
  return {
      {s.x_plus, {{"l+", 1}}, TwistPresentation{Matrix{{1, 1}}, Matrix{{1}, {-1}}}},
      {s.x_minus, {{"l-", 1}}, TwistPresentation{Matrix{{1, 1}}, Matrix{{-1}, {1}}}},
  };
}

/// The Z-cover C - Z -> M: upper sheets over x_+, lower over x_-; l_+ moves the
/// upper sheet k to k+1, l_- moves the lower sheet k to k-1.
inline CoveringSpec skms_cover(const SKMSPresentation& s, std::int64_t N) {
  return cyclic_cover(s.system.presentation, {{"l+", 1}, {"l-", -1}}, -N, N);
}

/// Loop based at x_+ on sheet 0 around the integer j of C - Z: along the upper
/// sheets to j, around the two half-arcs, and back.
inline PathWord skms_loop_around(const SKMSPresentation& s, const CoveringSpec& c, std::int64_t j) {
  PathWord go;
  for (std::int64_t i = 0; i < (j < 0 ? -j : j); ++i) go.push_back({"l+", j < 0 ? -1 : 1});
  const PathWord base = go + PathWord{{"f-+", -1}, {"f+-", -1}} + inverse(go);
  return lift_word(s.system.presentation, c, base, s.x_plus, 0);
}

inline std::string skms_coarse_basepoint(const SKMSPresentation& s) { return s.x_plus + sheet_suffix(0); }

struct PullbackRefinementReport {
  std::int64_t window = 0;
  std::vector<std::int64_t> checked;  // interior w
  std::vector<std::int64_t> failed;   // w whose loop around w+1 differs from T^w
  bool boundary_ok = false;           // product of all loops
  bool pattern_ok = false;            // sheetwise F / (x)L pattern
  std::vector<BoundaryLift> boundary_lifts;
  bool pass() const { return failed.empty() && boundary_ok && pattern_ok; }
};

namespace detail {

inline bool skms_pattern_matches(const LatticeLocalSystem& fine, const SKMSPresentation& s, std::int64_t N,
                                 const std::vector<BoundaryLift>& boundary) {
  for (std::int64_t k = -N; k <= N; ++k) {
    for (const auto& g : s.system.presentation.generators) {
      const bool leaves = (g.label == "l+" && k == N) || (g.label == "l-" && k == -N);
      auto it = fine.matrices.find(g.label + sheet_suffix(k));
      if (leaves != (it == fine.matrices.end())) return false;
      if (!leaves && !(it->second == s.system.matrix(g.label))) return false;
    }
  }
  if (boundary.size() != 2) return false;
  for (const auto& b : boundary) {
    if (!((b.generator == "l+" && b.sheet == N) || (b.generator == "l-" && b.sheet == -N))) return false;
  }
  return true;
}

}  // namespace detail

/// Refinement check of a (possibly modified) pulled-back system against the
/// schober on (C, iZ): for interior w the loop around w+1 must act by T^w.
inline PullbackRefinementReport skms_refinement_against_C(const LatticeLocalSystem& fine, const SKMSPresentation& s,
                                                          std::int64_t N) {
  if (N < 1) throw Error(ErrorCode::TruncationBoundary, "window [-N, N] has no interior sheet for N < 1");
  const CoveringSpec c = skms_cover(s, N);
  const PeriodicSchober C = build_schober_C(1, -N + 1, N - 1);
  const LatticeLocalSystem coarse = restrict_full(C.surface(skms_coarse_basepoint(s)));
  RefinementMap fact;
  PathWord all;
  for (std::size_t i = 0; i < C.disk.points.size(); ++i) {
    PathWord loop = skms_loop_around(s, c, C.offset(i) + 1);
    all = loop + all;
    fact[loop_label(i)] = std::move(loop);
  }
  fact["boundary"] = all;
  PullbackRefinementReport r;
  r.window = N;
  const auto bad = refinement_mismatches(coarse, fine, fact);
  r.boundary_ok = true;
  for (std::size_t i = 0; i < C.disk.points.size(); ++i) {
    r.checked.push_back(C.offset(i));
    if (std::find(bad.begin(), bad.end(), loop_label(i)) != bad.end()) r.failed.push_back(C.offset(i));
  }
  if (std::find(bad.begin(), bad.end(), "boundary") != bad.end()) r.boundary_ok = false;
  return r;
}

inline PullbackRefinementReport skms_pullback_refines(const FlopModel& m, std::int64_t N) {
  if (m.n != 1) throw Error(ErrorCode::Unsupported, "pullback refinement is asserted for n = 1 only");
  const SKMSPresentation s = build_skms(m);
  const Pullback pb = ls_pullback(s.system, skms_cover(s, N));
  PullbackRefinementReport r = skms_refinement_against_C(pb.system, s, N);
  r.boundary_lifts = pb.boundary;
  r.pattern_ok = detail::skms_pattern_matches(pb.system, s, N, pb.boundary);
  return r;
}

}  // namespace schober
