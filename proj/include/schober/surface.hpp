#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schober/local_system.hpp"
#include "schober/perv_disk.hpp"

namespace schober {

/// Disk datum around the singular points, a local system on the rest of the
/// surface, and a loop at x in the outside generators tracing the disk boundary.
struct SurfaceSchober {
  GMVData disk;
  LatticeLocalSystem outside;
  std::string basepoint;
  PathWord boundary_word;
  friend bool operator==(const SurfaceSchober&, const SurfaceSchober&) = default;
};

/// Spherical functor shadow u : D -> D', v : D' -> D with twist 1 - v u on D.
struct TwistPresentation {
  Matrix u;
  Matrix v;
  friend bool operator==(const TwistPresentation&, const TwistPresentation&) = default;
};

inline Matrix twist_matrix(const TwistPresentation& t) {
  if (t.u.rows() != t.v.cols() || t.u.cols() != t.v.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "u is " + t.u.shape() + ", v is " + t.v.shape());
  }
  return Matrix::identity(t.v.rows()) - t.v * t.u;
}

struct SurfaceReport {
  bool valid = true;
  std::optional<Failure> failure;
  std::optional<Matrix> boundary_monodromy;  // outside, along the boundary word
  std::optional<Matrix> disk_monodromy;      // m_1 ... m_n
};

inline void require_loop(const GroupoidPresentation& p, const PathWord& w, const std::string& x, const char* what) {
  std::string end;
  try {
    end = path_endpoint(p, w, x);
  } catch (const Error& e) {
    throw Error(ErrorCode::BadLoop, std::string(what) + ": " + e.what());
  }
  if (end != x) throw Error(ErrorCode::BadLoop, std::string(what) + " ends at " + end + ", not at " + x);
}

inline SurfaceReport surface_validate(const SurfaceSchober& s) {
  SurfaceReport r;
  const auto disk = gmv_validate(s.disk);
  if (!disk.valid) {
    r.valid = false;
    r.failure = disk.failure;
    return r;
  }
  const auto out = ls_validate(s.outside);
  if (!out.valid) {
    r.valid = false;
    r.failure = out.failure;
    return r;
  }
  if (!s.outside.presentation.has_basepoint(s.basepoint)) {
    throw Error(ErrorCode::ShapeMismatch, "disk basepoint '" + s.basepoint + "' is not an outside basepoint");
  }
  if (s.outside.dim(s.basepoint) != s.disk.ambient_dim) {
    throw Error(ErrorCode::ShapeMismatch, "disk fibre has dimension " + std::to_string(s.disk.ambient_dim) +
                                              ", outside fibre at " + s.basepoint + " has " +
                                              std::to_string(s.outside.dim(s.basepoint)));
  }
  require_loop(s.outside.presentation, s.boundary_word, s.basepoint, "boundary word");
  r.boundary_monodromy = ls_monodromy(s.outside, s.boundary_word, s.basepoint);
  r.disk_monodromy = disk.total_monodromy;
  if (!(*r.boundary_monodromy == *r.disk_monodromy)) {
    r.valid = false;
    r.failure = Failure{ErrorCode::BoundaryMismatch, "boundary",
                        "boundary monodromy " + to_string(*r.boundary_monodromy) + " differs from disk monodromy " +
                            to_string(*r.disk_monodromy)};
  }
  return r;
}

inline void require_valid(const SurfaceSchober& s) {
  auto r = surface_validate(s);
  if (!r.valid) throw Error(r.failure->code, r.failure->message);
}

inline std::string loop_label(std::size_t i) { return "gamma" + std::to_string(i + 1); }

/// Local system on the surface minus the singular points: the outside system
/// plus one loop gamma_i at x acting by m_i, glued by the relation that the
/// boundary word equals gamma_1 ... gamma_n.
inline LatticeLocalSystem restrict_full(const SurfaceSchober& s) {
  require_valid(s);
  LatticeLocalSystem L = s.outside;
  const std::size_t n = s.disk.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string label = loop_label(i);
    if (L.presentation.find_generator(label)) {
      throw Error(ErrorCode::ShapeMismatch, "outside system already has a generator named '" + label + "'");
    }
    L.presentation.generators.push_back({label, s.basepoint, s.basepoint});
    L.matrices[label] = local_monodromy(s.disk, i);
  }
  if (n > 0) {
    PathWord rel = s.boundary_word;
    for (std::size_t i = 0; i < n; ++i) rel.push_back({loop_label(i), -1});
    L.presentation.relations.push_back({"boundary", std::move(rel)});
  }
  return L;
}

/// Fills a puncture p whose loop from x has twist-shaped monodromy: the disk is
/// enlarged across the loop and the spherical functor is appended as a new point.
inline SurfaceSchober extend_with_twist(const SurfaceSchober& s, const PathWord& loop, const TwistPresentation& t) {
  require_valid(s);
  require_loop(s.outside.presentation, loop, s.basepoint, "puncture loop");
  const Matrix m = twist_matrix(t);
  if (m.rows() != s.disk.ambient_dim) {
    throw Error(ErrorCode::ShapeMismatch, "twist acts on dimension " + std::to_string(m.rows()));
  }
  const Matrix actual = ls_monodromy(s.outside, loop, s.basepoint);
  if (!(actual == m)) {
    throw Error(ErrorCode::MonodromyNotTwist,
                "loop monodromy " + to_string(actual) + " is not 1 - v u = " + to_string(m));
  }
  SurfaceSchober out = s;
  out.disk.points.push_back(GmvPoint{t.u.rows(), t.u, t.v});
  out.boundary_word = loop + s.boundary_word;
  return out;
}

/// Local system near a puncture p together with a spherical pair whose half
/// monodromies match the two half-loops around p.
struct PairTypeSchober {
  LatticeLocalSystem local_system;
  LinearSphericalPair pair;
  std::string x_plus;
  std::string x_minus;
  PathWord half_minus_plus;  // x_- -> x_+
  PathWord half_plus_minus;  // x_+ -> x_-

  /// Plain schober: disk datum of the functor P_- -> Q_+ based at x_+.
  SurfaceSchober induced() const {
    return SurfaceSchober{pair_to_gmv(pair), local_system, x_plus, half_plus_minus + half_minus_plus};
  }
};

inline PairTypeSchober extend_with_pair(const LatticeLocalSystem& L, const LinearSphericalPair& p,
                                        const std::string& x_plus, const std::string& x_minus,
                                        const PathWord& half_minus_plus, const PathWord& half_plus_minus) {
  const auto [h_mp, h_pm] = pair_half_monodromies(p);
  if (L.dim(x_plus) != p.q_plus.cols() || L.dim(x_minus) != p.q_minus.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "fibres at x_+ / x_- do not match Q_+ / Q_-");
  }
  if (path_endpoint(L.presentation, half_minus_plus, x_minus) != x_plus ||
      path_endpoint(L.presentation, half_plus_minus, x_plus) != x_minus) {
    throw Error(ErrorCode::BadLoop, "half-loops must run between x_- and x_+");
  }
  const Matrix a = ls_monodromy(L, half_minus_plus, x_minus);
  const Matrix b = ls_monodromy(L, half_plus_minus, x_plus);
  if (!(a == h_mp)) {
    throw Error(ErrorCode::HalfMonodromyMismatch,
                "half-loop x_- -> x_+ acts by " + to_string(a) + ", pair gives " + to_string(h_mp));
  }
  if (!(b == h_pm)) {
    throw Error(ErrorCode::HalfMonodromyMismatch,
                "half-loop x_+ -> x_- acts by " + to_string(b) + ", pair gives " + to_string(h_pm));
  }
  PairTypeSchober out{L, p, x_plus, x_minus, half_minus_plus, half_plus_minus};
  require_valid(out.induced());
  return out;
}

/// A puncture to be filled: a loop around it from a basepoint and the spherical
/// functor whose twist should realize the loop's monodromy.
struct PunctureTwist {
  std::string basepoint;
  PathWord loop;
  TwistPresentation twist;
};

struct CompactifyReport {
  bool accepted = true;
  std::optional<Failure> failure;
};

inline CompactifyReport compactify_check(const LatticeLocalSystem& L, const std::vector<PunctureTwist>& punctures,
                                         const PathWord& global_relation) {
  CompactifyReport r;
  auto reject = [&r](ErrorCode code, std::string label, std::string message) {
    r.accepted = false;
    r.failure = Failure{code, std::move(label), std::move(message)};
    return r;
  };
  for (std::size_t i = 0; i < punctures.size(); ++i) {
    const auto& q = punctures[i];
    const std::string label = "q" + std::to_string(i + 1);
    require_loop(L.presentation, q.loop, q.basepoint, "puncture loop");
    Matrix actual;
    try {
      actual = ls_monodromy(L, q.loop, q.basepoint);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Singular) throw;
      return reject(ErrorCode::SingularGenerator, label, e.what());
    }
    const Matrix m = twist_matrix(q.twist);
    if (!(actual == m)) {
      return reject(ErrorCode::MonodromyNotTwist, label,
                    "monodromy around " + label + " is " + to_string(actual) + ", twist is " + to_string(m));
    }
  }
  if (!global_relation.empty()) {
    const std::string start = path_start(L.presentation, global_relation);
    require_loop(L.presentation, global_relation, start, "global relation");
    try {
      const Matrix g = ls_monodromy(L, global_relation, start);
      if (!g.is_identity()) {
        return reject(ErrorCode::GlobalRelationFails, "global", "product of puncture loops is " + to_string(g));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Singular) throw;
      return reject(ErrorCode::SingularGenerator, "global", e.what());
    }
  }
  return r;
}

}  // namespace schober
