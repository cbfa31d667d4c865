#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schober/matrix.hpp"

namespace schober {

/// One step along a generating path, traversed forwards (+1) or backwards (-1).
struct PathLetter {
  std::string gen;
  int sign = 1;
  friend bool operator==(const PathLetter&, const PathLetter&) = default;
};
/// Letters in the order they are traversed.
using PathWord = std::vector<PathLetter>;

inline PathWord inverse(const PathWord& w) {
  PathWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

inline PathWord operator+(PathWord a, const PathWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::string to_string(const PathLetter& l) { return l.sign < 0 ? l.gen + "^-1" : l.gen; }

inline std::string to_string(const PathWord& w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += to_string(l);
  }
  return s;
}

/// "a b^-1 c": whitespace-separated generator labels, "^-1" marks an inverse.
inline PathLetter parse_path_letter(std::string_view tok) {
  constexpr std::string_view inv = "^-1";
  if (tok.size() > inv.size() && tok.substr(tok.size() - inv.size()) == inv) {
    return {std::string(tok.substr(0, tok.size() - inv.size())), -1};
  }
  if (tok.empty() || tok.find('^') != std::string_view::npos) {
    throw Error(ErrorCode::Parse, "bad path letter '" + std::string(tok) + "'");
  }
  return {std::string(tok), 1};
}

inline PathWord parse_path_word(std::string_view text) {
  PathWord w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) w.push_back(parse_path_letter(tok));
  return w;
}

struct GroupoidGenerator {
  std::string label;
  std::string source;
  std::string target;
  friend bool operator==(const GroupoidGenerator&, const GroupoidGenerator&) = default;
};

struct GroupoidRelation {
  std::string label;
  PathWord word;
  friend bool operator==(const GroupoidRelation&, const GroupoidRelation&) = default;
};

/// Generators and relations for a fundamental groupoid pi_1(M, X).
struct GroupoidPresentation {
  std::vector<std::string> basepoints;
  std::vector<GroupoidGenerator> generators;
  std::vector<GroupoidRelation> relations;

  bool has_basepoint(std::string_view b) const {
    return std::find(basepoints.begin(), basepoints.end(), b) != basepoints.end();
  }
  const GroupoidGenerator* find_generator(std::string_view label) const {
    for (const auto& g : generators)
      if (g.label == label) return &g;
    return nullptr;
  }
  const GroupoidGenerator& generator(std::string_view label) const {
    const auto* g = find_generator(label);
    if (!g) throw Error(ErrorCode::NotComposable, "unknown generator '" + std::string(label) + "'");
    return *g;
  }
  friend bool operator==(const GroupoidPresentation&, const GroupoidPresentation&) = default;
};

/// Basepoint reached by walking w from start; NotComposable if a step does not start where the last ended.
inline std::string path_endpoint(const GroupoidPresentation& p, const PathWord& w, const std::string& start) {
  if (!p.has_basepoint(start)) throw Error(ErrorCode::NotComposable, "unknown basepoint '" + start + "'");
  std::string at = start;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& g = p.generator(w[i].gen);
    const std::string& from = w[i].sign > 0 ? g.source : g.target;
    const std::string& to = w[i].sign > 0 ? g.target : g.source;
    if (from != at) {
      throw Error(ErrorCode::NotComposable, "letter " + std::to_string(i + 1) + " (" + to_string(w[i]) +
                                                ") starts at " + from + ", path is at " + at);
    }
    at = to;
  }
  return at;
}

/// Basepoint where a nonempty word starts.
inline std::string path_start(const GroupoidPresentation& p, const PathWord& w) {
  if (w.empty()) throw Error(ErrorCode::NotComposable, "empty word has no intrinsic start");
  const auto& g = p.generator(w.front().gen);
  return w.front().sign > 0 ? g.source : g.target;
}

/// Invertible matrix per generating path on a lattice per basepoint.
struct LatticeLocalSystem {
  GroupoidPresentation presentation;
  std::map<std::string, std::size_t> dims;
  std::map<std::string, Matrix> matrices;

  std::size_t dim(const std::string& basepoint) const {
    auto it = dims.find(basepoint);
    if (it == dims.end()) throw Error(ErrorCode::ShapeMismatch, "no dimension for basepoint '" + basepoint + "'");
    return it->second;
  }
  const Matrix& matrix(const std::string& gen) const {
    auto it = matrices.find(gen);
    if (it == matrices.end()) throw Error(ErrorCode::ShapeMismatch, "no matrix for generator '" + gen + "'");
    return it->second;
  }
  friend bool operator==(const LatticeLocalSystem&, const LatticeLocalSystem&) = default;
};

/// Product of generator matrices along w from start; the first letter traversed
/// is the rightmost factor.
inline Matrix ls_monodromy(const LatticeLocalSystem& L, const PathWord& w, const std::string& start) {
  path_endpoint(L.presentation, w, start);
  Matrix acc = Matrix::identity(L.dim(start));
  for (const auto& l : w) {
    const Matrix& m = L.matrix(l.gen);
    acc = (l.sign > 0 ? m : inverse(m)) * acc;
  }
  return acc;
}

inline Matrix ls_monodromy(const LatticeLocalSystem& L, const PathWord& w) {
  return ls_monodromy(L, w, path_start(L.presentation, w));
}

struct LsReport {
  bool valid = true;
  std::optional<Failure> failure;
};

inline LsReport ls_validate(const LatticeLocalSystem& L) {
  const auto& p = L.presentation;
  for (const auto& b : p.basepoints) L.dim(b);
  for (const auto& g : p.generators) {
    if (!p.has_basepoint(g.source) || !p.has_basepoint(g.target)) {
      throw Error(ErrorCode::ShapeMismatch, "generator '" + g.label + "' has an unknown endpoint");
    }
    const Matrix& m = L.matrix(g.label);
    if (m.rows() != L.dim(g.target) || m.cols() != L.dim(g.source)) {
      throw Error(ErrorCode::ShapeMismatch, "generator '" + g.label + "' has matrix " + m.shape());
    }
  }
  LsReport r;
  for (const auto& g : p.generators) {
    if (!is_invertible(L.matrix(g.label))) {
      r.valid = false;
      r.failure = Failure{ErrorCode::SingularGenerator, g.label, "generator '" + g.label + "' is not invertible"};
      return r;
    }
  }
  for (const auto& rel : p.relations) {
    if (rel.word.empty()) continue;
    std::string start;
    try {
      start = path_start(p, rel.word);
      if (path_endpoint(p, rel.word, start) != start) {
        throw Error(ErrorCode::NotComposable, "relation does not close up");
      }
    } catch (const Error& e) {
      r.valid = false;
      r.failure = Failure{ErrorCode::NotComposable, rel.label, e.what()};
      return r;
    }
    if (!ls_monodromy(L, rel.word, start).is_identity()) {
      r.valid = false;
      r.failure = Failure{ErrorCode::RelationViolated, rel.label,
                          "relation '" + rel.label + "' (" + to_string(rel.word) + ") is not the identity"};
      return r;
    }
  }
  return r;
}

/// Isomorphism test with an explicit witness W_b per basepoint:
/// W_target M1(g) = M2(g) W_source for every generator g.
inline bool ls_check_iso(const LatticeLocalSystem& a, const LatticeLocalSystem& b,
                         const std::map<std::string, Matrix>& witness) {
  if (!(a.presentation == b.presentation)) {
    throw Error(ErrorCode::ShapeMismatch, "local systems are on different presentations");
  }
  for (const auto& x : a.presentation.basepoints) {
    auto it = witness.find(x);
    if (it == witness.end()) throw Error(ErrorCode::ShapeMismatch, "no witness at basepoint '" + x + "'");
    if (it->second.rows() != b.dim(x) || it->second.cols() != a.dim(x)) {
      throw Error(ErrorCode::ShapeMismatch, "witness at '" + x + "' is " + it->second.shape());
    }
    if (!is_invertible(it->second)) return false;
  }
  for (const auto& g : a.presentation.generators) {
    if (!(witness.at(g.target) * a.matrix(g.label) == b.matrix(g.label) * witness.at(g.source))) return false;
  }
  return true;
}

/// Strong isomorphism: equal lattices, identity witnesses.
inline bool ls_check_strong_iso(const LatticeLocalSystem& a, const LatticeLocalSystem& b) {
  std::map<std::string, Matrix> id;
  for (const auto& x : a.presentation.basepoints) id.emplace(x, Matrix::identity(a.dim(x)));
  for (const auto& x : a.presentation.basepoints)
    if (a.dim(x) != b.dim(x)) return false;
  return ls_check_iso(a, b, id);
}

/// Each coarse generator written as a path in the fine presentation.
using RefinementMap = std::map<std::string, PathWord>;

/// Coarse generators whose matrix differs from the composite of their factorization.
inline std::vector<std::string> refinement_mismatches(const LatticeLocalSystem& coarse, const LatticeLocalSystem& fine,
                                                      const RefinementMap& factorization) {
  for (const auto& x : coarse.presentation.basepoints) {
    if (!fine.presentation.has_basepoint(x) || fine.dim(x) != coarse.dim(x)) {
      throw Error(ErrorCode::ShapeMismatch, "coarse basepoint '" + x + "' is not a basepoint of the refinement");
    }
  }
  std::vector<std::string> bad;
  for (const auto& g : coarse.presentation.generators) {
    auto it = factorization.find(g.label);
    if (it == factorization.end()) {
      throw Error(ErrorCode::MissingFactorization, "no factorization for coarse generator '" + g.label + "'");
    }
    if (path_endpoint(fine.presentation, it->second, g.source) != g.target) {
      throw Error(ErrorCode::MissingFactorization, "factorization of '" + g.label + "' ends at the wrong basepoint");
    }
    if (!(ls_monodromy(fine, it->second, g.source) == coarse.matrix(g.label))) bad.push_back(g.label);
  }
  return bad;
}

inline bool ls_check_refinement(const LatticeLocalSystem& coarse, const LatticeLocalSystem& fine,
                                const RefinementMap& factorization) {
  return refinement_mismatches(coarse, fine, factorization).empty();
}

// ---------------------------------------------------------------------------
// Coverings and pullback.
// ---------------------------------------------------------------------------

struct Sheet {
  std::int64_t index = 0;
  std::string suffix;  // appended to base labels on this sheet
  friend bool operator==(const Sheet&, const Sheet&) = default;
};

/// Lift of a base generator starting on a given sheet.
struct Lift {
  std::string generator;
  std::int64_t sheet = 0;
  std::int64_t target = 0;
  std::string label;
  friend bool operator==(const Lift&, const Lift&) = default;
};

/// A finite set of sheets over a base presentation. When truncated, lifts may
/// leave the sheet set; those are reported as boundary lifts.
struct CoveringSpec {
  std::vector<Sheet> sheets;
  std::vector<Lift> lifts;
  bool truncated = false;

  const Sheet* find_sheet(std::int64_t index) const {
    for (const auto& s : sheets)
      if (s.index == index) return &s;
    return nullptr;
  }
  const Lift* find_lift(const std::string& gen, std::int64_t sheet) const {
    for (const auto& l : lifts)
      if (l.generator == gen && l.sheet == sheet) return &l;
    return nullptr;
  }
  friend bool operator==(const CoveringSpec&, const CoveringSpec&) = default;
};

inline std::string sheet_suffix(std::int64_t k) { return "@" + std::to_string(k); }

/// Infinite cyclic cover truncated to sheets [lo, hi]: generator g moves sheet k to k + shift(g).
inline CoveringSpec cyclic_cover(const GroupoidPresentation& base, const std::map<std::string, std::int64_t>& shift,
                                 std::int64_t lo, std::int64_t hi) {
  CoveringSpec c;
  c.truncated = true;
  for (std::int64_t k = lo; k <= hi; ++k) c.sheets.push_back({k, sheet_suffix(k)});
  for (const auto& g : base.generators) {
    auto it = shift.find(g.label);
    const std::int64_t d = it == shift.end() ? 0 : it->second;
    for (std::int64_t k = lo; k <= hi; ++k) c.lifts.push_back({g.label, k, k + d, g.label + sheet_suffix(k)});
  }
  return c;
}

struct BoundaryLift {
  std::string generator;
  std::int64_t sheet = 0;
  std::int64_t target = 0;
};

struct Pullback {
  LatticeLocalSystem system;
  std::vector<BoundaryLift> boundary;  // lifts leaving a truncated sheet set
};

/// Lift of a base word starting at (start, sheet); TruncationBoundary if it leaves the sheets.
inline PathWord lift_word(const GroupoidPresentation& base, const CoveringSpec& c, const PathWord& w,
                          const std::string& start, std::int64_t sheet) {
  path_endpoint(base, w, start);
  PathWord out;
  std::int64_t at = sheet;
  for (const auto& l : w) {
    if (l.sign > 0) {
      const Lift* lift = c.find_lift(l.gen, at);
      if (!lift || !c.find_sheet(lift->target)) {
        throw Error(ErrorCode::TruncationBoundary,
                    "lift of " + l.gen + " from sheet " + std::to_string(at) + " leaves the covering window");
      }
      out.push_back({lift->label, 1});
      at = lift->target;
    } else {
      const Lift* found = nullptr;
      for (const auto& lift : c.lifts)
        if (lift.generator == l.gen && lift.target == at && c.find_sheet(lift.sheet)) found = &lift;
      if (!found) {
        throw Error(ErrorCode::TruncationBoundary,
                    "inverse lift of " + l.gen + " into sheet " + std::to_string(at) + " leaves the covering window");
      }
      out.push_back({found->label, -1});
      at = found->sheet;
    }
  }
  return out;
}

/// Pulls a local system back along a covering: basepoints are (base point, sheet)
/// pairs and each lifted generator carries its base matrix. Relations are lifted
/// from every sheet where they close up inside the window.
inline Pullback ls_pullback(const LatticeLocalSystem& L, const CoveringSpec& c) {
  const auto& base = L.presentation;
  Pullback out;
  auto& P = out.system.presentation;
  for (const auto& s : c.sheets) {
    for (const auto& b : base.basepoints) {
      P.basepoints.push_back(b + s.suffix);
      out.system.dims[b + s.suffix] = L.dim(b);
    }
  }
  for (const auto& g : base.generators) {
    std::set<std::int64_t> targets;
    for (const auto& s : c.sheets) {
      const Lift* lift = c.find_lift(g.label, s.index);
      if (!lift) throw Error(ErrorCode::ShapeMismatch, "no lift of '" + g.label + "' on sheet " + std::to_string(s.index));
      if (!targets.insert(lift->target).second) {
        throw Error(ErrorCode::ShapeMismatch, "lifts of '" + g.label + "' do not define a permutation of sheets");
      }
      const Sheet* dst = c.find_sheet(lift->target);
      if (!dst) {
        if (!c.truncated) {
          throw Error(ErrorCode::TruncationBoundary, "lift of '" + g.label + "' leaves an untruncated cover");
        }
        out.boundary.push_back({g.label, s.index, lift->target});
        continue;
      }
      P.generators.push_back({lift->label, g.source + s.suffix, g.target + dst->suffix});
      out.system.matrices[lift->label] = L.matrix(g.label);
    }
  }
  for (const auto& rel : base.relations) {
    if (rel.word.empty()) continue;
    const std::string start = path_start(base, rel.word);
    for (const auto& s : c.sheets) {
      try {
        PathWord lifted = lift_word(base, c, rel.word, start, s.index);
        if (path_endpoint(P, lifted, start + s.suffix) == start + s.suffix) {
          P.relations.push_back({rel.label + s.suffix, std::move(lifted)});
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TruncationBoundary) throw;
      }
    }
  }
  return out;
}

}  // namespace schober
