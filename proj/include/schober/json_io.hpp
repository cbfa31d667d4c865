#pragma once

// JSON encodings. Rationals are "p/q" strings, matrices arrays of rows, Laurent
// polynomials {"exp": "coeff"} objects, path words arrays of "g" / "g^-1".

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "schober/braid.hpp"
#include "schober/git_flop.hpp"
#include "schober/laurent.hpp"
#include "schober/local_system.hpp"
#include "schober/matrix.hpp"
#include "schober/perv_disk.hpp"
#include "schober/surface.hpp"

namespace schober::json {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

inline std::int64_t get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

inline std::size_t get_size(const json& j, const char* what) {
  const auto v = get_int(j, what);
  if (v < 0) fail(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

inline std::string get_string(const json& j, const char* what) {
  if (!j.is_string()) fail(std::string(what) + " must be a string");
  return j.get<std::string>();
}

// --- scalars and matrices ---------------------------------------------------

inline json encode(const Rational& r) { return to_string(r); }

inline Rational decode_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  fail("rational must be a \"p/q\" string or an integer");
}

inline json encode(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(encode(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Arrays of rows carry no column count when empty, so callers pass the shape when known.
inline Matrix decode_matrix(const json& j, std::optional<std::size_t> rows = std::nullopt,
                            std::optional<std::size_t> cols = std::nullopt) {
  if (!j.is_array()) fail("matrix must be an array of rows");
  const std::size_t nr = j.size();
  if (rows && *rows != nr) fail("matrix has " + std::to_string(nr) + " rows, expected " + std::to_string(*rows));
  std::size_t nc = cols.value_or(nr > 0 && j[0].is_array() ? j[0].size() : 0);
  Matrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (!j[r].is_array() || j[r].size() != nc) fail("matrix row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = decode_rational(j[r][c]);
  }
  return m;
}

inline json encode(const LaurentPoly& p) {
  json o = json::object();
  for (const auto& [e, c] : p.terms()) o[std::to_string(e)] = c.str();
  return o;
}

inline LaurentPoly decode_laurent(const json& j) {
  if (!j.is_object()) fail("Laurent polynomial must be an object");
  LaurentPoly p;
  for (const auto& [k, v] : j.items()) {
    std::int64_t e = 0;
    try {
      std::size_t used = 0;
      e = std::stoll(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      fail("bad exponent '" + k + "'");
    }
    if (v.is_number_integer()) p.add_term(e, Integer(v.get<std::int64_t>()));
    else p.add_term(e, parse_integer(get_string(v, "coefficient")));
  }
  return p;
}

// --- braids -----------------------------------------------------------------

inline json encode(const BraidWord& w) {
  json a = json::array();
  for (const auto& l : w) a.push_back({{"i", l.index}, {"s", l.sign}});
  return a;
}

inline BraidWord decode_braid_word(const json& j) {
  if (!j.is_array()) fail("braid word must be an array");
  BraidWord w;
  for (const auto& x : j) {
    if (x.is_number_integer()) {
      const auto v = x.get<std::int64_t>();
      if (v == 0) fail("braid letter 0 is not a generator");
      w.push_back({v < 0 ? -v : v, v < 0 ? -1 : 1});
      continue;
    }
    const auto s = get_int(field(x, "s"), "braid sign");
    if (s != 1 && s != -1) fail("braid sign must be +1 or -1");
    w.push_back({get_int(field(x, "i"), "braid index"), static_cast<int>(s)});
  }
  return w;
}

// --- disk data --------------------------------------------------------------

inline json encode(const GMVData& d) {
  json pts = json::array();
  for (const auto& p : d.points) pts.push_back({{"local_dim", p.local_dim}, {"u", encode(p.u)}, {"v", encode(p.v)}});
  return {{"ambient_dim", d.ambient_dim}, {"points", pts}};
}

inline GMVData decode_gmv(const json& j) {
  GMVData d;
  d.ambient_dim = get_size(field(j, "ambient_dim"), "ambient_dim");
  const json& pts = field(j, "points");
  if (!pts.is_array()) fail("points must be an array");
  for (const auto& p : pts) {
    const std::size_t k = get_size(field(p, "local_dim"), "local_dim");
    d.points.push_back(
        GmvPoint{k, decode_matrix(field(p, "u"), k, d.ambient_dim), decode_matrix(field(p, "v"), d.ambient_dim, k)});
  }
  return d;
}

inline json encode(const KSQuiverData& k) {
  return {{"dim_minus", k.dim_minus}, {"dim_zero", k.dim_zero}, {"dim_plus", k.dim_plus},
          {"u_minus", encode(k.u_minus)}, {"u_plus", encode(k.u_plus)},
          {"v_minus", encode(k.v_minus)}, {"v_plus", encode(k.v_plus)}};
}

inline KSQuiverData decode_ks(const json& j) {
  KSQuiverData k;
  k.dim_minus = get_size(field(j, "dim_minus"), "dim_minus");
  k.dim_zero = get_size(field(j, "dim_zero"), "dim_zero");
  k.dim_plus = get_size(field(j, "dim_plus"), "dim_plus");
  k.u_minus = decode_matrix(field(j, "u_minus"), k.dim_zero, k.dim_minus);
  k.u_plus = decode_matrix(field(j, "u_plus"), k.dim_zero, k.dim_plus);
  k.v_minus = decode_matrix(field(j, "v_minus"), k.dim_minus, k.dim_zero);
  k.v_plus = decode_matrix(field(j, "v_plus"), k.dim_plus, k.dim_zero);
  return k;
}

inline json encode(const LinearSphericalPair& p) {
  return {{"total_dim", p.total_dim}, {"q_minus", encode(p.q_minus)}, {"p_minus", encode(p.p_minus)},
          {"q_plus", encode(p.q_plus)}, {"p_plus", encode(p.p_plus)}};
}

inline LinearSphericalPair decode_pair(const json& j) {
  LinearSphericalPair p;
  p.total_dim = get_size(field(j, "total_dim"), "total_dim");
  p.q_minus = decode_matrix(field(j, "q_minus"), p.total_dim);
  p.p_minus = decode_matrix(field(j, "p_minus"), p.total_dim);
  p.q_plus = decode_matrix(field(j, "q_plus"), p.total_dim);
  p.p_plus = decode_matrix(field(j, "p_plus"), p.total_dim);
  return p;
}

// --- local systems ------------------------------------------------------------

inline json encode(const PathWord& w) {
  json a = json::array();
  for (const auto& l : w) a.push_back(to_string(l));
  return a;
}

inline PathWord decode_path_word(const json& j) {
  if (j.is_string()) return parse_path_word(j.get<std::string>());
  if (!j.is_array()) fail("path word must be an array of letters");
  PathWord w;
  for (const auto& x : j) w.push_back(parse_path_letter(get_string(x, "path letter")));
  return w;
}

inline json encode(const GroupoidPresentation& p) {
  json gens = json::array();
  for (const auto& g : p.generators) gens.push_back({{"label", g.label}, {"source", g.source}, {"target", g.target}});
  json rels = json::array();
  for (const auto& r : p.relations) rels.push_back({{"label", r.label}, {"word", encode(r.word)}});
  return {{"basepoints", p.basepoints}, {"generators", gens}, {"relations", rels}};
}

inline GroupoidPresentation decode_presentation(const json& j) {
  GroupoidPresentation p;
  const json& bps = field(j, "basepoints");
  if (!bps.is_array()) fail("basepoints must be an array");
  for (const auto& b : bps) p.basepoints.push_back(get_string(b, "basepoint"));
  const json& gens = field(j, "generators");
  if (!gens.is_array()) fail("generators must be an array");
  for (const auto& g : gens) {
    p.generators.push_back({get_string(field(g, "label"), "label"), get_string(field(g, "source"), "source"),
                            get_string(field(g, "target"), "target")});
  }
  if (j.contains("relations")) {
    const json& rels = j["relations"];
    if (!rels.is_array()) fail("relations must be an array");
    std::size_t i = 0;
    for (const auto& r : rels) {
      ++i;
      if (r.is_object()) {
        p.relations.push_back({get_string(field(r, "label"), "label"), decode_path_word(field(r, "word"))});
      } else {
        p.relations.push_back({"r" + std::to_string(i), decode_path_word(r)});
      }
    }
  }
  return p;
}

inline json encode(const LatticeLocalSystem& L) {
  json dims = json::object();
  for (const auto& [b, d] : L.dims) dims[b] = d;
  json mats = json::object();
  for (const auto& [g, m] : L.matrices) mats[g] = encode(m);
  return {{"presentation", encode(L.presentation)}, {"dims", dims}, {"matrices", mats}};
}

inline LatticeLocalSystem decode_local_system(const json& j) {
  LatticeLocalSystem L;
  L.presentation = decode_presentation(field(j, "presentation"));
  const json& dims = field(j, "dims");
  if (!dims.is_object()) fail("dims must be an object");
  for (const auto& [b, d] : dims.items()) L.dims[b] = get_size(d, "dimension");
  const json& mats = field(j, "matrices");
  if (!mats.is_object()) fail("matrices must be an object");
  for (const auto& [g, m] : mats.items()) {
    const auto* gen = L.presentation.find_generator(g);
    std::optional<std::size_t> r, c;
    if (gen && L.dims.count(gen->target) && L.dims.count(gen->source)) {
      r = L.dims.at(gen->target);
      c = L.dims.at(gen->source);
    }
    L.matrices[g] = decode_matrix(m, r, c);
  }
  return L;
}

inline json encode(const CoveringSpec& c) {
  json sheets = json::array();
  for (const auto& s : c.sheets) sheets.push_back({{"index", s.index}, {"suffix", s.suffix}});
  json lifts = json::array();
  for (const auto& l : c.lifts) {
    lifts.push_back({{"generator", l.generator}, {"sheet", l.sheet}, {"target", l.target}, {"label", l.label}});
  }
  return {{"sheets", sheets}, {"lifts", lifts}, {"truncated", c.truncated}};
}

inline CoveringSpec decode_cover(const json& j) {
  CoveringSpec c;
  for (const auto& s : field(j, "sheets")) {
    c.sheets.push_back({get_int(field(s, "index"), "sheet index"), get_string(field(s, "suffix"), "suffix")});
  }
  for (const auto& l : field(j, "lifts")) {
    c.lifts.push_back({get_string(field(l, "generator"), "generator"), get_int(field(l, "sheet"), "sheet"),
                       get_int(field(l, "target"), "target"), get_string(field(l, "label"), "label")});
  }
  if (j.contains("truncated")) {
    if (!j["truncated"].is_boolean()) fail("truncated must be a boolean");
    c.truncated = j["truncated"].get<bool>();
  }
  return c;
}

inline json encode(const BoundaryLift& b) {
  return {{"generator", b.generator}, {"sheet", b.sheet}, {"target", b.target}};
}

// --- surfaces ---------------------------------------------------------------

inline json encode(const SurfaceSchober& s) {
  return {{"disk", encode(s.disk)}, {"outside", encode(s.outside)}, {"basepoint", s.basepoint},
          {"boundary_word", encode(s.boundary_word)}};
}

inline SurfaceSchober decode_surface(const json& j) {
  return SurfaceSchober{decode_gmv(field(j, "disk")), decode_local_system(field(j, "outside")),
                        get_string(field(j, "basepoint"), "basepoint"), decode_path_word(field(j, "boundary_word"))};
}

inline json encode(const TwistPresentation& t) { return {{"u", encode(t.u)}, {"v", encode(t.v)}}; }

inline TwistPresentation decode_twist(const json& j) {
  return TwistPresentation{decode_matrix(field(j, "u")), decode_matrix(field(j, "v"))};
}

// --- GIT and flop -------------------------------------------------------------

inline json encode(const WallCrossingSpec& s) { return {{"a", s.a}, {"b", s.b}, {"w", s.w}}; }

inline WallCrossingSpec decode_spec(const json& j) {
  WallCrossingSpec s;
  for (const char* key : {"a", "b"}) {
    const json& arr = field(j, key);
    if (!arr.is_array()) fail(std::string(key) + " must be an array of weights");
    for (const auto& x : arr) (key[0] == 'a' ? s.a : s.b).push_back(get_int(x, "weight"));
  }
  if (j.contains("w")) s.w = get_int(j["w"], "w");
  return s;
}

inline json encode(const ExponentWindow& w) { return json::array({w.lo, w.hi}); }

inline json encode(const KPresentation& k) {
  return {{"spec", encode(k.spec)},
          {"eta", k.eta},
          {"eta_minus", k.eta_minus},
          {"eta_plus", k.eta_plus},
          {"koszul_minus", encode(k.koszul_minus)},
          {"koszul_plus", encode(k.koszul_plus)},
          {"window", encode(k.window)},
          {"closed_window", encode(k.closed_window)},
          {"res_minus", encode(k.res_minus)},
          {"res_plus", encode(k.res_plus)},
          {"lambda_offset", k.lambda_offset},
          {"phi", json::array({{{"offset", k.lambda_offset}, {"direction", "-+"}, {"matrix", encode(k.phi_minus_plus)}},
                               {{"offset", k.lambda_offset + 1},
                                {"direction", "+-"},
                                {"matrix", encode(k.phi_plus_minus)}}})}};
}

inline json encode(const FlopModel& m) {
  return {{"n", m.n},
          {"supported_basis", m.supported_labels},
          {"ambient_basis", m.ambient_labels},
          {"basis_plus", encode(m.basis_plus)},
          {"basis_minus", encode(m.basis_minus)},
          {"flop_minus_plus", encode(m.flop_minus_plus)},
          {"flop_plus_minus", encode(m.flop_plus_minus)},
          {"line_plus", encode(m.line_plus)},
          {"line_minus", encode(m.line_minus)}};
}

inline ExponentWindow decode_window(const json& j) {
  if (!j.is_array() || j.size() != 2) fail("window must be [lo, hi]");
  return {get_int(j[0], "window lo"), get_int(j[1], "window hi")};
}

/// Reads a model written by encode(FlopModel); bases and labels are rebuilt from n
/// when absent so hand-written models need only n and the four matrices.
inline FlopModel decode_flop_model(const json& j) {
  FlopModel m = build_flop_model(get_int(field(j, "n"), "n"));
  const std::size_t d = static_cast<std::size_t>(m.n + 1);
  if (j.contains("basis_plus")) m.basis_plus = decode_window(j["basis_plus"]);
  if (j.contains("basis_minus")) m.basis_minus = decode_window(j["basis_minus"]);
  m.flop_minus_plus = decode_matrix(field(j, "flop_minus_plus"), d, d);
  m.flop_plus_minus = decode_matrix(field(j, "flop_plus_minus"), d, d);
  m.line_plus = decode_matrix(field(j, "line_plus"), d, d);
  m.line_minus = decode_matrix(field(j, "line_minus"), d, d);
  return m;
}

// --- reports ----------------------------------------------------------------

inline json encode(const Failure& f) {
  return {{"code", std::string(to_string(f.code))}, {"label", f.label}, {"message", f.message}};
}

inline json encode(const RelationCheck& c) {
  json o = {{"name", c.name}, {"pass", c.pass}, {"lhs", encode(c.lhs)}, {"rhs", encode(c.rhs)}};
  if (!c.message.empty()) o["message"] = c.message;
  return o;
}

inline json encode(const RelationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(encode(c));
  return {{"pass", r.pass()}, {"checks", checks}};
}

}  // namespace schober::json
