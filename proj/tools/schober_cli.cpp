// schober: command-line front end for the schober library.
//
// Exit codes: 0 when every requested check passes, 1 when a mathematical check
// fails, 2 on usage, parse or I/O errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "schober/dot.hpp"
#include "schober/json_io.hpp"
#include "schober/schober.hpp"

namespace {

using json = nlohmann::json;
using namespace schober;
namespace sj = schober::json;

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

struct Output {
  std::string path;
  bool as_json = false;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
  }
  void write(const json& j) const { write(j.dump(2) + "\n"); }
};

WallCrossingSpec parse_weights(const std::string& text, std::int64_t w) {
  WallCrossingSpec s;
  s.w = w;
  std::vector<std::int64_t>* cur = nullptr;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.rfind("a=", 0) == 0) {
      cur = &s.a;
      tok = tok.substr(2);
    } else if (tok.rfind("b=", 0) == 0) {
      cur = &s.b;
      tok = tok.substr(2);
    }
    if (!cur) throw Error(ErrorCode::Parse, "weights must look like a=1,2,b=3");
    cur->push_back(static_cast<std::int64_t>(parse_integer(tok)));
  }
  return s;
}

std::string failure_line(const std::optional<Failure>& f) {
  if (!f) return "valid\n";
  return "invalid: " + std::string(to_string(f->code)) + " [" + f->label + "] " + f->message + "\n";
}

json report_json(bool valid, const std::optional<Failure>& f) {
  json j = {{"valid", valid}};
  if (f) j["failure"] = sj::encode(*f);
  return j;
}

struct Options {
  Output out;
  std::string gmv, ks, pair, local_system, surface, cover, model, spec_file, word, start, flop, weights;
  std::int64_t w = 0;
  std::int64_t window = 4;
  bool skms = false;
};

int cmd_validate(const Options& o) {
  bool valid = true;
  std::optional<Failure> failure;
  json extra = json::object();
  if (!o.gmv.empty()) {
    auto r = gmv_validate(sj::decode_gmv(read_json(o.gmv)));
    valid = r.valid;
    failure = r.failure;
    extra["total_monodromy"] = sj::encode(r.total_monodromy);
  } else if (!o.ks.empty()) {
    auto r = ks_validate(sj::decode_ks(read_json(o.ks)));
    valid = r.valid;
    failure = r.failure;
  } else if (!o.pair.empty()) {
    auto p = sj::decode_pair(read_json(o.pair));
    auto r = pair_validate(p);
    valid = r.valid;
    failure = r.failure;
    if (valid) extra["twist"] = sj::encode(pair_twist(p));
  } else if (!o.local_system.empty()) {
    auto r = ls_validate(sj::decode_local_system(read_json(o.local_system)));
    valid = r.valid;
    failure = r.failure;
  } else if (!o.surface.empty()) {
    auto r = surface_validate(sj::decode_surface(read_json(o.surface)));
    valid = r.valid;
    failure = r.failure;
  } else {
    throw CLI::ValidationError("validate", "one of --gmv, --ks, --pair, --local-system, --surface is required");
  }
  if (o.out.as_json) {
    json j = report_json(valid, failure);
    j.update(extra);
    o.out.write(j);
  } else {
    o.out.write(failure_line(failure));
  }
  return valid ? kOk : kMathFailure;
}

int cmd_braid_act(const Options& o) {
  const GMVData d = sj::decode_gmv(read_json(o.gmv));
  o.out.write(sj::encode(gmv_braid_act(d, parse_braid_word(o.word))));
  return kOk;
}

int cmd_monodromy(const Options& o) {
  const auto L = sj::decode_local_system(read_json(o.local_system));
  const PathWord w = parse_path_word(o.word);
  const Matrix m = o.start.empty() ? ls_monodromy(L, w) : ls_monodromy(L, w, o.start);
  if (o.out.as_json) o.out.write(json{{"word", sj::encode(w)}, {"monodromy", sj::encode(m)}});
  else o.out.write(to_string(m) + "\n");
  return kOk;
}

WallCrossingSpec spec_from(const Options& o) {
  if (!o.spec_file.empty()) return sj::decode_spec(read_json(o.spec_file));
  if (o.weights.empty()) throw CLI::ValidationError("weights", "--weights or --spec is required");
  return parse_weights(o.weights, o.w);
}

int cmd_build_windows(const Options& o) {
  o.out.write(sj::encode(build_windows(spec_from(o))));
  return kOk;
}

int cmd_build_pair(const Options& o) {
  const WallCrossingSpec s = spec_from(o);
  const LinearSphericalPair p = build_git_pair(s);
  const auto [h_mp, h_pm] = pair_half_monodromies(p);
  const TwistPhiReport r = twist_vs_phi(s);
  o.out.write(json{{"spec", sj::encode(s)},
                   {"pair", sj::encode(p)},
                   {"half_minus_plus", sj::encode(h_mp)},
                   {"half_plus_minus", sj::encode(h_pm)},
                   {"twist", sj::encode(r.twist)},
                   {"phi_composite", sj::encode(r.composite)},
                   {"lambda_offset", r.lambda_offset},
                   {"twist_equals_phi", r.equal}});
  return r.equal ? kOk : kMathFailure;
}

int cmd_build_skms(const Options& o) {
  const SKMSPresentation s = build_skms();
  const auto r = ls_validate(s.system);
  o.out.write(json{{"system", sj::encode(s.system)}, {"valid", r.valid}});
  return r.valid ? kOk : kMathFailure;
}

int cmd_verify(const Options& o) {
  FlopModel m;
  if (!o.model.empty()) {
    m = sj::decode_flop_model(read_json(o.model));
  } else if (!o.flop.empty()) {
    if (o.flop.rfind("n=", 0) != 0) throw Error(ErrorCode::Parse, "--flop expects n=<int>");
    m = build_flop_model(static_cast<std::int64_t>(parse_integer(o.flop.substr(2))));
  } else {
    throw CLI::ValidationError("verify", "--flop n=1 or --model FILE is required");
  }
  const RelationReport r = verify_relations(m);
  if (o.out.as_json) {
    o.out.write(sj::encode(r));
  } else {
    std::string text;
    for (const auto& c : r.checks) {
      text += (c.pass ? "PASS " : "FAIL ") + c.name;
      if (!c.pass) text += ": lhs " + to_string(c.lhs) + " rhs " + to_string(c.rhs) + (c.message.empty() ? "" : " " + c.message);
      text += "\n";
    }
    o.out.write(text);
  }
  return r.pass() ? kOk : kMathFailure;
}

int cmd_pullback(const Options& o) {
  if (!o.local_system.empty() || !o.cover.empty()) {
    if (o.local_system.empty() || o.cover.empty()) {
      throw CLI::ValidationError("pullback", "--local-system and --cover go together");
    }
    const Pullback pb = ls_pullback(sj::decode_local_system(read_json(o.local_system)),
                                    sj::decode_cover(read_json(o.cover)));
    nlohmann::json boundary = nlohmann::json::array();
    for (const auto& b : pb.boundary) boundary.push_back(sj::encode(b));
    const auto v = ls_validate(pb.system);
    o.out.write(json{{"system", sj::encode(pb.system)}, {"boundary", boundary}, {"valid", v.valid}});
    return v.valid ? kOk : kMathFailure;
  }
  const auto r = skms_pullback_refines(build_flop_model(1), o.window);
  if (o.out.as_json) {
    nlohmann::json boundary = nlohmann::json::array();
    for (const auto& b : r.boundary_lifts) boundary.push_back(sj::encode(b));
    o.out.write(json{{"window", r.window},
                     {"checked", r.checked},
                     {"failed", r.failed},
                     {"boundary_ok", r.boundary_ok},
                     {"pattern_ok", r.pattern_ok},
                     {"boundary_lifts", boundary},
                     {"pass", r.pass()}});
  } else {
    std::string text = "window [-" + std::to_string(r.window) + ", " + std::to_string(r.window) + "]: " +
                       std::to_string(r.checked.size()) + " interior loops, " + std::to_string(r.failed.size()) +
                       " failed, pattern " + (r.pattern_ok ? "ok" : "broken") + "\n";
    o.out.write(text);
  }
  return r.pass() ? kOk : kMathFailure;
}

int cmd_export_dot(const Options& o) {
  if (!o.local_system.empty()) o.out.write(export_dot(sj::decode_local_system(read_json(o.local_system))));
  else if (!o.surface.empty()) o.out.write(export_dot(sj::decode_surface(read_json(o.surface))));
  else if (o.skms) o.out.write(export_dot(build_skms().system));
  else throw CLI::ValidationError("export-dot", "one of --local-system, --surface, --skms is required");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact linear-algebra shadows of perverse schobers"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* c) {
    c->add_flag("--json", o.out.as_json, "Machine-readable JSON output");
    c->add_option("--out", o.out.path, "Write output to this file");
  };

  auto* validate = app.add_subcommand("validate", "Validate a GMV, KS, pair, local-system or surface file");
  common(validate);
  validate->add_option("--gmv", o.gmv);
  validate->add_option("--ks", o.ks);
  validate->add_option("--pair", o.pair);
  validate->add_option("--local-system", o.local_system);
  validate->add_option("--surface", o.surface);

  auto* braid = app.add_subcommand("braid-act", "Hurwitz action of a braid word on GMV data");
  common(braid);
  braid->add_option("--data", o.gmv, "GMV data file")->required();
  braid->add_option("--word", o.word, "Signed generator indices, e.g. \"1 -2 1\"")->required();

  auto* mono = app.add_subcommand("monodromy", "Monodromy of a local system along a path word");
  common(mono);
  mono->add_option("--local-system", o.local_system)->required();
  mono->add_option("--word", o.word, "e.g. \"a b^-1\"")->required();
  mono->add_option("--start", o.start, "Starting basepoint (needed for the empty word)");

  auto* windows = app.add_subcommand("build-windows", "Window data of a toric wall crossing");
  auto* pair = app.add_subcommand("build-pair", "Spherical pair of a toric wall crossing");
  for (auto* c : {windows, pair}) {
    common(c);
    c->add_option("--weights", o.weights, "a=1,2,b=3");
    c->add_option("--w", o.w, "Window offset");
    c->add_option("--spec", o.spec_file, "Wall-crossing spec file");
  }

  auto* skms = app.add_subcommand("build-skms", "Local system of the conifold flop on the SKMS");
  common(skms);

  auto* verify = app.add_subcommand("verify", "Relation suite of the flop model");
  common(verify);
  verify->add_option("--flop", o.flop, "n=1");
  verify->add_option("--model", o.model, "Flop model file");

  auto* pullback = app.add_subcommand("pullback", "Pullback along a cover, or the SKMS refinement check");
  common(pullback);
  pullback->add_option("--window", o.window, "Sheets [-N, N]");
  pullback->add_option("--local-system", o.local_system);
  pullback->add_option("--cover", o.cover);

  auto* dot = app.add_subcommand("export-dot", "Graphviz export");
  common(dot);
  dot->add_option("--local-system", o.local_system);
  dot->add_option("--surface", o.surface);
  dot->add_flag("--skms", o.skms);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*braid) return cmd_braid_act(o);
    if (*mono) return cmd_monodromy(o);
    if (*windows) return cmd_build_windows(o);
    if (*pair) return cmd_build_pair(o);
    if (*skms) return cmd_build_skms(o);
    if (*verify) return cmd_verify(o);
    if (*pullback) return cmd_pullback(o);
    if (*dot) return cmd_export_dot(o);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Parse ? kUsage : kMathFailure;
  }
  return kUsage;
}
