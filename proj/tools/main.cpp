#include <CLI11.hpp>

#include <chrono>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>

#include "config.hpp"
#include "voafin/blocks.hpp"
#include "voafin/finiteness.hpp"
#include "voafin/identities.hpp"
#include "voafin/lattice.hpp"
#include "voafin/virasoro.hpp"

#ifndef VOAFIN_VERSION
#define VOAFIN_VERSION "0.0.0"
#endif

using namespace voafin;
using namespace voafin::cli;

namespace {

constexpr long kDefaultSeed = 20240611;

json state_json(const VertexModel& m, const State& s) {
  json out = json::object();
  for (const auto& [i, c] : s) out[m.basis().label(i)] = to_string(c);
  return out;
}

json verma_json(const VermaVector& v) {
  json out = json::object();
  for (const auto& [part, c] : v) out[partition_label(part)] = to_string(c);
  return out;
}

json xy_json(const std::map<std::pair<int, int>, Rational>& p) {
  json out = json::object();
  for (const auto& [ij, c] : p) {
    out["x^" + std::to_string(ij.first) + " y^" + std::to_string(ij.second)] = to_string(c);
  }
  return out;
}

MinimalParams minimal_from(const json& cfg) {
  return {get_int(cfg, "p", "/"), get_int(cfg, "q", "/"), get_int(cfg, "r", "/"), get_int(cfg, "s", "/")};
}

MinimalValues checked_values(const MinimalParams& mp) {
  if (mp.p < 2) throw SchemaError("/p", "expected an integer >= 2");
  if (mp.q < 2) throw SchemaError("/q", "expected an integer >= 2");
  if (std::gcd(mp.p, mp.q) != 1) throw SchemaError("/q", "p and q must be coprime");
  if (mp.r < 1 || mp.r >= mp.q) throw SchemaError("/r", "expected 1 <= r < q");
  if (mp.s < 1 || mp.s >= mp.p) throw SchemaError("/s", "expected 1 <= s < p");
  try {
    return minimal_params_values(mp);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/", e.what());
  }
}

// --- check-identities -------------------------------------------------------

json run_check_identities(const json& cfg) {
  int cutoff = static_cast<int>(get_int_or(cfg, "cutoff", "/", 8));
  long samples = get_int_or(cfg, "samples", "/", 200);
  long seed = get_int_or(cfg, "seed", "/", kDefaultSeed);
  long range = get_int_or(cfg, "range", "/", 4);
  if (!cfg.contains("model")) throw SchemaError("/model", "missing required field");
  ModelPtr model = build_model(cfg.at("model"), cutoff, "/model");
  const VertexModel& v = model->voa();

  std::vector<IdentityKind> kinds = {IdentityKind::Borcherds, IdentityKind::Associativity, IdentityKind::Commutator,
                                     IdentityKind::Translation};
  if (cfg.contains("identities")) {
    const json& ids = cfg.at("identities");
    if (!ids.is_array()) throw SchemaError("/identities", "expected an array of names");
    kinds.clear();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      try {
        kinds.push_back(parse_identity_kind(ids[i].get<std::string>()));
      } catch (const std::exception&) {
        throw SchemaError("/identities/" + std::to_string(i), "unknown identity");
      }
    }
  }

  auto upto = [](const VertexModel& m, int d) {
    return static_cast<Index>(m.basis().offset(std::min(d, m.cutoff()) + 1));
  };
  Index a_count = upto(v, cutoff / 2);
  Index w_count = upto(*model, cutoff / 2);
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::uniform_int_distribution<Index> pick_a(0, a_count - 1), pick_w(0, w_count - 1);
  std::uniform_int_distribution<int> pick_mode(static_cast<int>(-range), static_cast<int>(range));

  json result = json::object();
  result["model"] = model->name();
  result["cutoff"] = cutoff;
  result["seed"] = seed;
  bool all_zero = true;
  json per = json::object();
  for (auto kind : kinds) {
    long done = 0, nonzero = 0, skipped = 0;
    json first_failure;
    for (long attempt = 0; done < samples && attempt < 100 * samples; ++attempt) {
      IdentityArgs args{State::unit(pick_a(rng)), State::unit(pick_a(rng)), State::unit(pick_w(rng)),
                        pick_mode(rng),           pick_mode(rng),           pick_mode(rng),
                        pick_mode(rng)};
      State res;
      try {
        res = check_identity(*model, kind, args);
      } catch (const TruncationError&) {
        ++skipped;
        continue;
      }
      ++done;
      if (!res.empty()) {
        ++nonzero;
        if (first_failure.is_null()) {
          first_failure = {{"p", args.p}, {"q", args.q}, {"r", args.r}, {"n", args.n}, {"residual", state_json(*model, res)}};
        }
      }
    }
    json entry = {{"samples", done}, {"nonzero", nonzero}, {"skipped_truncated", skipped}};
    if (!first_failure.is_null()) entry["first_failure"] = first_failure;
    if (done < samples || nonzero != 0) all_zero = false;
    per[std::string(to_string(kind))] = entry;
  }
  result["identities"] = per;
  result["all_zero"] = all_zero;
  return result;
}

// --- virasoro -----------------------------------------------------------------

json run_virasoro_singular(const json& cfg) {
  Rational c, h;
  long level;
  if (cfg.contains("p")) {
    MinimalParams mp = minimal_from(cfg);
    MinimalValues mv = checked_values(mp);
    c = mv.c;
    h = mv.h;
    level = get_int_or(cfg, "level", "/", mp.r * mp.s);
  } else {
    c = get_rational_field(cfg, "c", "/");
    h = get_rational_field(cfg, "h", "/");
    level = get_int(cfg, "level", "/");
  }
  if (level < 1) throw SchemaError("/level", "expected a positive level");
  auto vs = singular_vectors(c, h, static_cast<int>(level));
  json vectors = json::array();
  for (const auto& v : vs) vectors.push_back(verma_json(v));
  return {{"c", to_string(c)}, {"h", to_string(h)}, {"level", level}, {"dimension", vs.size()}, {"vectors", vectors}};
}

json run_virasoro_ff(const json& cfg) {
  MinimalParams mp = minimal_from(cfg);
  MinimalValues mv = checked_values(mp);
  FFVerification f = ff_verify(mp);
  return {{"c", to_string(mv.c)},
          {"h", to_string(mv.h)},
          {"level", mp.r * mp.s},
          {"singular_vector", verma_json(f.singular_vector)},
          {"projection", xy_json(f.projection)},
          {"feigin_fuchs", xy_json(f.polynomial)},
          {"feigin_fuchs_t", feigin_fuchs(static_cast<int>(mp.r), static_cast<int>(mp.s)).to_string()},
          {"alpha", to_string(f.alpha)},
          {"proportional", true}};
}

json run_virasoro_bounds(const json& cfg) {
  MinimalParams mp = minimal_from(cfg);
  MinimalValues mv = checked_values(mp);
  QuotientRingBounds b = quotient_ring_bounds(mp);
  json restriction = json::object();
  for (const auto& [j, c] : b.vacuum_restriction) restriction["y^" + std::to_string(j)] = to_string(c);
  return {{"c", to_string(mv.c)},
          {"h", to_string(mv.h)},
          {"c2_vacuum_bound", b.c2_vacuum_bound},
          {"b1_bound", b.b1_bound},
          {"vacuum_restriction", restriction}};
}

// --- quotient -----------------------------------------------------------------

json run_quotient(const json& cfg) {
  int cutoff = static_cast<int>(get_int(cfg, "cutoff", "/"));
  if (!cfg.contains("model")) throw SchemaError("/model", "missing required field");
  ModelPtr model = build_model(cfg.at("model"), cutoff, "/model");
  std::string space = get_string_or(cfg, "space", "/", "c2");
  SubspaceSpec spec;
  int window = static_cast<int>(get_int_or(cfg, "window", "/", 3));
  json result = json::object();
  if (space == "c2") {
    spec.kind = SubspaceKind::Cn;
    spec.n = 2;
  } else if (space == "cn") {
    spec.kind = SubspaceKind::Cn;
    spec.n = static_cast<int>(get_int(cfg, "n", "/"));
    if (spec.n < 2) throw SchemaError("/n", "expected n >= 2");
  } else if (space == "b1") {
    spec.kind = SubspaceKind::B1;
  } else if (space == "cmu") {
    spec.kind = SubspaceKind::CmU;
    spec.m = static_cast<int>(get_int_or(cfg, "m", "/", 1));
    if (spec.m < 1) throw SchemaError("/m", "expected m >= 1");
    ComplementU cu = complement_U(model->voa());
    json weights = json::array();
    for (std::size_t k = 0; k < cu.basis.size(); ++k) {
      if (cu.weights[k] == 0) continue;
      spec.U.push_back(cu.basis[k]);
      weights.push_back(cu.weights[k]);
    }
    if (!cfg.contains("window")) window = stabilization_window(cu.r_U);
    result["U_weights"] = weights;
    result["r_U"] = cu.r_U;
    result["U_stabilized"] = cu.stabilized;
  } else {
    throw SchemaError("/space", "expected c2, cn, b1 or cmu");
  }
  QuotientReport q = quotient_report(*model, spec, window);
  result["model"] = model->name();
  result["space"] = space;
  result["cutoff"] = cutoff;
  result["dims"] = q.dims;
  result["ambient_dims"] = model->basis().dims();
  result["cumulative"] = q.cumulative;
  result["window"] = q.window;
  result["stabilized"] = q.stabilized;
  return result;
}

// --- lattice ------------------------------------------------------------------

json run_lattice_gamma(const json& cfg) {
  auto gram = get_int_matrix(cfg, "gram", "/");
  RatVec lambda = get_rational_list(cfg, "lambda", "/");
  if (lambda.size() != gram.size()) throw SchemaError("/lambda", "length must equal the lattice rank");
  std::unique_ptr<EvenLattice> lat;
  try {
    lat = std::make_unique<EvenLattice>(gram);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/gram", e.what());
  }
  json labels = json::array();
  for (const auto& beta : gamma_set(*lat, lambda)) labels.push_back(lattice_vector_label(beta));
  return {{"gamma", labels}, {"size", labels.size()}};
}

json run_lattice_b1(const json& cfg) {
  auto gram = get_int_matrix(cfg, "gram", "/");
  RatVec lambda = get_rational_list(cfg, "lambda", "/");
  int cutoff = static_cast<int>(get_int_or(cfg, "cutoff", "/", 6));
  if (lambda.size() != gram.size()) throw SchemaError("/lambda", "length must equal the lattice rank");
  B1SpanReport r;
  try {
    r = b1_span_check(gram, lambda, cutoff);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/", e.what());
  }
  json labels = json::array();
  for (const auto& beta : r.gamma) labels.push_back(lattice_vector_label(beta));
  return {{"gamma", labels}, {"dims", r.dims}, {"deficiency", r.deficiency}, {"passed", r.passed}};
}

// --- blocks -------------------------------------------------------------------

json run_blocks_dim(const json& cfg) {
  std::vector<Rational> points = get_rational_list(cfg, "points", "/");
  if (!cfg.contains("labels") || !cfg.at("labels").is_array()) throw SchemaError("/labels", "expected an array");
  const json& labels = cfg.at("labels");
  if (labels.size() != points.size()) throw SchemaError("/labels", "one label per point");
  std::vector<std::pair<int, int>> runs;
  if (cfg.contains("sweep")) {
    const json& sw = cfg.at("sweep");
    if (!sw.is_array()) throw SchemaError("/sweep", "expected an array of [D, P] pairs");
    for (std::size_t i = 0; i < sw.size(); ++i) {
      std::string at = "/sweep/" + std::to_string(i);
      if (!sw[i].is_array() || sw[i].size() != 2) throw SchemaError(at, "expected [D, P]");
      runs.emplace_back(static_cast<int>(get_int_or(json{{"D", sw[i][0]}}, "D", at, 0)),
                        static_cast<int>(get_int_or(json{{"P", sw[i][1]}}, "P", at, 0)));
    }
  } else {
    runs.emplace_back(static_cast<int>(get_int(cfg, "D", "/")), static_cast<int>(get_int(cfg, "P", "/")));
  }
  int w_max = static_cast<int>(get_int_or(cfg, "w_max", "/", 0));
  int cutoff = 0;
  for (const auto& [D, P] : runs) cutoff = std::max(cutoff, D);
  cutoff = static_cast<int>(get_int_or(cfg, "cutoff", "/", cutoff));
  std::vector<ModelPtr> modules;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    modules.push_back(build_model(labels[i], cutoff, "/labels/" + std::to_string(i)));
  }
  if (cfg.contains("voa")) {
    ModelPtr v = build_model(cfg.at("voa"), cutoff, "/voa");
    if (!v->is_voa()) throw SchemaError("/voa", "not a VOA descriptor");
    for (std::size_t i = 0; i < modules.size(); ++i) {
      if (modules[i]->voa().name() != v->name()) {
        throw SchemaError("/labels/" + std::to_string(i), "module is not over the declared VOA");
      }
    }
  }
  std::unique_ptr<LabeledLine> surface;
  try {
    surface = std::make_unique<LabeledLine>(PointedLine(points), modules);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/points", e.what());
  }
  CoinvariantSweep s;
  try {
    s = coinvariant_sweep(*surface, runs, w_max);
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/", e.what());
  }
  json jr = json::array();
  for (const auto& r : s.runs) {
    jr.push_back({{"D", r.D},
                  {"P", r.P},
                  {"w_max", r.w_max},
                  {"headroom", r.headroom},
                  {"D_valid", r.D_valid},
                  {"est", r.est},
                  {"total", r.total},
                  {"relations", r.relations},
                  {"tail_zero", r.tail_zero}});
  }
  json names = json::array();
  for (const auto& m : modules) names.push_back(m->name());
  return {{"labels", names},
          {"runs", jr},
          {"stabilized", s.stabilized},
          {"total", s.total},
          {"theorem_bound",
           {{"factors", s.bound.factors},
            {"factor_stabilized", s.bound.stabilized},
            {"product", s.bound.product},
            {"provisional", s.bound.provisional},
            {"M", s.bound.M}}},
          {"total_within_bound", s.total <= s.bound.product}};
}

// --- rr -----------------------------------------------------------------------

json run_rr_gaps(const json& cfg) {
  long g = get_int(cfg, "genus", "/");
  long r = get_int(cfg, "rU", "/");
  if (g < 0) throw SchemaError("/genus", "expected genus >= 0");
  if (r < 1) throw SchemaError("/rU", "expected r_U >= 1");
  GapReport rep = m_constant_and_gaps(g, r);
  json gaps = json::object(), m0 = json::object();
  for (const auto& [n, list] : rep.gaps) gaps[std::to_string(n)] = list;
  for (const auto& [n, v] : rep.m0) m0[std::to_string(n)] = v;
  return {{"genus", g}, {"rU", r}, {"M", rep.M}, {"gaps", gaps}, {"m0", m0}};
}

json run_rr_h0(const json& cfg) {
  long g = get_int(cfg, "genus", "/"), n = get_int(cfg, "n", "/"), m = get_int(cfg, "m", "/");
  if (g < 0 || n < 0 || m < 0) throw SchemaError("/", "genus, n and m must be >= 0");
  auto h = rr_h0(g, n, m);
  json out = {{"genus", g}, {"n", n}, {"m", m}, {"degree", (1 - n) * (2 * g - 2) + m}};
  out["h0"] = h ? json(*h) : json("unresolved");
  return out;
}

// --- output -------------------------------------------------------------------

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object() && !v.empty()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, rows);
    return;
  }
  if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + (x.is_string() ? x.get<std::string>() : x.dump());
    rows.emplace_back(prefix, s);
    return;
  }
  rows.emplace_back(prefix, v.is_string() ? v.get<std::string>() : v.dump());
}

std::string render_table(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("command", report.at("command").get<std::string>());
  rows.emplace_back("config_hash", report.at("config_hash").get<std::string>());
  flatten(report.at("result"), "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
  return out.str();
}

struct Command {
  std::string name;
  std::function<json(const json&)> run;
  std::function<void(json&)> collect;  // copies explicitly given flags into the config
  std::string config_path;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with vertex operator algebras, their modules and conformal blocks"};
  app.set_version_flag("--version", std::string(VOAFIN_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  bool table = false;
  std::string out_path;
  app.add_flag("--table", table, "Render the result as aligned text");
  app.add_option("--out", out_path, "Also write the JSON report to this path");

  std::deque<Command> commands;  // stable addresses: options bind to config_path
  std::vector<std::pair<CLI::App*, std::size_t>> dispatch;

  // flag storage lives as long as main
  std::map<std::string, std::string> strs;
  std::map<std::string, long> ints;
  auto str_opt = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    return sub->add_option(flag, strs[sub->get_name() + "/" + key], help);
  };
  auto int_opt = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    return sub->add_option(flag, ints[sub->get_name() + "/" + key], help);
  };

  struct Flag {
    CLI::Option* opt;
    std::string key;
    enum { Str, Int, Json, ModelArg } type;
    std::string store;
  };
  std::map<CLI::App*, std::vector<Flag>> flags;

  auto add_command = [&](CLI::App* sub, const std::string& name, std::function<json(const json&)> run) {
    commands.push_back({name, std::move(run), {}, {}});
    sub->add_option("--config", commands.back().config_path, "JSON or TOML config file");
    dispatch.emplace_back(sub, commands.size() - 1);
  };
  auto flag_str = [&](CLI::App* sub, const std::string& f, const std::string& key, const std::string& help) {
    flags[sub].push_back({str_opt(sub, f, key, help), key, Flag::Str, sub->get_name() + "/" + key});
  };
  auto flag_json = [&](CLI::App* sub, const std::string& f, const std::string& key, const std::string& help) {
    flags[sub].push_back({str_opt(sub, f, key, help), key, Flag::Json, sub->get_name() + "/" + key});
  };
  auto flag_model = [&](CLI::App* sub) {
    flags[sub].push_back({str_opt(sub, "--model", "model", "Preset name, inline JSON or descriptor file"), "model",
                          Flag::ModelArg, sub->get_name() + "/model"});
  };
  auto flag_int = [&](CLI::App* sub, const std::string& f, const std::string& key, const std::string& help) {
    flags[sub].push_back({int_opt(sub, f, key, help), key, Flag::Int, sub->get_name() + "/" + key});
  };

  auto* ci = app.add_subcommand("check-identities", "Sample Borcherds-type identity residuals on a model");
  add_command(ci, "check-identities", run_check_identities);
  flag_model(ci);
  flag_int(ci, "--cutoff", "cutoff", "Degree cutoff (default 8)");
  flag_int(ci, "--samples", "samples", "Samples per identity (default 200)");
  flag_int(ci, "--seed", "seed", "Random seed");
  flag_int(ci, "--range", "range", "Bound on |p|, |q|, |r| (default 4)");

  auto* vir = app.add_subcommand("virasoro", "Virasoro singular vectors and bounds");
  vir->require_subcommand(1);
  auto* vs = vir->add_subcommand("singular", "Singular vectors of M(c,h) at a level");
  add_command(vs, "virasoro singular", run_virasoro_singular);
  auto* vf = vir->add_subcommand("ff-verify", "Check the projected singular vector against F_{r,s}");
  add_command(vf, "virasoro ff-verify", run_virasoro_ff);
  auto* vb = vir->add_subcommand("bounds", "Quotient-ring bounds for a minimal model");
  add_command(vb, "virasoro bounds", run_virasoro_bounds);
  for (auto* sub : {vs, vf, vb}) {
    flag_int(sub, "-p", "p", "p");
    flag_int(sub, "-q", "q", "q");
    flag_int(sub, "-r", "r", "r");
    flag_int(sub, "-s", "s", "s");
  }
  flag_str(vs, "--charge", "c", "Central charge c");
  flag_str(vs, "--weight", "h", "Lowest weight h");
  flag_int(vs, "--level", "level", "Level");

  auto* qu = app.add_subcommand("quotient", "Dimensions of W / C_n(W), W / B_1(W) or W / C_m(U,W)");
  add_command(qu, "quotient", run_quotient);
  flag_model(qu);
  flag_str(qu, "--space", "space", "c2, cn, b1 or cmu");
  flag_int(qu, "--cutoff", "cutoff", "Degree cutoff");
  flag_int(qu, "--n", "n", "n for cn");
  flag_int(qu, "--m", "m", "m for cmu");
  flag_int(qu, "--window", "window", "Stabilization window");

  auto* lat = app.add_subcommand("lattice", "Lattice VOA computations");
  lat->require_subcommand(1);
  auto* lg = lat->add_subcommand("gamma", "The set Gamma_lambda");
  add_command(lg, "lattice gamma", run_lattice_gamma);
  auto* lb = lat->add_subcommand("b1check", "Check V_{lambda+L} = span of ground states + B_1");
  add_command(lb, "lattice b1check", run_lattice_b1);
  for (auto* sub : {lg, lb}) {
    flag_json(sub, "--gram", "gram", "Gram matrix as JSON, e.g. [[2]]");
    flag_json(sub, "--lambda", "lambda", "lambda in dual coordinates as JSON, e.g. [0] or [\"1/2\"]");
  }
  flag_int(lb, "--cutoff", "cutoff", "Degree cutoff (default 6)");

  auto* bl = app.add_subcommand("blocks", "Coinvariants on the pointed projective line");
  bl->require_subcommand(1);
  auto* bd = bl->add_subcommand("dim", "Coinvariant dimension estimate and theorem bound");
  add_command(bd, "blocks dim", run_blocks_dim);
  flag_int(bd, "--D", "D", "Degree cutoff");
  flag_int(bd, "--P", "P", "Pole-order bound");
  flag_int(bd, "--w-max", "w_max", "Generator weight cap (default r_U)");
  flag_int(bd, "--cutoff", "cutoff", "Module cutoff (default: largest D)");

  auto* rr = app.add_subcommand("rr", "Riemann-Roch order calculus");
  rr->require_subcommand(1);
  auto* rg = rr->add_subcommand("gaps", "The constant M and uncertified pole orders");
  add_command(rg, "rr gaps", run_rr_gaps);
  flag_int(rg, "--genus", "genus", "Genus");
  flag_int(rg, "--rU", "rU", "Largest generator weight r_U");
  auto* rh = rr->add_subcommand("h0", "h^0 of kappa^{1-n}(mQ) when determined");
  add_command(rh, "rr h0", run_rr_h0);
  flag_int(rh, "--genus", "genus", "Genus");
  flag_int(rh, "--n", "n", "n");
  flag_int(rh, "--m", "m", "m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto start = std::chrono::steady_clock::now();
  for (const auto& [sub, idx] : dispatch) {
    if (!sub->parsed()) continue;
    const Command& cmd = commands[idx];
    json report;
    try {
      json cfg = cmd.config_path.empty() ? json::object() : load_config_file(cmd.config_path);
      if (!cfg.is_object()) throw SchemaError("/", "config must be an object");
      for (const auto& f : flags[sub]) {
        if (f.opt->count() == 0) continue;
        switch (f.type) {
          case Flag::Str: cfg[f.key] = strs[f.store]; break;
          case Flag::Int: cfg[f.key] = ints[f.store]; break;
          case Flag::ModelArg: cfg[f.key] = model_argument(strs[f.store]); break;
          case Flag::Json:
            try {
              cfg[f.key] = json::parse(strs[f.store]);
            } catch (const json::parse_error&) {
              throw SchemaError("/" + f.key, "invalid JSON on the command line");
            }
            break;
        }
      }
      // explicit D/P flags replace a sweep read from the config file
      if (cmd.name == "blocks dim" && cfg.contains("sweep")) {
        for (const auto& f : flags[sub]) {
          if ((f.key == "D" || f.key == "P") && f.opt->count() > 0) {
            cfg.erase("sweep");
            break;
          }
        }
      }
      json result = cmd.run(cfg);
      double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report = {{"command", cmd.name},
                {"config", cfg},
                {"config_hash", config_hash(cfg)},
                {"version", VOAFIN_VERSION},
                {"result", result},
                {"wall_time", wall}};
    } catch (const SchemaError& e) {
      std::cerr << json{{"error", "schema"}, {"message", e.what()}}.dump() << "\n";
      return 1;
    } catch (const TruncationError& e) {
      std::cerr << json{{"error", "truncation"}, {"message", e.what()}}.dump() << "\n";
      return 3;
    } catch (const VerificationError& e) {
      std::cerr << json{{"error", "verification"}, {"message", e.what()}}.dump() << "\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << json{{"error", "schema"}, {"message", std::string("/: ") + e.what()}}.dump() << "\n";
      return 1;
    }
    std::cout << (table ? render_table(report) : report.dump(2) + "\n");
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << report.dump(2) << "\n";
    }
    const json& r = report.at("result");
    bool failed = (r.contains("all_zero") && !r.at("all_zero").get<bool>()) ||
                  (r.contains("passed") && !r.at("passed").get<bool>()) ||
                  (r.contains("total_within_bound") && !r.at("total_within_bound").get<bool>() &&
                   !r.at("theorem_bound").at("provisional").get<bool>());
    return failed ? 2 : 0;
  }
  return 1;
}
