// urysohn: command-line front end. Every subcommand writes one JSON report
// (stdout or --out) and exits 0 on success or a true verdict, 1 on a false
// verdict with its witness, 2 on any error.

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "urysohn/concentration.hpp"
#include "urysohn/embeddability.hpp"
#include "urysohn/group_approx.hpp"
#include "urysohn/io.hpp"
#include "urysohn/katetov.hpp"
#include "urysohn/ramsey.hpp"
#include "urysohn/report.hpp"

namespace fs = std::filesystem;
using namespace urysohn;

namespace {

struct Outcome {
  Report report;
  int code = 0;
};

struct StageError : std::runtime_error {
  StageError(const std::string& stage, const std::string& what) : std::runtime_error(stage + ": " + what) {}
};

// Runs `f`, tagging any exception with the stage name.
template <typename F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

Rational rational_option(const std::string& s, const char* name) {
  return stage(std::string("parse ") + name, [&] { return Rational::parse(s); });
}

std::vector<Rational> rational_list(const std::string& s, const char* name) {
  std::vector<Rational> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(rational_option(cur, name));
    cur.clear();
  };
  for (char c : s) {
    if (c == ',' || c == ' ') flush();
    else cur += c;
  }
  flush();
  return out;
}

std::vector<std::size_t> index_list(const std::string& s, const char* name) {
  return stage(std::string("parse ") + name, [&] { return parse_index_list(s); });
}

MetricSpace load_space(const std::string& path, const char* what = "space") {
  return stage(std::string("read ") + what, [&] { return read_space(path); });
}

std::vector<PermutationIsometry> load_perms(const std::string& path) {
  return stage("read permutations", [&] { return parse_permutations(read_file(path)); });
}

std::string iso_label(std::size_t i) { return "i" + std::to_string(i); }

// --- subcommands -----------------------------------------------------------

struct ValidateArgs {
  std::string file;
};

Outcome run_validate(const ValidateArgs& a) {
  auto data = stage("parse", [&] { return parse_ums_data(read_file(a.file)); });
  if (data.squared) throw StageError("validate", "squared-distance file; use the sphere subcommand");
  auto v = validate_metric(data.matrix, data.labels);
  return {validation_report(data.matrix, v.violations), v.ok() ? 0 : 1};
}

struct GlueArgs {
  std::string a, b, a_points, b_points, epsilon;
};

Outcome run_glue(const GlueArgs& g) {
  auto A = load_space(g.a, "A"), B = load_space(g.b, "B");
  auto eps = rational_option(g.epsilon, "epsilon");
  auto pick = [](const MetricSpace& X, const std::string& list) {
    if (!list.empty()) return index_list(list, "points");
    std::vector<std::size_t> all(X.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  };
  auto pa = pick(A, g.a_points), pb = pick(B, g.b_points);
  if (pa.size() != pb.size()) throw StageError("glue", "the two families need the same number of points");
  std::vector<std::string> index;
  for (std::size_t i = 0; i < pa.size(); ++i) index.push_back(iso_label(i));
  IndexedFamily fa(index, A, pa), fb(index, B, pb);
  auto check = epsilon_isometry_check(fa, fb, eps);
  if (!check.within) {
    Report r;
    r["epsilon"] = to_report(eps);
    r["max_deviation"] = to_report(check.max_deviation);
    if (check.worst_pair) r["worst_pair"] = {check.worst_pair->first, check.worst_pair->second};
    return {r, 1};
  }
  auto glued = stage("glue", [&] { return glue_indexed(fa, fb, eps); });
  return {glue_report(glued, eps, check), 0};
}

struct EmbedArgs {
  std::string f, x;
};

Outcome run_embed(const EmbedArgs& e) {
  auto F = load_space(e.f, "F"), X = load_space(e.x, "X");
  auto all = enumerate_embeddings(F, X);
  Report r;
  r["count"] = all.size();
  r["embeddings"] = Report::array();
  for (const auto& emb : all) r["embeddings"].push_back(to_report(emb));
  return {r, 0};
}

struct IsoArgs {
  std::string x;
};

Outcome run_iso_group(const IsoArgs& a) {
  auto X = load_space(a.x);
  auto G = isometry_group(X);
  Report r;
  r["order"] = G.size();
  r["elements"] = Report::array();
  for (const auto& g : G) r["elements"].push_back(to_report(g));
  return {r, 0};
}

struct KatetovArgs {
  std::string space, support, values, label, grid;
  std::size_t k = 1;
};

Outcome run_katetov(const KatetovArgs& a) {
  auto X = load_space(a.space);
  if (!a.grid.empty()) {
    auto grid = rational_list(a.grid, "grid");
    auto v = stage("extension property", [&] { return extension_property_check(X, grid, a.k); });
    Report r;
    r["holds"] = v.holds;
    r["k"] = a.k;
    r["profiles_checked"] = v.profiles_checked;
    if (!v.holds) {
      r["missing_subset"] = v.missing_subset;
      r["missing_profile"] = Report::array();
      for (const auto& p : v.missing_profile) r["missing_profile"].push_back(to_report(p));
    }
    return {r, v.holds ? 0 : 1};
  }
  auto Y = index_list(a.support, "support");
  auto vals = rational_list(a.values, "values");
  if (Y.size() != vals.size()) throw StageError("katetov", "--support and --values differ in length");
  auto adm = stage("katetov", [&] { return is_admissible_on(X, Y, vals); });
  Report r;
  r["admissible"] = adm.admissible;
  if (!adm) {
    r["violation"] = {adm.violation->first, adm.violation->second};
    return {r, 1};
  }
  auto f = stage("katetov", [&] { return controlled_extension(X, Y, vals); });
  r["values"] = Report::array();
  for (const auto& v : f.values) r["values"].push_back(to_report(v));
  r["support"] = f.support;
  bool zero = std::any_of(f.values.begin(), f.values.end(), [](const Rational& v) { return v.is_zero(); });
  r["realized_by_existing_point"] = zero;
  if (!zero) r["space"] = format_ums(stage("extend", [&] { return one_point_extend(X, f, a.label, true); }));
  return {r, 0};
}

struct GrowArgs {
  std::string space, grid;
  std::size_t k = 1, rounds = 1, budget = UrysohnFragment::default_budget;
  std::uint64_t seed = 0;
};

Outcome run_grow(const GrowArgs& a) {
  auto X = load_space(a.space, "seed space");
  auto grid = rational_list(a.grid, "grid");
  auto g = stage("grow", [&] { return grow_fragment(X, grid, a.k, a.rounds, a.seed, a.budget); });
  Report r;
  r["points"] = g.fragment.size();
  r["rounds_completed"] = g.rounds_completed;
  r["complete"] = g.complete;
  r["space"] = format_ums(g.fragment.space());
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> maps;
  for (std::size_t k = 0; k < g.fragment.generator_count(); ++k) maps.push_back(g.fragment.generator(k).pairs());
  r["partial_isometries"] = format_partial_isometries(maps);
  return {r, 0};
}

struct ApproxArgs {
  std::string space, isometries, points, epsilon, strategy = "auto";
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;
  unsigned jobs = 1;
  bool log = false;
};

void parse_strategy(const std::string& s, ApproxOptions& o) {
  if (s == "auto") o.strategy = QuotientStrategy::automatic;
  else if (s == "ball") o.strategy = QuotientStrategy::ball_perm;
  else if (s == "completion") o.strategy = QuotientStrategy::completion;
  else if (s == "orbit") o.strategy = QuotientStrategy::orbit;
  else if (s.rfind("search", 0) == 0) {
    o.strategy = QuotientStrategy::random_search;
    if (s.size() > 6) {
      if (s[6] != ':') throw StageError("parse strategy", "expected search:degree,attempts");
      auto parts = index_list(s.substr(7), "strategy");
      if (parts.size() != 2) throw StageError("parse strategy", "expected search:degree,attempts");
      o.search.degree = parts[0];
      o.search.attempts = parts[1];
    }
  } else {
    throw StageError("parse strategy", "unknown strategy '" + s + "' (auto, ball, completion, orbit, search:d,a)");
  }
}

Outcome run_approx(const ApproxArgs& a) {
  auto X = load_space(a.space);
  std::vector<PermutationIsometry> gens;
  if (!a.isometries.empty()) gens = load_perms(a.isometries);
  auto points = index_list(a.points, "points");
  auto eps = rational_option(a.epsilon, "epsilon");
  ApproxOptions o;
  parse_strategy(a.strategy, o);
  o.search.seed = a.seed;
  o.jobs = a.jobs;
  if (a.budget) o.orbit.budget = *a.budget;
  auto result = stage("approx", [&] { return approximate_isometries(X, gens, points, eps, o); });
  auto r = approx_report(result);
  if (!a.log) r.erase("log");
  return {r, result.success() ? 0 : 1};
}

struct RamseyArgs {
  std::string x, f, g, tuple, epsilon = "0", mode = "embeddings", search = "exhaustive";
  std::size_t colors = 2, iterations = 2000, restarts = 8;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool verify = false;
};

Outcome run_ramsey(const RamseyArgs& a) {
  std::string fx = a.x, ff = a.f, fg = a.g;
  std::size_t m = a.colors;
  Rational eps;
  RamseyMode mode;
  if (!a.tuple.empty()) {
    auto t = stage("read tuple", [&] { return parse_property_tuple(read_file(a.tuple), fs::path(a.tuple).parent_path()); });
    fx = t.X.string();
    ff = t.F.string();
    fg = t.G.string();
    m = t.m;
    eps = t.epsilon;
    mode = t.mode;
  } else {
    if (fx.empty() || ff.empty() || fg.empty()) throw StageError("ramsey", "need --x, --f and --g (or --tuple)");
    eps = rational_option(a.epsilon, "epsilon");
    mode = stage("parse mode", [&] { return parse_ramsey_mode(a.mode); });
  }
  auto X = load_space(fx, "X"), F = load_space(ff, "F"), G = load_space(fg, "G");
  RamseyOptions o;
  o.mode = mode;
  o.jobs = a.jobs;
  if (a.budget) o.exhaustive_bound = *a.budget;
  if (a.search == "adversarial") o.search.kind = RamseySearch::Kind::adversarial;
  else if (a.search != "exhaustive") throw StageError("parse search", "expected exhaustive or adversarial");
  o.search.seed = a.seed;
  o.search.iterations = a.iterations;
  o.search.restarts = a.restarts;
  auto v = stage("ramsey", [&] { return check_R(F, G, X, m, eps, o); });
  RamseyDomain dom(F, X, mode);
  auto r = ramsey_report(v, dom);
  if (a.verify && v.bad_coloring)
    r["verified"] = stage("verify", [&] { return !verify_some_good(F, G, X, eps, mode, *v.bad_coloring); });
  return {r, v.status == RamseyStatus::fails ? 1 : 0};
}

struct FlipArgs {
  std::string x, f, epsilon;
};

Outcome run_flip(const FlipArgs& a) {
  auto X = load_space(a.x, "X"), F = load_space(a.f, "F");
  auto eps = rational_option(a.epsilon, "epsilon");
  auto w = stage("flip", [&] { return flip_coloring_witness(X, F, eps); });
  bool none_good = !stage("verify", [&] { return verify_some_good(F, F, X, eps, RamseyMode::embeddings, w.coloring); });
  RamseyDomain dom(F, X, RamseyMode::embeddings);
  return {flip_report(w, dom, none_good == w.refutes), w.refutes ? 1 : 0};
}

struct RdmArgs {
  std::string x, group, cover, epsilon, k;
};

Outcome run_rdm(const RdmArgs& a) {
  auto X = load_space(a.x, "X");
  auto group = load_perms(a.group);
  auto cover = stage("read cover", [&] {
    std::vector<std::vector<std::size_t>> out;
    std::istringstream in(read_file(a.cover));
    std::string line;
    while (std::getline(in, line)) {
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      auto set = parse_index_list(line);
      if (!set.empty()) out.push_back(std::move(set));
    }
    return out;
  });
  auto eps = rational_option(a.epsilon, "epsilon");
  auto K = index_list(a.k, "K");
  auto v = stage("rdm", [&] { return rdm_finite_check(X, group, cover, eps, K); });
  return {rdm_report(v, eps), v.holds ? 0 : 1};
}

struct MelambdaArgs {
  std::string space, f, g, lambda = "1", action, h, group, V;
};

Outcome run_melambda(const MelambdaArgs& a) {
  auto lambda = rational_option(a.lambda, "lambda");
  Report r;
  int code = 0;
  if (!a.group.empty()) {
    // Uniformity domination: f and g take values in the group.
    auto perms = load_perms(a.group);
    if (perms.empty()) throw StageError("read permutations", "empty group file");
    FiniteGroup G(perms, perms.front().size());
    std::vector<std::string> labels;
    for (std::size_t e = 0; e < G.order(); ++e) labels.push_back(std::to_string(e));
    auto f = stage("read f", [&] { return parse_step_function(read_file(a.f), labels); });
    auto g = stage("read g", [&] { return parse_step_function(read_file(a.g), labels); });
    auto V = index_list(a.V.empty() ? "0" : a.V, "V");
    auto u = stage("uniformity", [&] { return uniformity_domination_check(G, f, g, V); });
    r["group_order"] = G.order();
    r["elements"] = Report::array();
    for (std::size_t e = 0; e < G.order(); ++e) r["elements"].push_back(to_report(G[e]));
    r["lhs"] = to_report(u.lhs);
    r["rhs"] = to_report(u.rhs);
    r["pass"] = u.pass;
    return {r, u.pass ? 0 : 1};
  }
  auto X = load_space(a.space);
  auto f = stage("read f", [&] { return parse_step_function(read_file(a.f), X.labels()); });
  auto g = stage("read g", [&] { return parse_step_function(read_file(a.g), X.labels()); });
  r["lambda"] = to_report(lambda);
  r["value"] = to_report(stage("melambda", [&] { return me_lambda(f, g, X, lambda); }));
  if (!a.action.empty()) {
    auto perms = load_perms(a.action);
    FiniteGroup G(perms, X.size());
    std::vector<std::string> labels;
    for (std::size_t e = 0; e < G.order(); ++e) labels.push_back(std::to_string(e));
    auto h = stage("read h", [&] { return parse_step_function(read_file(a.h), labels); });
    auto c = stage("action check", [&] { return hm_action_isometry_check(G, X, h, f, g, lambda); });
    r["action"] = {{"group_order", G.order()}, {"lhs", to_report(c.lhs)}, {"rhs", to_report(c.rhs)}, {"equal", c.equal}};
    if (!c.equal) code = 1;
  }
  return {r, code};
}

struct ConcentrateArgs {
  std::size_t n = 100;
  std::string weights = "1/2,1/2", epsilon = "1/10", direction = "at-most";
  std::optional<std::int64_t> threshold;
  std::uint64_t samples = 100000, seed = 0;
  unsigned jobs = 1, shards = 16;
  bool no_exact = false;
};

Outcome run_concentrate(const ConcentrateArgs& a) {
  HammingSample hs{a.n, rational_list(a.weights, "weights"), a.seed};
  ThresholdEvent A;
  A.threshold = a.threshold.value_or(static_cast<std::int64_t>(a.n / 2));
  if (a.direction == "at-most") A.direction = ThresholdEvent::Direction::at_most;
  else if (a.direction == "at-least") A.direction = ThresholdEvent::Direction::at_least;
  else throw StageError("parse direction", "expected at-most or at-least");
  auto eps = rational_option(a.epsilon, "epsilon");
  auto c = stage("concentrate",
                 [&] { return hamming_concentration(hs, A, eps, a.samples, !a.no_exact, a.jobs, a.shards); });
  auto r = concentration_report(hs, A, eps, c);
  bool below = c.mu_A_exact_value && *c.mu_A_exact_value >= 0.5 && *c.mu_A_eps_exact_value < c.oracle_bound;
  return {r, below ? 1 : 0};
}

struct SphereArgs {
  std::string file, target = "sphere";
};

Outcome run_sphere(const SphereArgs& a) {
  auto data = stage("parse", [&] { return parse_ums_data(read_file(a.file)); });
  DistanceMatrix<Rational> sq = data.squared ? data.matrix : DistanceMatrix<Rational>(data.matrix.cwiseProduct(data.matrix));
  EmbeddingTarget t;
  if (a.target == "sphere") t = EmbeddingTarget::sphere;
  else if (a.target == "euclidean") t = EmbeddingTarget::euclidean;
  else throw StageError("parse target", "expected sphere or euclidean");
  auto e = stage("sphere", [&] { return embeddability_test(sq, t); });
  return {sphere_report(e, t), e.embeddable ? 0 : 1};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite metric geometry workbench"};
  app.require_subcommand(1);
  std::string out;
  app.add_option("--out", out, "Write the report here instead of stdout");
  app.fallthrough();

  std::function<Outcome()> run;

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check the metric axioms of a .ums file");
  validate->add_option("file", va.file)->required();
  validate->callback([&] { run = [&] { return run_validate(va); }; });

  GlueArgs ga;
  auto* glue = app.add_subcommand("glue", "Glue two eps-isometric families along bridges of length eps");
  glue->add_option("--a", ga.a)->required();
  glue->add_option("--b", ga.b)->required();
  glue->add_option("--a-points", ga.a_points, "Image of the index set in A (default: all points)");
  glue->add_option("--b-points", ga.b_points, "Image of the index set in B");
  glue->add_option("--epsilon", ga.epsilon)->required();
  glue->callback([&] { run = [&] { return run_glue(ga); }; });

  EmbedArgs ea;
  auto* embed = app.add_subcommand("embed", "List the isometric embeddings F -> X");
  embed->add_option("--f", ea.f)->required();
  embed->add_option("--x", ea.x)->required();
  embed->callback([&] { run = [&] { return run_embed(ea); }; });

  IsoArgs ia;
  auto* iso = app.add_subcommand("iso-group", "List the isometry group of a space");
  iso->add_option("file", ia.x)->required();
  iso->callback([&] { run = [&] { return run_iso_group(ia); }; });

  KatetovArgs ka;
  auto* kat = app.add_subcommand("katetov", "Controlled extension and one-point extension, or the extension property");
  kat->add_option("--space", ka.space)->required();
  kat->add_option("--support", ka.support);
  kat->add_option("--values", ka.values);
  kat->add_option("--label", ka.label);
  kat->add_option("--grid", ka.grid, "Check the extension property over these values");
  kat->add_option("--k", ka.k, "Largest subset size for --grid");
  kat->callback([&] { run = [&] { return run_katetov(ka); }; });

  GrowArgs gr;
  auto* grow = app.add_subcommand("grow", "Grow a Urysohn fragment by rounds of one-point extensions");
  grow->add_option("--space", gr.space)->required();
  grow->add_option("--grid", gr.grid)->required();
  grow->add_option("--k", gr.k);
  grow->add_option("--rounds", gr.rounds);
  grow->add_option("--seed", gr.seed);
  grow->add_option("--budget", gr.budget, "Largest fragment size");
  grow->callback([&] { run = [&] { return run_grow(gr); }; });

  ApproxArgs aa;
  auto* approx = app.add_subcommand("approx", "Certified finite approximation of isometries");
  approx->add_option("--space", aa.space)->required();
  approx->add_option("--isometries", aa.isometries, "Permutation file");
  approx->add_option("--points", aa.points)->required();
  approx->add_option("--epsilon", aa.epsilon)->required();
  approx->add_option("--strategy", aa.strategy, "auto | ball | completion | orbit | search:degree,attempts");
  approx->add_option("--seed", aa.seed);
  approx->add_option("--budget", aa.budget, "Fragment budget");
  approx->add_option("--jobs", aa.jobs);
  approx->add_flag("--log", aa.log, "Include the construction log");
  approx->callback([&] { run = [&] { return run_approx(aa); }; });

  RamseyArgs ra;
  auto* ramsey = app.add_subcommand("ramsey", "Decide X in R(F, G, m, eps)");
  ramsey->add_option("--x", ra.x);
  ramsey->add_option("--f", ra.f);
  ramsey->add_option("--g", ra.g);
  ramsey->add_option("--tuple", ra.tuple, "Property tuple file instead of --x/--f/--g/--colors/--epsilon/--mode");
  ramsey->add_option("--colors", ra.colors);
  ramsey->add_option("--epsilon", ra.epsilon);
  ramsey->add_option("--mode", ra.mode, "embeddings | subspaces");
  ramsey->add_option("--search", ra.search, "exhaustive | adversarial");
  ramsey->add_option("--seed", ra.seed);
  ramsey->add_option("--iterations", ra.iterations);
  ramsey->add_option("--restarts", ra.restarts);
  ramsey->add_option("--budget", ra.budget, "Largest number of colorings enumerated");
  ramsey->add_option("--jobs", ra.jobs);
  ramsey->add_flag("--verify", ra.verify, "Re-check a bad coloring by brute force");
  ramsey->callback([&] { run = [&] { return run_ramsey(ra); }; });

  FlipArgs fa;
  auto* flip = app.add_subcommand("flip", "Flip coloring against R(F, F, 2, eps) for a two-point F");
  flip->add_option("--x", fa.x)->required();
  flip->add_option("--f", fa.f)->required();
  flip->add_option("--epsilon", fa.epsilon)->required();
  flip->callback([&] { run = [&] { return run_flip(fa); }; });

  RdmArgs da;
  auto* rdm = app.add_subcommand("rdm", "Finite cover form: some g moves K near one cover element");
  rdm->add_option("--x", da.x)->required();
  rdm->add_option("--group", da.group, "Permutation file of generators")->required();
  rdm->add_option("--cover", da.cover, "One cover element per line")->required();
  rdm->add_option("--epsilon", da.epsilon)->required();
  rdm->add_option("--k", da.k, "Points of K")->required();
  rdm->callback([&] { run = [&] { return run_rdm(da); }; });

  MelambdaArgs ma;
  auto* mel = app.add_subcommand("melambda", "me_lambda between step functions; action and uniformity checks");
  mel->add_option("--space", ma.space);
  mel->add_option("--f", ma.f)->required();
  mel->add_option("--g", ma.g)->required();
  mel->add_option("--lambda", ma.lambda);
  mel->add_option("--action", ma.action, "Isometries of the space generating the acting group");
  mel->add_option("--action-map", ma.h, "Step function into the acting group");
  mel->add_option("--group", ma.group, "Generators of a group; f and g then take values in it");
  mel->add_option("--V", ma.V, "Neighbourhood of the identity for the uniformity check");
  mel->callback([&] { run = [&] { return run_melambda(ma); }; });

  ConcentrateArgs ca;
  auto* conc = app.add_subcommand("concentrate", "Hamming concentration of a threshold event");
  conc->add_option("--n", ca.n);
  conc->add_option("--weights", ca.weights);
  conc->add_option("--threshold", ca.threshold, "Default n/2");
  conc->add_option("--direction", ca.direction, "at-most | at-least");
  conc->add_option("--epsilon", ca.epsilon);
  conc->add_option("--samples", ca.samples);
  conc->add_option("--seed", ca.seed);
  conc->add_option("--jobs", ca.jobs);
  conc->add_option("--shards", ca.shards);
  conc->add_flag("--no-exact", ca.no_exact);
  conc->callback([&] { run = [&] { return run_concentrate(ca); }; });

  SphereArgs sa;
  auto* sphere = app.add_subcommand("sphere", "Exact sphere or Euclidean embeddability");
  sphere->add_option("file", sa.file)->required();
  sphere->add_option("--target", sa.target, "sphere | euclidean");
  sphere->callback([&] { run = [&] { return run_sphere(sa); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    Outcome o = stage(name, run);
    std::string text = dump_report(o.report);
    if (out.empty()) std::cout << text;
    else stage("write report", [&] { write_file(out, text); return 0; });
    return o.code;
  } catch (const std::exception& e) {
    std::cerr << "error " << e.what() << "\n";
    return 2;
  }
}
