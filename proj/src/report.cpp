#include "urysohn/report.hpp"

#include "urysohn/io.hpp"

namespace urysohn {

std::string dump_report(const Report& r) { return r.dump(2) + "\n"; }

Report parse_report(std::string_view text) { return Report::parse(text); }

Report to_report(const Rational& r) { return r.str(); }

Rational rational_from(const Report& r) { return Rational::parse(r.get<std::string>()); }

Report to_report(const PermutationIsometry& p) { return p.images; }
Report to_report(const Embedding& e) { return e.map; }

Report to_report(const Violation& v) {
  Report r;
  r["kind"] = to_string(v.kind);
  if (v.kind == Violation::Kind::triangle) r["triple"] = {v.i, v.j, v.k};
  else r["pair"] = {v.i, v.j};
  r["message"] = v.message;
  return r;
}

Report validation_report(const DistanceMatrix<Rational>& matrix, const std::vector<Violation>& violations) {
  Report r;
  r["valid"] = violations.empty();
  r["points"] = matrix.rows();
  r["violations"] = Report::array();
  for (const auto& v : violations) r["violations"].push_back(to_report(v));
  return r;
}

Report approx_report(const ApproximationResult& a) {
  Report r;
  r["epsilon_requested"] = to_report(a.epsilon);
  r["epsilon_achieved"] = to_report(a.epsilon_achieved());
  r["delta"] = to_report(a.params.delta);
  r["Delta"] = to_report(a.params.Delta);
  r["N"] = a.params.N;
  r["strategy"] = a.strategy;
  r["quotient_degree"] = a.quotient_degree;
  r["quotient_order"] = a.quotient_order;
  r["certificate_deviation"] = a.certificate ? to_report(a.certificate->deviation) : Report(nullptr);
  r["space"] = format_ums(a.space);
  r["points"] = a.points;
  r["generators"] = Report::array();
  for (const auto& g : a.generators) r["generators"].push_back(to_report(g));
  r["success"] = a.success();
  r["space_scope"] = a.space_scope;
  r["family"] = Report::object();
  for (std::size_t i = 0; i < a.family_labels.size(); ++i) r["family"][a.family_labels[i]] = a.family_points[i];
  if (a.certificate && a.certificate->worst_pair)
    r["worst_pair"] = {a.certificate->worst_pair->first, a.certificate->worst_pair->second};
  r["xi_value"] = to_report(a.xi_value);
  r["xi_reused"] = a.xi_reused;
  r["kernel_free_radius"] = a.kernel_free_radius;
  r["N_honored"] = a.N_honored;
  r["isometric_on_ball2"] = a.isometric_on_ball2;
  r["log"] = a.log;
  return r;
}

MetricSpace space_from(const Report& approx) { return parse_ums(approx.at("space").get<std::string>()); }

namespace {

std::string status_name(RamseyStatus s) {
  switch (s) {
    case RamseyStatus::holds: return "holds";
    case RamseyStatus::fails: return "fails";
    case RamseyStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

Report domain_list(const RamseyDomain& domain) {
  Report out = Report::array();
  for (std::size_t e = 0; e < domain.size(); ++e)
    out.push_back(domain.mode() == RamseyMode::subspaces ? Report(domain.image(e))
                                                         : Report(domain.representative(e).map));
  return out;
}

}  // namespace

Report ramsey_report(const RamseyVerdict& v, const RamseyDomain& domain) {
  Report r;
  r["status"] = status_name(v.status);
  r["mode"] = to_string(v.mode);
  r["m"] = v.m;
  r["epsilon"] = to_report(v.epsilon);
  r["domain_size"] = v.domain_size;
  r["g_embeddings"] = v.g_embeddings;
  r["colorings_examined"] = v.colorings_examined;
  r["embeddings_examined"] = v.embeddings_examined;
  r["good_embedding"] = v.good_embedding ? to_report(*v.good_embedding) : Report(nullptr);
  r["bad_coloring"] = v.bad_coloring ? Report(*v.bad_coloring) : Report(nullptr);
  r["domain"] = domain_list(domain);
  if (!v.note.empty()) r["note"] = v.note;
  return r;
}

Report flip_report(const FlipWitness& w, const RamseyDomain& domain, bool verified) {
  Report r;
  r["refutes"] = w.refutes;
  r["eps0"] = to_report(w.eps0);
  r["coloring"] = w.coloring;
  r["domain"] = domain_list(domain);
  r["verified"] = verified;
  return r;
}

Report rdm_report(const RdmVerdict& v, const Rational& eps) {
  Report r;
  r["holds"] = v.holds;
  r["epsilon"] = to_report(eps);
  r["group_order"] = v.group_order;
  r["witness"] = v.witness ? to_report(*v.witness) : Report(nullptr);
  r["cover_index"] = v.witness ? Report(v.cover_index) : Report(nullptr);
  return r;
}

Report glue_report(const GlueResult<Rational>& g, const Rational& eps, const EpsilonIsometry<Rational>& check) {
  Report r;
  r["epsilon"] = to_report(eps);
  r["max_deviation"] = to_report(check.max_deviation);
  r["space"] = format_ums(g.space);
  r["a_copy"] = {{"source", g.a_copy.source_points}, {"glued", g.a_copy.glued_points}};
  r["b_copy"] = {{"source", g.b_copy.source_points}, {"glued", g.b_copy.glued_points}};
  r["collapse_classes"] = g.collapse_classes;
  return r;
}

Report concentration_report(const HammingSample& hs, const ThresholdEvent& A, const Rational& eps,
                            const ConcentrationResult& c) {
  Report r;
  r["n"] = hs.n;
  r["eps"] = to_report(eps);
  r["samples"] = c.samples;
  r["seed"] = hs.seed;
  r["mu_A"] = c.mu_A_est;
  r["mu_A_eps"] = c.mu_A_eps_est;
  if (c.mu_A_exact) {
    r["exact"] = {{"mu_A", *c.mu_A_exact},
                  {"mu_A_eps", *c.mu_A_eps_exact},
                  {"mu_A_value", *c.mu_A_exact_value},
                  {"mu_A_eps_value", *c.mu_A_eps_exact_value}};
  }
  r["oracle_bound"] = c.oracle_bound;
  r["weights"] = Report::array();
  for (const auto& w : hs.weights) r["weights"].push_back(to_report(w));
  r["threshold"] = A.threshold;
  r["direction"] = A.direction == ThresholdEvent::Direction::at_most ? "at-most" : "at-least";
  r["shift"] = c.shift;
  return r;
}

Report sphere_report(const EmbeddabilityResult<Rational>& e, EmbeddingTarget target) {
  Report r;
  r["target"] = target == EmbeddingTarget::sphere ? "sphere" : "euclidean";
  r["embeddable"] = e.embeddable;
  r["rank"] = e.certificate.rank();
  r["pivots"] = e.certificate.pivots;
  r["pivot_values"] = Report::array();
  for (const auto& p : e.certificate.pivot_values) r["pivot_values"].push_back(to_report(p));
  if (e.certificate.witness) {
    Report w = Report::array();
    for (Eigen::Index i = 0; i < e.certificate.witness->size(); ++i) w.push_back(to_report((*e.certificate.witness)(i)));
    r["witness"] = w;
    r["witness_value"] = to_report(e.certificate.witness_value);
  }
  return r;
}

}  // namespace urysohn
