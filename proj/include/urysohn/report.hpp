#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "urysohn/concentration.hpp"
#include "urysohn/embeddability.hpp"
#include "urysohn/group_approx.hpp"
#include "urysohn/indexed_family.hpp"
#include "urysohn/ramsey.hpp"

namespace urysohn {

/// Reports keep insertion order; rationals are "p/q" strings, never floats.
/// Nothing time- or host-dependent goes in, so identical runs give identical
/// bytes.
using Report = nlohmann::ordered_json;

std::string dump_report(const Report& r);
Report parse_report(std::string_view text);

Report to_report(const Rational& r);
Rational rational_from(const Report& r);

Report to_report(const Violation& v);
Report validation_report(const DistanceMatrix<Rational>& matrix, const std::vector<Violation>& violations);

Report approx_report(const ApproximationResult& r);
/// The space stored inline in an approx report.
MetricSpace space_from(const Report& approx);

/// `domain` lists the coloured elements (image sets in subspaces mode);
/// colorings are given in that order.
Report ramsey_report(const RamseyVerdict& v, const RamseyDomain& domain);
Report flip_report(const FlipWitness& w, const RamseyDomain& domain, bool verified);
Report rdm_report(const RdmVerdict& v, const Rational& eps);

Report glue_report(const GlueResult<Rational>& g, const Rational& eps, const EpsilonIsometry<Rational>& check);

Report concentration_report(const HammingSample& hs, const ThresholdEvent& A, const Rational& eps,
                            const ConcentrationResult& r);

Report sphere_report(const EmbeddabilityResult<Rational>& r, EmbeddingTarget target);

Report to_report(const PermutationIsometry& p);
Report to_report(const Embedding& e);

}  // namespace urysohn
