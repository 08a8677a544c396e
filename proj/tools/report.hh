#pragma once

// JSON/CSV serialization of library results.

#include <json.hpp>
#include <string>

#include "defekt/census.hh"
#include "defekt/defect.hh"

namespace defekt::report {

using Json = nlohmann::ordered_json;

std::string rational(const mpq_class& v);

Json to_json(const PointClass& c);
template <class F>
Json to_json(const SingularPoint<F>& p);
template <class F>
Json to_json(const SingularLocus<F>& l);
template <class F>
Json to_json(const GroebnerBasis<F>& gb);

Json to_json(const ChartRecord& c);
Json to_json(const TjurinaResult& t);
Json to_json(const BettiTable& t);
Json to_json(const DefectReport& r);
Json to_json(const RestrictionMap& r);
Json to_json(const ResolutionScore& s);
Json to_json(const Certificate& c);
Json to_json(const QuadCensus& c);
Json to_json(const JetCensus& c);
Json to_json(const DensityReport& r);

std::string density_csv(const DensityReport& r);
std::string locus_table(const Json& locus);

}  // namespace defekt::report
