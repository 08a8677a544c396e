#include "report.hh"

#include <cstdio>
#include <sstream>

namespace defekt::report {

std::string rational(const mpq_class& v) { return v.get_str(); }

namespace {

const char* type_name(SingularityType t) {
  switch (t) {
    case SingularityType::A: return "A";
    case SingularityType::OrdinaryMultiple: return "OrdinaryMultiple";
    case SingularityType::Other: break;
  }
  return "Other";
}

const char* dimension_name(LocusDimension d) {
  switch (d) {
    case LocusDimension::empty: return "empty";
    case LocusDimension::zero: return "zero";
    case LocusDimension::positive: break;
  }
  return "positive";
}

Json fraction(std::uint64_t k, std::uint64_t n, bool exact) {
  Json j;
  j["count"] = k;
  j["fraction"] = n ? static_cast<double>(k) / static_cast<double>(n) : 0.0;
  if (exact) {
    mpq_class q(static_cast<unsigned long>(k), static_cast<unsigned long>(n ? n : 1));
    q.canonicalize();
    j["exact"] = rational(q);
  } else {
    auto ci = wilson(k, n);
    j["ci95"] = {ci.lo, ci.hi};
  }
  return j;
}

Json reference(const mpq_class& v) {
  Json j;
  j["exact"] = rational(v);
  j["value"] = v.get_d();
  return j;
}

}  // namespace

Json to_json(const PointClass& c) {
  Json j;
  j["tag"] = c.tag();
  j["type"] = type_name(c.type);
  j["k"] = c.k;
  j["multiplicity"] = c.multiplicity;
  j["tau"] = c.tau ? Json(*c.tau) : Json(nullptr);
  j["weighted_homogeneous"] = c.weighted_homogeneous;
  return j;
}

template <class F>
Json to_json(const SingularPoint<F>& p) {
  Json j;
  j["coords"] = p.coords_string();
  j["residue_degree"] = p.degree;
  j["residue_field"] = p.embedding.target()->literal();
  j["chart"] = p.chart;
  j["class"] = to_json(p.cls);
  return j;
}

template <class F>
Json to_json(const SingularLocus<F>& l) {
  Json j;
  j["n"] = l.n;
  j["degree"] = l.degree;
  j["dimension"] = dimension_name(l.dimension);
  j["tau"] = l.tau ? Json(*l.tau) : Json(nullptr);
  j["geometric_points"] = l.geometric_count();
  j["unresolved_length"] = l.unresolved_length;
  j["char_divides_degree"] = l.char_divides_degree;
  Json pts = Json::array();
  for (auto& p : l.points) pts.push_back(to_json(p));
  j["points"] = pts;
  return j;
}

template <class F>
Json to_json(const GroebnerBasis<F>& gb) {
  Json j;
  Json gens = Json::array();
  for (auto& g : gb.generators()) gens.push_back(format_poly(g));
  j["generators"] = gens;
  j["size"] = gb.size();
  j["unit"] = gb.is_unit();
  j["zero_dimensional"] = gb.is_zero_dimensional();
  auto dim = gb.quotient_dimension();
  j["quotient_dimension"] = dim ? Json(*dim) : Json(nullptr);
  return j;
}

Json to_json(const ChartRecord& c) {
  Json j;
  j["kind"] = c.kind;
  j["index"] = c.index;
  if (!c.form.empty()) j["form"] = c.form;
  return j;
}

Json to_json(const TjurinaResult& t) {
  Json j;
  j["tau"] = t.tau;
  j["chart"] = t.chart.index;
  j["chart_kind"] = t.chart.kind;
  if (!t.chart.form.empty()) j["chart_form"] = t.chart.form;
  return j;
}

Json to_json(const BettiTable& t) {
  Json j;
  j["n"] = t.n;
  Json h = Json::array(), prov = Json::array();
  for (std::size_t i = 0; i < t.h.size(); ++i) {
    h.push_back(t.h[i] ? Json(*t.h[i]) : Json(nullptr));
    prov.push_back(t.provenance[i]);
  }
  j["h"] = h;
  j["provenance"] = prov;
  return j;
}

Json to_json(const DefectReport& r) {
  Json j;
  j["delta"] = r.delta;
  j["method"] = r.method;
  Json w;
  if (r.method == "nodal-evaluation") {
    w["form_degree"] = r.degree;
    w["nodes"] = r.nodes;
    w["rows"] = r.rows;
    w["cols"] = r.cols;
    w["rank"] = r.rank;
  } else if (r.method == "cone-formula") {
    w["base_betti"] = r.base_betti;
    w["ambient_betti"] = r.ambient_betti;
  }
  j["witness"] = w;
  return j;
}

Json to_json(const RestrictionMap& r) {
  Json j;
  j["k"] = r.k;
  j["source_degree"] = r.source_degree;
  j["target"] = r.target;
  j["source_dim"] = r.source_dim;
  j["target_dim"] = r.target_dim;
  j["rank"] = r.rank;
  j["coker"] = r.coker();
  return j;
}

Json to_json(const ResolutionScore& s) {
  Json j;
  j["blowups"] = s.blowups;
  j["score"] = s.score;
  j["degree"] = s.degree;
  j["below_degree"] = s.below_degree();
  return j;
}

Json to_json(const Certificate& c) {
  Json j;
  j["kind"] = certificate_name(c.kind);
  j["no_defect"] = c.is_no_defect();
  j["hypotheses"] = c.hypotheses;
  Json checks = Json::array();
  for (auto& q : c.checks) {
    Json e;
    e["route"] = q.name;
    e["lhs"] = q.lhs;
    e["relation"] = q.relation;
    e["rhs"] = q.rhs;
    e["holds"] = q.holds;
    checks.push_back(e);
  }
  j["checks"] = checks;
  if (c.delta) j["delta"] = *c.delta;
  return j;
}

Json to_json(const QuadCensus& c) {
  Json j;
  j["n"] = c.n;
  j["q"] = c.q;
  j["route"] = c.route;
  j["count"] = c.count.get_str();
  if (!c.histogram.empty()) j["histogram"] = c.histogram;
  j["sandwich"] = quad_sandwich(c.n, c.q, c.count);
  return j;
}

Json to_json(const JetCensus& c) {
  Json j;
  j["n"] = c.n;
  j["r"] = c.r;
  Json counts;
  counts["not_on_X"] = c.counts[0];
  counts["smooth"] = c.counts[1];
  counts["node"] = c.counts[2];
  counts["corank_one"] = c.counts[3];
  counts["worse"] = c.counts[4];
  j["counts"] = counts;
  j["total"] = c.total;
  j["probability"] = rational(c.probability);
  j["closed_form"] = rational(c.closed_form);
  j["agrees"] = c.probability == c.closed_form;
  j["sandwich"] = c.sandwich;
  return j;
}

Json to_json(const DensityReport& r) {
  Json j;
  j["n"] = r.n;
  j["q"] = r.q;
  j["d"] = r.d;
  j["mode"] = r.exhaustive ? "exhaustive" : "sample";
  j["samples"] = r.samples;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  const auto& t = r.tallies;
  Json f;
  f["smooth"] = fraction(t.smooth, t.total, r.exhaustive);
  f["ak_omp"] = fraction(t.ak_omp, t.total, r.exhaustive);
  f["certified_no_defect"] = fraction(t.certified, t.total, r.exhaustive);
  f["certified_resolution"] = fraction(t.certified_resolution, t.total, r.exhaustive);
  f["inconclusive"] = fraction(t.inconclusive(), t.total, r.exhaustive);
  j["fractions"] = f;
  j["positive_dimensional"] = t.positive_dimensional;
  j["failed"] = t.failed;
  Json ref;
  ref["smooth_standard"] = reference(r.smooth_ref_standard);
  ref["smooth_truncated"] = reference(r.smooth_ref_truncated);
  ref["no_defect_standard"] = reference(r.nodefect_ref_standard);
  ref["no_defect_truncated"] = reference(r.nodefect_ref_truncated);
  j["reference"] = ref;
  return j;
}

std::string density_csv(const DensityReport& r) {
  const auto& t = r.tallies;
  std::ostringstream out;
  out << "class,count,fraction\n";
  auto row = [&](const char* name, std::uint64_t k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", t.total ? static_cast<double>(k) / static_cast<double>(t.total) : 0.0);
    out << name << "," << k << "," << buf << "\n";
  };
  row("smooth", t.smooth);
  row("ak_omp", t.ak_omp);
  row("certified_no_defect", t.certified);
  row("certified_resolution", t.certified_resolution);
  row("inconclusive", t.inconclusive());
  row("positive_dimensional", t.positive_dimensional);
  row("failed", t.failed);
  row("total", t.total);
  return out.str();
}

std::string locus_table(const Json& locus) {
  std::ostringstream out;
  out << "locus: " << locus["dimension"].get<std::string>();
  if (!locus["tau"].is_null()) out << ", tau = " << locus["tau"].get<std::uint64_t>();
  out << "\n";
  if (locus["points"].empty()) return out.str();
  out << "point\tdeg\ttype\tmult\ttau\twh\n";
  for (auto& p : locus["points"]) {
    auto& c = p["class"];
    out << p["coords"].get<std::string>() << "\t" << p["residue_degree"].get<unsigned>() << "\t"
        << c["tag"].get<std::string>() << "\t" << c["multiplicity"].get<unsigned>() << "\t"
        << (c["tau"].is_null() ? std::string("-") : std::to_string(c["tau"].get<std::uint64_t>())) << "\t"
        << (c["weighted_homogeneous"].get<bool>() ? "yes" : "no") << "\n";
  }
  if (locus["unresolved_length"].get<std::uint64_t>())
    out << "non-rational points not listed, carrying tau = " << locus["unresolved_length"].get<std::uint64_t>() << "\n";
  return out.str();
}

template Json to_json(const SingularPoint<Rationals>&);
template Json to_json(const SingularPoint<GaloisField>&);
template Json to_json(const SingularLocus<Rationals>&);
template Json to_json(const SingularLocus<GaloisField>&);
template Json to_json(const GroebnerBasis<Rationals>&);
template Json to_json(const GroebnerBasis<GaloisField>&);

}  // namespace defekt::report
