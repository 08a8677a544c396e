#include "cli.hh"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "report.hh"

#ifndef DEFEKT_VERSION
#define DEFEKT_VERSION "0.0.0"
#endif

namespace defekt::cli {

using report::Json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return s.str();
}

std::vector<std::string> split_statements(const std::string& text) {
  static const std::string ops = "+-*/^";
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto trim = [](const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  auto flush = [&] {
    if (auto t = trim(cur); !t.empty()) out.push_back(t);
    cur.clear();
    depth = 0;
  };
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto t = trim(line);
    if (t.empty()) continue;
    // a statement carries over a line break while it ends in an operator,
    // the next line starts with one, or a parenthesis is open
    auto c = trim(cur);
    bool joined = !c.empty() && (depth > 0 || ops.find(c.back()) != std::string::npos || ops.find(t.front()) != std::string::npos);
    if (!joined) flush();
    for (char ch : t) {
      if (ch == ';') {
        flush();
        continue;
      }
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      cur += ch;
    }
    cur += ' ';
  }
  flush();
  return out;
}

namespace {

struct Context {
  std::string poly_file, expr, field = "Q", out_file, format = "json";
  int vars = 0;
  Json digests = Json::object();
  int exit = kOk;

  std::string text() {
    if (!expr.empty()) return expr;
    if (poly_file.empty()) fail(ErrorCode::UsageError, "either --poly or --expr is required");
    std::ifstream in(poly_file, std::ios::binary);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot read " + poly_file);
    std::stringstream buf;
    buf << in.rdbuf();
    digests[poly_file] = sha256_hex(buf.str());
    return buf.str();
  }

  std::vector<std::string> statements() {
    auto s = split_statements(text());
    if (s.empty()) fail(ErrorCode::SyntaxError, "no polynomial given");
    return s;
  }

  std::string single() {
    auto s = statements();
    if (s.size() != 1) fail(ErrorCode::InvalidArgument, "expected exactly one polynomial, got " + std::to_string(s.size()));
    return s[0];
  }

  // Homogeneous coordinates x0..xn.
  template <class F>
  Poly<F> projective(const std::shared_ptr<const F>& K) {
    auto s = single();
    int n1 = vars ? vars : max_variable_index(s) + 1;
    if (n1 < 1) fail(ErrorCode::InvalidArgument, "polynomial has no variables; use --vars");
    return parse_poly<F>(s, K, n1, 0);
  }
};

template <class Fn>
auto with_field(const Context& ctx, Fn&& fn) {
  return visit_field(parse_field(ctx.field), std::forward<Fn>(fn));
}

template <class K>
using FieldOf = typename std::decay_t<decltype(*std::declval<K>())>;

void add_common(CLI::App* sub, Context& ctx, bool with_field_opt = true) {
  sub->add_option("--poly", ctx.poly_file, "file with the polynomial(s)");
  sub->add_option("--expr", ctx.expr, "polynomial given inline");
  if (with_field_opt) sub->add_option("--field", ctx.field, "Q, F<p>, F<p>^<e> or F<q>");
  sub->add_option("--vars", ctx.vars, "number of variables (default: from the largest index)");
}

std::vector<std::string> parse_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string piece;
  while (std::getline(in, piece, ',')) out.push_back(piece);
  return out;
}

Json manifest_params(const CLI::App* app) {
  Json p = Json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name(false, true);
    name.erase(0, name.find_first_not_of('-'));
    auto res = opt->results();
    if (opt->get_type_size() == 0) p[name] = true;
    else if (res.size() == 1) p[name] = res[0];
    else p[name] = res;
  }
  return p;
}

std::string subcommand_path(const CLI::App* app) {
  std::string path;
  for (auto* cur = app; cur; ) {
    auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs[0];
    path += (path.empty() ? "" : " ") + cur->get_name();
  }
  return path;
}

const CLI::App* leaf(const CLI::App* app) {
  while (!app->get_subcommands().empty()) app = app->get_subcommands()[0];
  return app;
}

// ---------------------------------------------------------------------------
// Subcommands

Json cmd_groebner(Context& ctx, const std::string& order_name) {
  return with_field(ctx, [&](auto K) -> Json {
    using F = FieldOf<decltype(K)>;
    auto stmts = ctx.statements();
    int hi = -1, lo = 1 << 20;
    for (auto& s : stmts) {
      hi = std::max(hi, max_variable_index(s));
      int m = min_variable_index(s);
      if (m >= 0) lo = std::min(lo, m);
    }
    int base = lo >= 1 && lo < (1 << 20) ? 1 : 0;
    int n = ctx.vars ? ctx.vars : std::max(1, hi + 1 - base);
    std::vector<Poly<F>> gens;
    for (auto& s : stmts) gens.push_back(parse_poly<F>(s, K, n, base));
    MonomialOrder ord = MonomialOrder::grevlex();
    if (order_name == "lex") ord = MonomialOrder::lex();
    else if (order_name != "grevlex") fail(ErrorCode::UsageError, "unknown order " + order_name);
    auto gb = buchberger(gens, ord);
    Json j = report::to_json(gb);
    j["order"] = order_name;
    j["nvars"] = n;
    bool homogeneous = std::all_of(gens.begin(), gens.end(), [](const auto& g) { return g.is_homogeneous(); });
    if (homogeneous && order_name == "grevlex") {
      j["projectively_empty"] = gb.is_projectively_empty();
      bool fin = gb.projective_locus_finite();
      j["projective_locus_finite"] = fin;
      if (fin) j["projective_degree"] = gb.projective_degree();
    }
    return j;
  });
}

Json cmd_classify(Context& ctx, const std::string& point) {
  return with_field(ctx, [&](auto K) -> Json {
    using F = FieldOf<decltype(K)>;
    if (!point.empty()) {
      // Affine polynomial in x1..xn and a point of K^n, or a form in
      // x0..xn and a point of P^n (classified in the chart of its first
      // nonzero coordinate).
      auto s = ctx.single();
      auto coords = parse_list(point);
      if (min_variable_index(s) == 0) {
        auto P = ctx.projective(K);
        if (static_cast<int>(coords.size()) != P.nvars()) fail(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
        std::vector<typename F::Element> x;
        for (auto& c : coords) x.push_back(parse_poly<F>(c, K, 0, 1).constant_term());
        auto chart = std::find_if(x.begin(), x.end(), [&](const auto& v) { return !K->is_zero(v); }) - x.begin();
        if (chart == static_cast<std::ptrdiff_t>(x.size())) fail(ErrorCode::InvalidArgument, "the zero vector is not a point of P^n");
        std::vector<typename F::Element> a;
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
          if (i != chart) a.push_back(K->div(x[i], x[chart]));
        Json j;
        j["point"] = point;
        j["chart"] = chart;
        j["class"] = report::to_json(classify_point(dehomogenize(P, static_cast<int>(chart)), a));
        return j;
      }
      int n = ctx.vars ? ctx.vars : std::max<int>(max_variable_index(s), static_cast<int>(coords.size()));
      auto f = parse_poly<F>(s, K, n, 1);
      if (static_cast<int>(coords.size()) != n) fail(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
      std::vector<typename F::Element> x;
      for (auto& c : coords) x.push_back(parse_poly<F>(c, K, 0, 1).constant_term());
      Json j;
      j["point"] = point;
      j["class"] = report::to_json(classify_point(f, x));
      return j;
    }
    auto P = ctx.projective(K);
    Json j;
    j["locus"] = report::to_json(singular_locus(P));
    return j;
  });
}

Json cmd_tjurina(Context& ctx, unsigned power) {
  return with_field(ctx, [&](auto K) -> Json {
    auto P = ctx.projective(K);
    Json j = report::to_json(power == 1 ? global_tjurina(P) : ideal_power_quotient_dim(P, power));
    j["power"] = power;
    return j;
  });
}

Json cmd_defect(Context& ctx, bool profile) {
  return with_field(ctx, [&](auto K) -> Json {
    using F = FieldOf<decltype(K)>;
    auto P = ctx.projective(K);
    auto locus = singular_locus(P);
    if (locus.dimension == LocusDimension::positive)
      fail(ErrorCode::PositiveDimensionalLocus, "singular locus is positive-dimensional");
    const int n = locus.n;
    Json j;
    j["locus"] = report::to_json(locus);
    bool resolved = locus.fully_resolved();
    bool nodal = resolved && std::all_of(locus.points.begin(), locus.points.end(), [](const auto& p) {
      return p.cls.type == SingularityType::A && p.cls.k == 1;
    });
    bool all_a = resolved && std::all_of(locus.points.begin(), locus.points.end(), [](const auto& p) {
      return p.cls.type == SingularityType::A;
    });
    std::optional<DefectReport> rep;
    if (nodal && n % 2 == 0) {
      rep = nodal_defect(P, locus);
    } else if constexpr (std::is_same_v<F, Rationals>) {
      if (auto v = cone_vertex_variable(P); v && n >= 2) {
        try {
          rep = cone_defect(specialize(P, *v, K->zero()));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::BaseNotSmooth) throw;
        }
      }
    }
    if (!rep && all_a && n % 2 == 1) {
      rep = DefectReport{};
      rep->method = "certified-zero";
      j["certificate"] = report::to_json(certify_no_defect(P, locus));
    }
    if (!rep) {
      auto cert = certify_no_defect(P, locus);
      j["certificate"] = report::to_json(cert);
      if (cert.is_no_defect()) {
        rep = DefectReport{};
        rep->method = "certified-zero";
      }
    }
    if (profile && locus.dimension == LocusDimension::zero) {
      auto chart = choose_chart(P);
      Json prof = Json::array();
      for (int k = 1; k <= n; ++k)
        prof.push_back(report::to_json(graded_restriction_matrix(
            P, chart, k, k == 1 ? RestrictionTarget::jacobian_cube : RestrictionTarget::tjurina)));
      j["obstruction_profile"] = prof;
    }
    if (!rep) {
      j["status"] = "inconclusive";
      ctx.exit = kInconclusive;
      return j;
    }
    j["status"] = "computed";
    j["defect"] = report::to_json(*rep);
    j["betti"] = report::to_json(locus.dimension == LocusDimension::empty ? betti_smooth(n, locus.degree)
                                                                           : betti_singular(n, rep->delta));
    return j;
  });
}

Json cmd_certify(Context& ctx, bool assert_wh, bool factorial) {
  return with_field(ctx, [&](auto K) -> Json {
    auto P = ctx.projective(K);
    Certificate cert;
    if (factorial) {
      cert = factoriality_certificate(P);
    } else {
      CertifyOptions opt;
      opt.assert_weighted_homogeneous = assert_wh;
      cert = certify_no_defect(P, opt);
    }
    if (!cert.is_no_defect()) ctx.exit = kInconclusive;
    return report::to_json(cert);
  });
}

Json cmd_cone(Context& ctx) {
  if (parse_field(ctx.field).is_finite())
    fail(ErrorCode::InvalidField, "the cone formula is a characteristic 0 Betti computation; use --field Q");
  auto K = Rationals::instance();
  auto G = ctx.projective(K);
  // a form missing a variable is read as the cone itself
  if (auto v = cone_vertex_variable(G)) G = specialize(G, *v, K->zero());
  Json j;
  j["base_nvars"] = G.nvars();
  j["base_degree"] = G.degree();
  auto rep = cone_defect(G);
  j["defect"] = report::to_json(rep);
  j["betti"] = report::to_json(betti_singular(G.nvars(), rep.delta));
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx;
  CLI::App app{"Singularities, Tjurina numbers and defect of projective hypersurfaces", "defekt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DEFEKT_VERSION);
  std::function<Json()> action;
  std::string kind;

  std::string order = "grevlex";
  auto* gb = app.add_subcommand("groebner", "reduced Groebner basis of the given polynomials");
  add_common(gb, ctx);
  gb->add_option("--order", order, "grevlex or lex");
  gb->callback([&] {
    kind = "groebner";
    action = [&] { return cmd_groebner(ctx, order); };
  });

  std::string point;
  auto* cl = app.add_subcommand("classify", "singular points and their types");
  add_common(cl, ctx);
  cl->add_option("--point", point, "classify one point of an affine polynomial in x1..xn (comma separated)");
  cl->add_option("--format", ctx.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cl->callback([&] {
    kind = "classify";
    action = [&] { return cmd_classify(ctx, point); };
  });

  unsigned power = 1;
  auto* tj = app.add_subcommand("tjurina", "global Tjurina number");
  add_common(tj, ctx);
  tj->add_option("--power", power, "dimension of R/((f)+J(f)^i) instead")->check(CLI::Range(1, 3));
  tj->callback([&] {
    kind = "tjurina";
    action = [&] { return cmd_tjurina(ctx, power); };
  });

  bool profile = false;
  auto* df = app.add_subcommand("defect", "defect of a hypersurface with isolated singularities");
  add_common(df, ctx);
  df->add_flag("--profile", profile, "add graded restriction maps k = 1..n");
  df->callback([&] {
    kind = "defect";
    action = [&] { return cmd_defect(ctx, profile); };
  });

  bool assert_wh = false, factorial = false;
  auto* ce = app.add_subcommand("certify", "no-defect or factoriality certificate");
  add_common(ce, ctx);
  ce->add_flag("--assert-weighted-homogeneous", assert_wh, "all singular points are weighted homogeneous");
  ce->add_flag("--factorial", factorial, "factoriality certificate for nodal threefolds over F_q");
  ce->callback([&] {
    kind = "certify";
    action = [&] { return cmd_certify(ctx, assert_wh, factorial); };
  });

  std::vector<int> smooth, blowup, singular;
  auto* be = app.add_subcommand("betti", "Betti tables");
  auto* o1 = be->add_option("--smooth", smooth, "N m: smooth degree-m hypersurface in P^N")->expected(2);
  auto* o2 = be->add_option("--blowup", blowup, "n s: blowup of P^n in s points")->expected(2);
  auto* o3 = be->add_option("--singular", singular, "n delta: isolated singularities, defect delta")->expected(2);
  o1->excludes(o2)->excludes(o3);
  o2->excludes(o3);
  be->callback([&] {
    kind = "betti";
    action = [&]() -> Json {
      if (!smooth.empty()) return report::to_json(betti_smooth(smooth[0], smooth[1]));
      if (!blowup.empty()) {
        if (blowup[1] < 0) fail(ErrorCode::InvalidArgument, "s must be non-negative");
        return report::to_json(betti_blowup(blowup[0], static_cast<std::uint64_t>(blowup[1])));
      }
      if (!singular.empty()) {
        if (singular[1] < 0) fail(ErrorCode::InvalidArgument, "delta must be non-negative");
        return report::to_json(betti_singular(singular[0], static_cast<std::uint64_t>(singular[1])));
      }
      fail(ErrorCode::UsageError, "one of --smooth, --blowup, --singular is required");
    };
  });

  auto* co = app.add_subcommand("cone", "defect of the cone over a smooth form");
  add_common(co, ctx);
  co->callback([&] {
    kind = "cone";
    action = [&] { return cmd_cone(ctx); };
  });

  auto* ce2 = app.add_subcommand("census", "finite-field counts and density experiments");
  ce2->require_subcommand(1);
  int cn = 0, cd = 0;
  std::uint64_t cq = 0, samples = 0, seed = 0;
  unsigned jobs = 0;
  bool brute = false, exhaustive = false;
  std::optional<DensityReport> density;
  auto* quad = ce2->add_subcommand("quad", "quadratic forms of rank >= n-1");
  quad->add_option("--n", cn)->required();
  quad->add_option("--q", cq)->required();
  quad->add_flag("--brute", brute, "enumerate all forms");
  quad->callback([&] {
    kind = "census-quad";
    action = [&] {
      Json j = report::to_json(brute ? quad_count_brute(cn, cq) : quad_census_formula(cn, cq));
      j["formula"] = quad_count_formula(cn, cq).get_str();
      return j;
    };
  });
  auto* jets = ce2->add_subcommand("jets", "2-jet census");
  jets->add_option("--n", cn)->required();
  jets->add_option("--r", cq)->required();
  jets->callback([&] {
    kind = "census-jets";
    action = [&] { return report::to_json(jet_census(cn, cq)); };
  });
  auto* dens = ce2->add_subcommand("density", "density of smooth and certified hypersurfaces");
  dens->add_option("--n", cn)->required();
  dens->add_option("--q", cq)->required();
  dens->add_option("--d", cd)->required();
  auto* os = dens->add_option("--samples", samples);
  auto* osd = dens->add_option("--seed", seed);
  auto* oe = dens->add_flag("--exhaustive", exhaustive);
  oe->excludes(os);
  os->needs(osd);
  dens->add_option("--jobs", jobs, "worker threads (default: available cores)");
  dens->add_option("--format", ctx.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  dens->callback([&] {
    kind = "census-density";
    action = [&] {
      if (!exhaustive && samples == 0) fail(ErrorCode::UsageError, "--samples N --seed S or --exhaustive is required");
      DensityOptions opt;
      opt.exhaustive = exhaustive;
      opt.samples = samples;
      opt.seed = seed;
      opt.jobs = jobs;
      density = density_experiment(cn, cq, cd, opt);
      return report::to_json(*density);
    };
  });

  for (auto* sub : {gb, cl, tj, df, ce, co, dens})
    sub->add_option("--out", ctx.out_file, "write the report here instead of standard output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << DEFEKT_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    Json j;
    j["error"] = "UsageError";
    j["message"] = e.what();
    j["exit_code"] = static_cast<int>(kUsage);
    err << j.dump() << "\n";
    return kUsage;
  }

  Json doc;
  try {
    Json result = action();
    Json manifest;
    manifest["subcommand"] = subcommand_path(&app);
    manifest["parameters"] = manifest_params(leaf(&app));
    manifest["seed"] = osd->count() ? Json(seed) : Json(nullptr);
    manifest["tool_version"] = DEFEKT_VERSION;
    manifest["input_digests"] = ctx.digests;
    manifest["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    doc["kind"] = kind;
    doc["status"] = ctx.exit == kInconclusive ? "inconclusive" : "ok";
    doc["manifest"] = manifest;
    doc["report"] = result;
    std::string text;
    if (kind == "classify" && ctx.format == "text" && result.contains("locus")) {
      text = report::locus_table(result["locus"]);
    } else if (kind == "census-density" && ctx.format == "csv") {
      text = report::density_csv(*density);
    } else {
      text = doc.dump(2) + "\n";
    }
    if (!ctx.out_file.empty()) {
      std::ofstream f(ctx.out_file);
      if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + ctx.out_file);
      f << text;
    } else {
      out << text;
    }
  } catch (const Error& e) {
    Json j;
    j["error"] = std::string(e.name());
    j["message"] = e.what();
    int code = e.code() == ErrorCode::UsageError ? kUsage : kError;
    j["exit_code"] = code;
    err << j.dump() << "\n";
    return code;
  } catch (const std::exception& e) {
    Json j;
    j["error"] = "InternalError";
    j["message"] = e.what();
    j["exit_code"] = static_cast<int>(kError);
    err << j.dump() << "\n";
    return kError;
  }
  return ctx.exit;
}

}  // namespace defekt::cli
