// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "defekt/census.hh"
#include "support.hh"

using namespace defekt;
using namespace defekt::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string read_poly(const std::string& name) {
  std::ifstream in(std::string(DEFEKT_TEST_DATA) + "/" + name);
  std::string text, line;
  while (std::getline(in, line)) text += line.substr(0, line.find('#')) + " ";
  return text;
}

std::string power_sum(int from, int to, int m) {
  std::string s;
  for (int i = from; i <= to; ++i) s += (s.empty() ? "" : "+") + ("x" + std::to_string(i)) + "^" + std::to_string(m);
  return s;
}

// Rank over Q by plain Gaussian elimination.
std::size_t dense_rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// --- 1 ----------------------------------------------------------------------

Outcome fermat_cones() {
  Outcome o;
  for (auto [n, m] : {std::pair{3, 3}, {3, 4}, {4, 3}}) {
    auto F = P(power_sum(1, n, m), qq(), n + 1);
    auto t0 = Clock::now();
    auto tau = global_tjurina(F).tau;
    double secs = seconds_since(t0);
    // Oracle: exponent vectors below m-1 in each of the n chart variables.
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(m - 1);
    char buf[96];
    std::snprintf(buf, sizeof buf, "(n,m)=(%d,%d) tau=%llu oracle=%llu %.2fs", n, m,
                  static_cast<unsigned long long>(tau), static_cast<unsigned long long>(count), secs);
    o.check(tau == count && secs < 10, buf);
    if (tau == count && secs < 10) o.note(buf);
  }
  return o;
}

// --- 2 ----------------------------------------------------------------------

Outcome ak_recognition() {
  Outcome o;
  auto t0 = Clock::now();
  int good = 0;
  for (int n : {3, 4})
    for (int k = 1; k <= 5; ++k) {
      std::string s = "x1^" + std::to_string(k + 1) + "+" + power_sum(2, n, 2);
      auto c = classify_point(P(s, qq(), n, 1), std::vector<mpq_class>(n, 0));
      bool ok = c.type == SingularityType::A && c.k == static_cast<unsigned>(k) && c.tau == static_cast<std::uint64_t>(k);
      o.check(ok, s + " -> " + c.tag());
      good += ok;
    }
  double secs = seconds_since(t0);
  o.check(secs < 5, "took " + std::to_string(secs) + "s");
  o.note(std::to_string(good) + "/10 exact, " + std::to_string(secs).substr(0, 5) + "s");
  return o;
}

// --- 3 ----------------------------------------------------------------------

Outcome cone_defects() {
  Outcome o;
  for (int m : {3, 4, 5}) {
    auto r = cone_defect(P(power_sum(1, 3, m), qq(), 3, 1));
    std::uint64_t want = static_cast<std::uint64_t>((m - 1) * (m - 2));
    o.check(r.delta == want, "m=" + std::to_string(m) + " delta=" + std::to_string(r.delta));
    if (r.delta == want) o.note("m=" + std::to_string(m) + ": " + std::to_string(r.delta));
  }
  return o;
}

// --- 4 ----------------------------------------------------------------------

Outcome nodal_defects() {
  Outcome o;
  auto t0 = Clock::now();
  auto F = P(read_poly("nine_node_quartic.txt"), qq(), 5);
  auto loc = singular_locus(F);
  bool nodes = loc.points.size() == 9 && loc.fully_resolved();
  for (auto& p : loc.points) nodes = nodes && p.cls.tag() == "A_1" && p.degree == 1;
  o.check(nodes, "expected 9 rational A_1 points");
  auto r = nodal_defect(F, loc);
  o.check(r.delta == 1, "nine-node delta=" + std::to_string(r.delta));

  // Oracle: the 9 x 35 evaluation matrix of cubic monomials, built from
  // scratch and ranked over Q.
  std::vector<std::array<int, 5>> cubics;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; a + b + c <= 3; ++c)
        for (int d = 0; a + b + c + d <= 3; ++d) cubics.push_back({a, b, c, d, 3 - a - b - c - d});
  std::vector<std::vector<mpq_class>> M;
  for (auto& p : loc.points) {
    std::vector<mpq_class> row;
    for (auto& e : cubics) {
      mpq_class v = 1;
      for (int i = 0; i < 5; ++i)
        for (int t = 0; t < e[i]; ++t) v *= p.coords[i];
      row.push_back(v);
    }
    M.push_back(row);
  }
  auto rank = dense_rank(M);
  o.check(cubics.size() == 35 && rank == 8 && r.rank == rank, "oracle rank " + std::to_string(rank));

  auto cubic = P(read_poly("node_cubic.txt"), qq(), 5);
  auto rc = nodal_defect(cubic);
  o.check(rc.delta == 0, "node cubic delta=" + std::to_string(rc.delta));
  double secs = seconds_since(t0);
  o.check(secs < 60, "took " + std::to_string(secs) + "s");
  char buf[128];
  std::snprintf(buf, sizeof buf, "nine-node delta=%llu (rank %llu/9, oracle %zu), node cubic delta=%llu, %.1fs",
                static_cast<unsigned long long>(r.delta), static_cast<unsigned long long>(r.rank), rank,
                static_cast<unsigned long long>(rc.delta), secs);
  o.note(buf);
  return o;
}

// --- 5 ----------------------------------------------------------------------

Outcome quad_census() {
  Outcome o;
  auto t0 = Clock::now();
  for (auto [n, q] : {std::pair{2, 3ull}, {3, 3ull}, {4, 3ull}, {2, 5ull}, {3, 5ull}, {2, 7ull}}) {
    auto brute = quad_count_brute(n, q);
    auto formula = quad_count_formula(n, q);
    std::string tag = "(" + std::to_string(n) + "," + std::to_string(q) + ")=" + brute.count.get_str();
    o.check(brute.count == formula, tag + " vs formula " + formula.get_str());
    o.check(quad_sandwich(n, q, brute.count), tag + " outside sandwich");
    o.note(tag);
  }
  double secs = seconds_since(t0);
  o.check(secs < 120, "took " + std::to_string(secs) + "s");
  return o;
}

// --- 6 ----------------------------------------------------------------------

Outcome jets() {
  Outcome o;
  auto t0 = Clock::now();
  auto a = jet_census(2, 3);
  auto b = jet_census(3, 3);
  o.check(a.probability == mpq_class(728, 729) && a.closed_form == a.probability, "n=2: " + a.probability.get_str());
  o.check(b.probability == mpq_class(2186, 2187) && b.closed_form == b.probability, "n=3: " + b.probability.get_str());
  o.check(a.sandwich && b.sandwich, "sandwich");
  double secs = seconds_since(t0);
  o.check(secs < 60, "took " + std::to_string(secs) + "s");
  o.note("P(2,3)=" + a.probability.get_str() + ", P(3,3)=" + b.probability.get_str());
  return o;
}

// --- 7 ----------------------------------------------------------------------

Outcome smooth_density() {
  Outcome o;
  auto t0 = Clock::now();
  const mpq_class ref = zeta_inverse(2, 3, 3);
  DensityOptions ex;
  ex.exhaustive = true;
  auto e = density_experiment(2, 3, 3, ex);
  mpq_class exact(static_cast<unsigned long>(e.tallies.smooth), static_cast<unsigned long>(e.tallies.total));
  exact.canonicalize();
  o.check(e.tallies.total == 59049, "exhaustive total " + std::to_string(e.tallies.total));

  DensityOptions mc;
  mc.samples = 100000;
  mc.seed = 42;
  auto s = density_experiment(2, 3, 6, mc);
  double est = static_cast<double>(s.tallies.smooth) / static_cast<double>(s.tallies.total);
  double gap = std::fabs(est - ref.get_d());
  o.check(gap <= 0.02, "d=6 estimate off by " + std::to_string(gap));
  double secs = seconds_since(t0);
  o.check(secs < 600, "took " + std::to_string(secs) + "s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "d=3 exhaustive smooth=%s (%.4f) vs 416/729 (%.4f); d=6 N=1e5: %.4f, |gap|=%.4f, %.0fs",
                exact.get_str().c_str(), exact.get_d(), ref.get_d(), est, gap, secs);
  o.note(buf);
  return o;
}

// --- 8 ----------------------------------------------------------------------

Outcome certified_density() {
  Outcome o;
  auto t0 = Clock::now();
  const double ref = zeta_inverse(3, 3, 6, ZetaConvention::truncated).get_d();
  for (int d : {3, 4, 5}) {
    DensityOptions opt;
    opt.samples = 10000;
    opt.seed = 42;
    auto r = density_experiment(3, 3, d, opt);
    const auto& t = r.tallies;
    double frac = static_cast<double>(t.certified) / static_cast<double>(t.total);
    double sigma = wilson(t.certified, t.total, 1.0).half_width();
    bool ok = frac >= ref - 3 * sigma;
    char buf[128];
    std::snprintf(buf, sizeof buf, "d=%d: %.4f >= %.4f - 3*%.4f", d, frac, ref, sigma);
    o.check(ok, std::string(buf) + " fails");
    if (ok) o.note(buf);
  }
  double secs = seconds_since(t0);
  o.check(secs < 1800, "took " + std::to_string(secs) + "s");
  return o;
}

// --- 9 ----------------------------------------------------------------------

Outcome properties() {
  Outcome o;
  for (auto& run : all_properties(20261015)) {
    std::string tag = run.name + " " + std::to_string(run.cases - run.failures) + "/" + std::to_string(run.cases);
    o.check(run.ok(), tag + (run.first_failure.empty() ? "" : " (" + run.first_failure + ")"));
    if (run.ok()) o.note(tag);
  }
  return o;
}

// --- 10 ---------------------------------------------------------------------

Outcome soundness() {
  Outcome o;
  int certified = 0, checked = 0;
  // Cones over smooth plane curves: exact positive defect, must stay
  // inconclusive.
  for (int m : {3, 4, 5}) {
    auto G = P(power_sum(1, 3, m), qq(), 3, 1);
    auto delta = cone_defect(G).delta;
    auto cert = certify_no_defect(P(power_sum(1, 3, m), qq(), 4));
    ++checked;
    o.check(delta > 0 && cert.kind == CertificateKind::Inconclusive, "cone m=" + std::to_string(m) + " " +
                                                                         certificate_name(cert.kind));
  }
  auto cone_file = P(read_poly("cone_cubic.txt"), qq(), 4);
  ++checked;
  o.check(!certify_no_defect(cone_file).is_no_defect(), "cone_cubic.txt certified");

  // Nodal even-n instances: certificate implies delta = 0.
  auto nodal_case = [&](const std::string& text, auto field) {
    auto F = P(text, field, 5);
    auto loc = singular_locus(F);
    auto delta = nodal_defect(F, loc).delta;
    auto cert = certify_no_defect(F, loc);
    ++checked;
    if (cert.is_no_defect()) ++certified;
    o.check(!(cert.is_no_defect() && delta > 0), "certificate with delta=" + std::to_string(delta));
  };
  nodal_case(read_poly("nine_node_quartic.txt"), qq());
  nodal_case(read_poly("nine_node_quartic.txt"), gf(7));
  nodal_case(read_poly("node_cubic.txt"), qq());
  nodal_case(read_poly("node_cubic.txt"), gf(5));
  nodal_case(read_poly("fermat_quartic_threefold.txt"), qq());
  nodal_case("x0^2*(x1^2+x2^2+x3^2+x4^2) + x1^4+x2^4+x3^4+x4^4", qq());

  // Odd-n A_k instance: exact defect is zero by the odd-dimensional lemma,
  // and the cone family is the only positive-defect odd-n source.
  auto a4 = P("x0^3*(x2^2+x3^2) + x1^5 + x2^5 + x3^5", qq(), 4);
  ++checked;
  if (certify_no_defect(a4).is_no_defect()) ++certified;
  o.note(std::to_string(checked) + " instances, " + std::to_string(certified) +
         " certified, none with positive defect; cones inconclusive");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "Tjurina golden values", fermat_cones},
      {2, "A_k recognition", ak_recognition},
      {3, "cone defect", cone_defects},
      {4, "nodal defect", nodal_defects},
      {5, "quadratic-form census", quad_census},
      {6, "jet census", jets},
      {7, "smooth density", smooth_density},
      {8, "certified density lower bound", certified_density},
      {9, "property suites", properties},
      {10, "certificate soundness", soundness},
  };
  int failed = 0;
  for (auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %2d %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed;
}
