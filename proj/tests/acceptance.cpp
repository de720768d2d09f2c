// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "gauduchon/catalog.hpp"
#include "gauduchon/identities.hpp"
#include "gauduchon/locus.hpp"

using namespace gauduchon;

namespace {

constexpr double kTransferTol = 1e-10;
constexpr double kTransferSeconds = 30.0;
constexpr double kDualityTol = 1e-12;
constexpr double kFlatTol = 1e-10;
constexpr double kIdentityResidualTol = 1e-9;
constexpr double kKahlerTorsionTol = 1e-10;
constexpr std::uint64_t kCorpusSeed = 2021;
constexpr int kRandomSpecs = 100;

struct Named {
  std::string name;
  ChernData cd;
};

std::vector<Named> catalog_corpus() {
  std::vector<Named> out;
  for (const std::string& name : builtin_names()) out.push_back({name, chern_data(builtin(name).spec)});
  return out;
}

std::vector<Named> random_corpus() {
  std::vector<Named> out;
  for (const ManifoldSpec& spec : random_family(kCorpusSeed, "nilpotent3", kRandomSpecs))
    out.push_back({spec.name, chern_data(spec)});
  return out;
}

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " -- " << detail << std::endl;
  if (!pass) ++failures;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

const std::vector<std::pair<double, double>> kNamedPoints{{1, 0}, {0, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, 2}, {1.0 / 3.0, -2}};

void transfer(const std::vector<Named>& catalog, const std::vector<Named>& random) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  std::string where = "none";
  int checks = 0;
  for (const auto* group : {&catalog, &random})
    for (const Named& m : *group)
      for (int k = 0; k < 10; ++k) {
        const double r = u(rng), rp = u(rng);
        for (const IdentityReport& rep : check_transfer(m.cd, r, rp, kTransferTol)) {
          ++checks;
          if (rep.residual >= worst) {
            worst = rep.residual;
            where = m.name + " " + rep.id;
          }
        }
      }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, "transfer identities between Gauduchon connections", worst < kTransferTol && seconds < kTransferSeconds,
         std::to_string(checks) + " checks, max residual " + sci(worst) + " (" + where + "), " + sci(seconds) + " s");
}

void duality(const std::vector<Named>& random) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  int mismatched = 0, draws = 0;
  for (const Named& m : random) {
    const GammaTheta2 gt = gamma_theta2(m.cd);
    for (int k = 0; k < 10; ++k) {
      double s = 0.0;
      do s = u(rng);
      while (std::abs(s) < 0.1 || std::abs(s - 1.0) < 0.1 || std::abs(s + 1.0) < 0.1);
      const double r = u(rng);
      const auto [r2, s2] = psi(r, s);
      const ConnectionParams a(r, s), b(r2, s2);
      const CurvatureBlocks ca = curvature_blocks_ts(m.cd, gt, a.t(), a.s());
      const CurvatureBlocks cb = curvature_blocks_ts(m.cd, gt, b.t(), b.s());
      worst = std::max({worst, distance(ca.Theta1, cb.Theta1), distance(ca.Theta2, Complex{-1.0} * cb.Theta2)});
      mismatched += is_kahler_like(m.cd, a).kahler_like != is_kahler_like(m.cd, b).kahler_like;
      ++draws;
    }
  }
  report(2, "Psi duality of curvature blocks", worst < kDualityTol && mismatched == 0,
         std::to_string(draws) + " draws, max block difference " + sci(worst) + ", boolean mismatches " +
             std::to_string(mismatched));
}

void real_oracle(const std::vector<Named>& catalog, const std::vector<Named>& random) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<const Named*> pool;
  for (const Named& m : catalog) pool.push_back(&m);
  for (const Named& m : random) pool.push_back(&m);
  int agree = 0, kl = 0;
  const int draws = 200;
  for (int k = 0; k < draws; ++k) {
    const Named& m = *pool[static_cast<std::size_t>(k) % pool.size()];
    std::pair<double, double> rs{u(rng), u(rng)};
    if (k % 3 == 0) rs = kNamedPoints[static_cast<std::size_t>(k / 3) % kNamedPoints.size()];
    const ConnectionParams p(rs.first, rs.second);
    const bool a = is_kahler_like(m.cd, p).kahler_like;
    agree += a == real_curvature_oracle(m.cd, p).kahler_like;
    kl += a;
  }
  report(3, "obstruction test agrees with the real curvature tensor definition", agree == draws,
         std::to_string(agree) + "/" + std::to_string(draws) + " agree, " + std::to_string(kl) + " Kähler-like draws");
}

void triple(const std::vector<Named>& catalog, const std::vector<Named>& random) {
  int disagree = 0, total = 0;
  for (const auto* group : {&catalog, &random})
    for (const Named& m : *group) {
      const bool a = is_kahler_like(m.cd, ConnectionParams(-1, 0)).kahler_like;
      const bool b = is_kahler_like(m.cd, ConnectionParams(-1, 2)).kahler_like;
      const bool c = is_kahler_like(m.cd, ConnectionParams(1.0 / 3.0, -2)).kahler_like;
      disagree += !(a == b && b == c);
      ++total;
    }
  const ChernData hopf = chern_data(builtin("hopf").spec);
  const bool hopf_all = is_kahler_like(hopf, ConnectionParams(-1, 0)).kahler_like &&
                        is_kahler_like(hopf, ConnectionParams(-1, 2)).kahler_like &&
                        is_kahler_like(hopf, ConnectionParams(1.0 / 3.0, -2)).kahler_like;
  const double flat = gauduchon_curvature(hopf, -1.0).max_norm();
  report(4, "Strominger triple booleans agree", disagree == 0 && hopf_all && flat < kFlatTol,
         std::to_string(total) + " specs, disagreements " + std::to_string(disagree) + ", hopf triple " +
             (hopf_all ? "true" : "false") + ", hopf Strominger curvature " + sci(flat));
}

void locus_bounds(const std::vector<Named>& catalog, const std::vector<Named>& random) {
  int checked = 0, violations = 0;
  std::string first;
  for (const auto* group : {&catalog, &random})
    for (const Named& m : *group) {
      if (torsion_norm(m.cd) < kKahlerTorsionTol) continue;
      ++checked;
      const LocusReport rep = full_locus(m.cd);
      bool bad = rep.entire_line || rep.line_roots.size() > 1 || rep.entire_plane || !rep.branches.empty() ||
                 !rep.plane_solved;
      for (std::size_t a = 0; a < rep.plane_points.size(); ++a)
        for (std::size_t b = a + 1; b < rep.plane_points.size(); ++b) {
          const PlanePoint &p = rep.plane_points[a], &q = rep.plane_points[b];
          bad = bad || !is_exceptional_pair(p.r, p.s, q.r, q.s);
        }
      if (bad) {
        ++violations;
        if (first.empty()) first = m.name;
      }
    }
  const LocusReport iw = full_locus(chern_data(builtin("iwasawa").spec));
  const bool iwasawa_ok = !iw.entire_line && iw.line_roots.size() == 1 && std::abs(iw.line_roots[0].r - 1.0) < 1e-9;
  report(5, "Gauduchon line has at most one Kähler-like point; plane pairs are exceptional",
         violations == 0 && iwasawa_ok,
         std::to_string(checked) + " non-Kähler specs, violations " + std::to_string(violations) +
             (first.empty() ? "" : " (first " + first + ")") + ", Iwasawa line locus " +
             (iwasawa_ok ? "{1}" : "not {1}"));
}

void conditional_suite() {
  int applied = 0, failed = 0, missing = 0;
  double worst = 0.0;
  auto take = [&](const std::vector<IdentityReport>& reps, bool must_apply) {
    for (const IdentityReport& rep : reps) {
      if (!rep.applicable) {
        missing += must_apply;
        continue;
      }
      ++applied;
      worst = std::max(worst, rep.residual);
      failed += !rep.pass;
    }
  };
  auto site = [&](const ChernData& cd, double r, bool gauduchon_del) {
    if (gauduchon_del) take(check_gauduchon_del(cd, r, kIdentityResidualTol), true);
    take(check_gauduchon_dbar(cd, r, kIdentityResidualTol), true);
    take({check_ddbar_omega(cd, r, kIdentityResidualTol)}, true);
  };

  for (const char* name : {"torus2", "torus3"}) {
    const ChernData cd = chern_data(builtin(name).spec);
    for (double r : {-1.0, 0.0, 1.0 / 3.0, 0.5, 2.0}) site(cd, r, true);
    for (const auto& [r, s] : kNamedPoints) take(check_plane(cd, r, s, kIdentityResidualTol), true);
    take(check_plane(cd, 0.7, -1.3, kIdentityResidualTol), true);
    take(check_strominger_triple(cd, kIdentityResidualTol), true);
  }
  const ChernData iwasawa = chern_data(builtin("iwasawa").spec);
  site(iwasawa, 1.0, false);
  take(check_plane(iwasawa, 1.0, 0.0, kIdentityResidualTol), true);

  const ChernData hopf = chern_data(builtin("hopf").spec);
  site(hopf, -1.0, true);
  for (const auto& [r, s] : std::vector<std::pair<double, double>>{{-1, 0}, {-1, 2}, {1.0 / 3.0, -2}})
    take(check_plane(hopf, r, s, kIdentityResidualTol), true);
  take(check_strominger_triple(hopf, kIdentityResidualTol), true);

  report(6, "conditional identities hold where their hypotheses do", failed == 0 && missing == 0,
         std::to_string(applied) + " applicable checks, failures " + std::to_string(failed) + ", expected but not applicable " +
             std::to_string(missing) + ", max residual " + sci(worst));
}

void half_rigidity(const std::vector<Named>& catalog, const std::vector<Named>& random) {
  std::vector<ChernData> corpus;
  for (const auto* group : {&catalog, &random})
    for (const Named& m : *group) corpus.push_back(m.cd);
  for (const ManifoldSpec& spec : random_family(kCorpusSeed, "metric_perturbed", 30)) corpus.push_back(chern_data(spec));
  int kl = 0, violations = 0;
  for (const ChernData& cd : corpus) {
    if (!is_kahler_like(cd, ConnectionParams::gauduchon(0.5)).kahler_like) continue;
    ++kl;
    violations += torsion_norm(cd) >= kKahlerTorsionTol;
  }
  report(7, "D^{1/2} Kähler-like only on Kähler metrics", violations == 0,
         std::to_string(corpus.size()) + " specs, " + std::to_string(kl) + " Kähler-like at r = 1/2, violations " +
             std::to_string(violations));
}

void rescaling() {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<ManifoldSpec> specs;
  for (const std::string& name : builtin_names()) specs.push_back(builtin(name).spec);
  for (const ManifoldSpec& spec : random_family(kCorpusSeed, "nilpotent3", 30)) specs.push_back(spec);
  int changed = 0, points = 0, kl = 0;
  for (const ManifoldSpec& spec : specs) {
    const ChernData base = chern_data(spec);
    std::vector<ChernData> scaled{chern_data(rescaled(spec, 0.25)), chern_data(rescaled(spec, 4.0))};
    for (int k = 0; k < 20; ++k) {
      std::pair<double, double> rs{u(rng), u(rng)};
      if (k < static_cast<int>(kNamedPoints.size())) rs = kNamedPoints[static_cast<std::size_t>(k)];
      const ConnectionParams p(rs.first, rs.second);
      const bool b = is_kahler_like(base, p).kahler_like;
      kl += b;
      for (const ChernData& cd : scaled) changed += is_kahler_like(cd, p).kahler_like != b;
      ++points;
    }
  }
  report(8, "Kähler-like booleans invariant under g -> c g, c in {0.25, 4}", changed == 0,
         std::to_string(points) + " points, " + std::to_string(kl) + " Kähler-like, changed " + std::to_string(changed));
}

void determinism() {
  const std::string exe = GAUDUCHON_LAB_EXE;
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> outputs;
  std::vector<int> codes;
  for (int k = 0; k < 2; ++k) {
    const auto path = dir / ("gauduchon_verify_" + std::to_string(k) + ".json");
    const std::string cmd = exe + " verify --random nilpotent3 --seed 5 --count 20 --out " + path.string();
    const int raw = std::system(cmd.c_str());
    codes.push_back(WIFEXITED(raw) ? WEXITSTATUS(raw) : -1);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    outputs.push_back(buf.str());
    std::filesystem::remove(path);
  }
  const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
  report(9, "verify reports are byte-identical across runs", same,
         std::to_string(outputs[0].size()) + " bytes, exit codes " + std::to_string(codes[0]) + " and " +
             std::to_string(codes[1]));
}

}  // namespace

int main() {
  const std::vector<Named> catalog = catalog_corpus();
  const std::vector<Named> random = random_corpus();
  transfer(catalog, random);
  duality(random);
  real_oracle(catalog, random);
  triple(catalog, random);
  locus_bounds(catalog, random);
  conditional_suite();
  half_rigidity(catalog, random);
  rescaling();
  determinism();
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
