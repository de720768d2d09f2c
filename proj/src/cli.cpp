#include "gauduchon/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "gauduchon/catalog.hpp"
#include "gauduchon/identities.hpp"
#include "gauduchon/locus.hpp"

namespace gauduchon {

namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string catalog;
  std::string spec_path;
  std::string random_family;
  std::string base;
  std::vector<std::string> connections;
  std::vector<double> gauduchon;
  std::string r_range;
  std::string s_range;
  std::optional<double> tol;
  std::string format;
  std::string out_path;
  std::uint64_t seed = 0;
  int count = 1;
};

std::string num12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json matrix_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (int a = 0; a < m.rows(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < m.cols(); ++b) row.push_back(complex_json(m(a, b)));
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError(what + ": not a number: \"" + text + "\"");
  }
  if (used != text.size() || !std::isfinite(v)) throw InputError(what + ": not a finite number: \"" + text + "\"");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// A:B:STEP, inclusive of B up to rounding; values are A + k STEP rather than accumulated.
std::vector<double> parse_range(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InputError(what + ": expected A:B:STEP, got \"" + text + "\"");
  const double a = parse_double(parts[0], what), b = parse_double(parts[1], what), step = parse_double(parts[2], what);
  if (!(step > 0.0)) throw InputError(what + ": step must be positive");
  if (b < a) throw InputError(what + ": empty grid (B < A)");
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 1000000) throw InputError(what + ": grid too large");
  std::vector<double> out;
  for (long k = 0; k < count; ++k) out.push_back(a + static_cast<double>(k) * step);
  return out;
}

std::pair<double, double> parse_connection(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw InputError("--connection: expected R,S, got \"" + text + "\"");
  return {parse_double(parts[0], "--connection"), parse_double(parts[1], "--connection")};
}

double resolve_tol(const Options& opt, double fallback) {
  double tol = fallback;
  if (const char* env = std::getenv("GAUDUCHON_LAB_TOL"); env && *env) tol = parse_double(env, "GAUDUCHON_LAB_TOL");
  if (opt.tol) tol = *opt.tol;
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InputError("tolerance must be a positive number");
  return tol;
}

std::string resolve_format(const Options& opt, const std::string& fallback) {
  const std::string f = opt.format.empty() ? fallback : opt.format;
  if (f != "json" && f != "csv" && f != "md") throw InputError("--format must be json, csv or md");
  return f;
}

std::vector<ManifoldSpec> resolve_specs(const Options& opt, bool allow_none) {
  const int sources = !opt.catalog.empty() + !opt.spec_path.empty() + !opt.random_family.empty();
  if (sources > 1) throw InputError("use only one of --catalog, --spec, --random");
  if (sources == 0) {
    if (allow_none) return {};
    throw InputError("an input is required: --catalog NAME, --spec PATH or --random FAMILY");
  }
  if (!opt.catalog.empty()) return {builtin(opt.catalog).spec};
  if (!opt.spec_path.empty()) return {load_spec_file(opt.spec_path)};
  if (opt.count < 1) throw InputError("--count must be at least 1");
  return random_family(opt.seed, opt.random_family, opt.count, opt.base);
}

std::vector<std::pair<double, double>> resolve_points(const Options& opt) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : opt.connections) pts.push_back(parse_connection(c));
  for (double r : opt.gauduchon) pts.emplace_back(r, 0.0);
  if (pts.empty()) pts = {{1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}, {1.0 / 3.0, 0.0}, {0.0, 1.0}, {-1.0, 2.0}, {1.0 / 3.0, -2.0}};
  for (const auto& [r, s] : pts) ConnectionParams(r, s);  // rejects invalid pairs up front
  return pts;
}

struct Row {
  double r, s, t;
  Obstructions obs;
  bool kahler_like;
};

Row evaluate(const ChernData& cd, double r, double s, double tol) {
  Obstructions obs = obstructions(cd, ConnectionParams(r, s));
  const bool kl = obs.max_norm() < tol;
  return {r, s, 1.0 - r + r * s, std::move(obs), kl};
}

Json row_json(const Row& row) {
  Json j;
  j["r"] = row.r;
  j["s"] = row.s;
  j["t"] = row.t;
  j["norm_O2"] = row.obs.norm_O2;
  j["norm_O20"] = row.obs.norm_O20;
  j["norm_O11"] = row.obs.norm_O11;
  j["kahler_like"] = row.kahler_like;
  return j;
}

const char* kRowHeader = "r,s,t,norm_O2,norm_O20,norm_O11,kahler_like";

std::string row_csv(const Row& row) {
  return num12(row.r) + "," + num12(row.s) + "," + num12(row.t) + "," + num12(row.obs.norm_O2) + "," +
         num12(row.obs.norm_O20) + "," + num12(row.obs.norm_O11) + "," + (row.kahler_like ? "true" : "false");
}

std::string row_md(const Row& row) {
  return "| " + num12(row.r) + " | " + num12(row.s) + " | " + num12(row.t) + " | " + num12(row.obs.norm_O2) + " | " +
         num12(row.obs.norm_O20) + " | " + num12(row.obs.norm_O11) + " | " + (row.kahler_like ? "yes" : "no") + " |\n";
}

const char* kRowMdHeader =
    "| r | s | t | norm_O2 | norm_O20 | norm_O11 | Kähler-like |\n|---|---|---|---|---|---|---|\n";

Json one_or_many(std::vector<Json> items) {
  if (items.size() == 1) return std::move(items.front());
  Json arr = Json::array();
  for (auto& item : items) arr.push_back(std::move(item));
  return arr;
}

std::string analyze(const Options& opt, const std::string& format) {
  const double tol = resolve_tol(opt, kKahlerLikeTol);
  const auto specs = resolve_specs(opt, false);
  const auto points = resolve_points(opt);
  std::vector<Json> docs;
  std::string text;
  if (format == "csv") text = std::string("manifold,") + kRowHeader + "\n";
  for (const ManifoldSpec& spec : specs) {
    const ChernData cd = chern_data(spec);
    const TorsionInvariants inv = torsion_invariants(cd);
    std::vector<Row> rows;
    for (const auto& [r, s] : points) rows.push_back(evaluate(cd, r, s, tol));

    if (format == "json") {
      Json doc;
      doc["manifold"] = spec.name;
      doc["n"] = spec.n;
      Json torsion = Json::array();
      for (int k = 0; k < cd.n; ++k)
        for (int i = 0; i < cd.n; ++i)
          for (int j = i + 1; j < cd.n; ++j)
            if (cd.T(k, i, j) != Complex{})
              torsion.push_back(Json{{"k", k + 1}, {"i", i + 1}, {"j", j + 1}, {"value", complex_json(cd.T(k, i, j))}});
      doc["torsion"] = std::move(torsion);
      Json eta = Json::array();
      for (const Complex& e : inv.eta) eta.push_back(complex_json(e));
      doc["eta"] = std::move(eta);
      doc["norm_T2"] = inv.normT2;
      doc["norm_eta2"] = inv.normEta2;
      doc["A"] = matrix_json(inv.A);
      doc["B"] = matrix_json(inv.B);
      doc["phi"] = matrix_json(inv.phi);
      Json conns = Json::array();
      for (const Row& row : rows) conns.push_back(row_json(row));
      doc["connections"] = std::move(conns);
      docs.push_back(std::move(doc));
    } else if (format == "csv") {
      for (const Row& row : rows) text += spec.name + "," + row_csv(row) + "\n";
    } else {
      text += "# " + spec.name + "\n\n";
      text += "- n = " + std::to_string(spec.n) + "\n";
      text += "- |T|^2 = " + num12(inv.normT2) + "\n";
      text += "- |eta|^2 = " + num12(inv.normEta2) + "\n\n";
      text += kRowMdHeader;
      for (const Row& row : rows) text += row_md(row);
      text += "\n";
    }
  }
  if (format == "json") return one_or_many(std::move(docs)).dump(2) + "\n";
  return text;
}

std::string scan(const Options& opt, const std::string& format) {
  const double tol = resolve_tol(opt, kKahlerLikeTol);
  const auto specs = resolve_specs(opt, false);
  if (specs.size() != 1) throw InputError("scan takes a single manifold");
  if (opt.r_range.empty()) throw InputError("scan requires --r-range A:B:STEP");
  const auto rs = parse_range(opt.r_range, "--r-range");
  const auto ss = opt.s_range.empty() ? std::vector<double>{0.0} : parse_range(opt.s_range, "--s-range");
  const ChernData cd = chern_data(specs.front());
  const GammaTheta2 gt = gamma_theta2(cd);

  std::vector<Row> rows;
  for (double r : rs)
    for (double s : ss) {
      const double t = (s == 1.0) ? 1.0 : 1.0 - r + r * s;
      Obstructions obs = obstructions_ts(cd, gt, t, s);
      const bool kl = obs.max_norm() < tol;
      rows.push_back({r, s, 1.0 - r + r * s, std::move(obs), kl});
    }

  if (format == "json") {
    Json doc;
    doc["manifold"] = specs.front().name;
    Json arr = Json::array();
    for (const Row& row : rows) arr.push_back(row_json(row));
    doc["rows"] = std::move(arr);
    return doc.dump(2) + "\n";
  }
  std::string text = format == "csv" ? std::string(kRowHeader) + "\n" : "# " + specs.front().name + "\n\n" + kRowMdHeader;
  for (const Row& row : rows) text += format == "csv" ? row_csv(row) + "\n" : row_md(row);
  return text;
}

Json point_json(const PlanePoint& p) { return Json{{"r", p.r}, {"s", p.s}, {"t", p.t}, {"residual", p.residual}}; }

std::string locus(const Options& opt, const std::string& format) {
  const double tol = resolve_tol(opt, kKahlerLikeTol);
  const auto specs = resolve_specs(opt, false);
  std::vector<Json> docs;
  std::string text = format == "csv" ? "manifold,kind,r,s,t,residual\n" : "";
  for (const ManifoldSpec& spec : specs) {
    const LocusReport rep = full_locus(chern_data(spec), tol);
    if (format == "json") {
      Json doc;
      doc["manifold"] = spec.name;
      if (rep.entire_line) {
        doc["line_roots"] = "all";
      } else {
        Json roots = Json::array(), res = Json::array();
        for (const LineRoot& root : rep.line_roots) {
          roots.push_back(root.r);
          res.push_back(root.residual);
        }
        doc["line_roots"] = std::move(roots);
        doc["line_residuals"] = std::move(res);
      }
      doc["plane_solved"] = rep.plane_solved;
      if (rep.entire_plane) {
        doc["plane"] = "all";
      } else {
        Json plane;
        Json pts = Json::array();
        for (const PlanePoint& p : rep.plane_points) pts.push_back(point_json(p));
        plane["points"] = std::move(pts);
        Json branches = Json::array();
        for (const PlaneBranch& b : rep.branches) {
          Json bj;
          bj["description"] = b.description;
          bj["s"] = b.s_value ? Json(*b.s_value) : Json(nullptr);
          Json samples = Json::array();
          for (const PlanePoint& p : b.samples) samples.push_back(point_json(p));
          bj["samples"] = std::move(samples);
          branches.push_back(std::move(bj));
        }
        plane["branches"] = std::move(branches);
        doc["plane"] = std::move(plane);
      }
      doc["notes"] = rep.notes;
      docs.push_back(std::move(doc));
    } else if (format == "csv") {
      if (rep.entire_line) text += spec.name + ",line_all,,0,,\n";
      for (const LineRoot& root : rep.line_roots)
        text += spec.name + ",line," + num12(root.r) + ",0," + num12(1.0 - root.r) + "," + num12(root.residual) + "\n";
      if (rep.entire_plane) text += spec.name + ",plane_all,,,,\n";
      for (const PlanePoint& p : rep.plane_points)
        text += spec.name + ",point," + num12(p.r) + "," + num12(p.s) + "," + num12(p.t) + "," + num12(p.residual) + "\n";
      for (const PlaneBranch& b : rep.branches)
        for (const PlanePoint& p : b.samples)
          text += spec.name + ",branch," + num12(p.r) + "," + num12(p.s) + "," + num12(p.t) + "," + num12(p.residual) + "\n";
    } else {
      text += "# " + spec.name + "\n\n";
      if (rep.entire_line) {
        text += "- Gauduchon line: every r\n";
      } else {
        text += "- Gauduchon line roots:";
        if (rep.line_roots.empty()) text += " none";
        for (const LineRoot& root : rep.line_roots) text += " " + num12(root.r);
        text += "\n";
      }
      if (rep.entire_plane) {
        text += "- plane: every (r,s)\n";
      } else {
        text += "- plane points:";
        if (rep.plane_points.empty()) text += " none";
        for (const PlanePoint& p : rep.plane_points) text += " (" + num12(p.r) + ", " + num12(p.s) + ")";
        text += "\n";
        for (const PlaneBranch& b : rep.branches) text += "- branch: " + b.description + "\n";
      }
      for (const std::string& note : rep.notes) text += "- note: " + note + "\n";
      text += "\n";
    }
  }
  if (format == "json") return one_or_many(std::move(docs)).dump(2) + "\n";
  return text;
}

std::string verify(const Options& opt, const std::string& format, bool& failed) {
  const double tol = resolve_tol(opt, kIdentityTol);
  const auto specs = resolve_specs(opt, false);
  std::vector<Json> docs;
  std::string text = format == "csv" ? "manifold,id,at,applicable,residual,pass\n" : "";
  for (const ManifoldSpec& spec : specs) {
    const auto reports = verify_suite(chern_data(spec), tol);
    int applicable = 0, passed = 0;
    for (const IdentityReport& rep : reports) {
      applicable += rep.applicable;
      passed += rep.applicable && rep.pass;
    }
    failed = failed || passed != applicable;
    if (format == "json") {
      Json doc;
      doc["manifold"] = spec.name;
      doc["summary"] = Json{{"checks", reports.size()},
                            {"applicable", applicable},
                            {"passed", passed},
                            {"failed", applicable - passed},
                            {"not_applicable", static_cast<int>(reports.size()) - applicable}};
      doc["reports"] = Json::parse(reports_to_json(reports, -1));
      docs.push_back(std::move(doc));
    } else if (format == "csv") {
      for (const IdentityReport& rep : reports)
        text += spec.name + "," + rep.id + ",\"" + rep.at + "\"," + (rep.applicable ? "true" : "false") + "," +
                (rep.applicable ? num12(rep.residual) : "") + "," + (rep.applicable ? (rep.pass ? "true" : "false") : "") +
                "\n";
    } else {
      text += "# " + spec.name + "\n\n";
      text += std::to_string(passed) + " of " + std::to_string(applicable) + " applicable checks pass; " +
              std::to_string(reports.size() - static_cast<std::size_t>(applicable)) + " not applicable.\n\n";
      text += "| id | at | residual | result |\n|---|---|---|---|\n";
      for (const IdentityReport& rep : reports)
        text += "| " + rep.id + " | " + rep.at + " | " + (rep.applicable ? num12(rep.residual) : "") + " | " +
                (rep.applicable ? (rep.pass ? "pass" : "FAIL") : "n/a") + " |\n";
      text += "\n";
    }
  }
  if (format == "json") return one_or_many(std::move(docs)).dump(2) + "\n";
  return text;
}

std::string catalog(const Options& opt, const std::string& format) {
  const auto specs = resolve_specs(opt, true);
  if (!specs.empty()) {
    if (format != "json") throw InputError("manifold export is JSON only");
    std::vector<Json> docs;
    for (const ManifoldSpec& spec : specs) docs.push_back(Json::parse(dump_spec(spec)));
    return one_or_many(std::move(docs)).dump(2) + "\n";
  }
  std::string text = format == "csv" ? "name,n\n" : format == "md" ? "| name | n | description |\n|---|---|---|\n" : "";
  Json arr = Json::array();
  for (const std::string& name : builtin_names()) {
    const CatalogEntry entry = builtin(name);
    if (format == "json") {
      Json j;
      j["name"] = name;
      j["n"] = entry.spec.n;
      j["provenance"] = entry.provenance;
      j["expected"] = entry.expected;
      arr.push_back(std::move(j));
    } else if (format == "csv") {
      text += name + "," + std::to_string(entry.spec.n) + "\n";
    } else {
      text += "| " + name + " | " + std::to_string(entry.spec.n) + " | " + entry.provenance + " |\n";
    }
  }
  return format == "json" ? arr.dump(2) + "\n" : text;
}

void add_source(CLI::App* cmd, Options& opt) {
  cmd->add_option("--catalog", opt.catalog, "built-in manifold name");
  cmd->add_option("--spec", opt.spec_path, "manifold JSON file");
  cmd->add_option("--random", opt.random_family, "seeded family: nilpotent3 or metric_perturbed");
  cmd->add_option("--base", opt.base, "catalog entry perturbed by metric_perturbed (default: cycle)");
  cmd->add_option("--seed", opt.seed, "seed for --random");
  cmd->add_option("--count", opt.count, "number of --random specs");
}

void add_output(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "json, csv or md");
  cmd->add_option("--out", opt.out_path, "write the report here instead of stdout");
}

void add_tol(CLI::App* cmd, Options& opt) {
  cmd->add_option("--tol", opt.tol, "tolerance (GAUDUCHON_LAB_TOL replaces the default)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Canonical Hermitian connections on homogeneous Hermitian manifolds", "gauduchon-lab"};
  app.require_subcommand(1);

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "torsion invariants and Kähler-like tests at chosen connections");
  add_source(analyze_cmd, opt);
  add_output(analyze_cmd, opt);
  add_tol(analyze_cmd, opt);
  analyze_cmd->add_option("--connection", opt.connections, "R,S (repeatable)");
  analyze_cmd->add_option("--gauduchon", opt.gauduchon, "R, shorthand for --connection R,0 (repeatable)");

  CLI::App* scan_cmd = app.add_subcommand("scan", "obstruction norms over an (r,s) grid");
  add_source(scan_cmd, opt);
  add_output(scan_cmd, opt);
  add_tol(scan_cmd, opt);
  scan_cmd->add_option("--r-range", opt.r_range, "A:B:STEP");
  scan_cmd->add_option("--s-range", opt.s_range, "A:B:STEP (default: s = 0 only)");

  CLI::App* locus_cmd = app.add_subcommand("locus", "Kähler-like points on the Gauduchon line and the plane");
  add_source(locus_cmd, opt);
  add_output(locus_cmd, opt);
  add_tol(locus_cmd, opt);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the identity suite");
  add_source(verify_cmd, opt);
  add_output(verify_cmd, opt);
  add_tol(verify_cmd, opt);

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "list built-in manifolds or export one as JSON");
  add_source(catalog_cmd, opt);
  add_output(catalog_cmd, opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    std::string report;
    bool failed = false;
    if (analyze_cmd->parsed())
      report = analyze(opt, resolve_format(opt, "json"));
    else if (scan_cmd->parsed())
      report = scan(opt, resolve_format(opt, "csv"));
    else if (locus_cmd->parsed())
      report = locus(opt, resolve_format(opt, "json"));
    else if (verify_cmd->parsed())
      report = verify(opt, resolve_format(opt, "json"), failed);
    else
      report = catalog(opt, resolve_format(opt, "json"));

    if (opt.out_path.empty()) {
      out << report;
    } else {
      std::ofstream file(opt.out_path, std::ios::binary);
      if (!file) throw InputError("cannot write " + opt.out_path);
      file << report;
    }
    if (failed) {
      err << "verification failed: at least one applicable identity check exceeded the tolerance\n";
      return kExitVerificationFailed;
    }
    return kExitOk;
  } catch (const SpecError& e) {
    err << "error: invalid manifold: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace gauduchon
