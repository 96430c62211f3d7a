#include "taut2/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "taut2/acceptance.hpp"
#include "taut2/cohomology.hpp"
#include "taut2/modforms.hpp"
#include "taut2/motives.hpp"
#include "taut2/pointcount.hpp"
#include "taut2/symchar.hpp"

namespace taut2::cli {

namespace {

using json = nlohmann::json;
using cohomology::HighestWeight;
using motives::MotiveExpr;

enum class Format { json, csv, text };

struct RunConfig {
  std::string cache_dir;
  unsigned jobs = 1;
  std::string format = "json";
  std::string nonvanishing_path;
};

// Exact numbers: integers that fit go out as JSON integers, everything else
// as a decimal or "num/den" string.
json exact(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(z);
  }
  return to_string(z);
}

json exact(const Rational& r) {
  if (denominator(r) == 1) return exact(Integer(numerator(r)));
  return to_string(r);
}

json motive_json(const MotiveExpr& e) {
  json arr = json::array();
  for (const auto& [elem, c] : e.terms()) arr.push_back(json::array({elem.tag(), exact(c)}));
  return arr;
}

json weight_json(const HighestWeight& w) { return json::array({w.l, w.m}); }

struct Record {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  std::string route;
  json evidence = json::object();
  json provenance = json::object();
  // CSV rendering of the main table, if the command has one.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> text;

  json to_json() const {
    return {{"command", command}, {"inputs", inputs},         {"outputs", outputs}, {"route", route},
            {"evidence", evidence}, {"provenance", provenance}, {"version", kVersion}};
  }
};

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Record& rec, Format format, std::ostream& out) {
  switch (format) {
    case Format::json:
      out << rec.to_json().dump(2) << '\n';
      return;
    case Format::csv:
      if (!rec.csv_header.empty()) {
        out << CLI::detail::join(rec.csv_header, ",") << '\n';
        for (const auto& row : rec.csv_rows) out << CLI::detail::join(row, ",") << '\n';
        return;
      }
      out << "key,value\n";
      for (const auto& [k, v] : rec.outputs.items()) {
        std::string s = scalar_text(v);
        if (s.find_first_of(",\"\n") != std::string::npos) {
          std::string quoted = "\"";
          for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
          s = quoted + "\"";
        }
        out << k << ',' << s << '\n';
      }
      return;
    case Format::text:
      out << rec.command;
      if (!rec.route.empty()) out << " [" << rec.route << "]";
      out << '\n';
      if (!rec.text.empty()) {
        for (const auto& line : rec.text) out << "  " << line << '\n';
      } else {
        for (const auto& [k, v] : rec.outputs.items()) out << "  " << k << ": " << scalar_text(v) << '\n';
      }
      return;
  }
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw DomainError("format must be json, csv or text");
}

std::optional<std::filesystem::path> cache_root(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return std::filesystem::path(cfg.cache_dir);
  if (const char* env = std::getenv("TAUT2_CACHE"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

modforms::NonvanishingTable nonvanishing(const RunConfig& cfg) {
  if (cfg.nonvanishing_path.empty()) return {};
  return modforms::NonvanishingTable::load(cfg.nonvanishing_path);
}

pointcount::EnumerateOptions enum_options(const RunConfig& cfg, bool allow_large = false) {
  if (cfg.jobs < 1) throw DomainError("jobs must be at least 1");
  pointcount::EnumerateOptions o;
  o.jobs = cfg.jobs;
  o.allow_large = allow_large;
  return o;
}

json cache_provenance(const std::optional<std::filesystem::path>& dir) {
  return dir ? json(dir->string()) : json(nullptr);
}

// ---- subcommands -----------------------------------------------------------

Record cmd_count(const RunConfig& cfg, const std::string& family_name, std::int64_t q, bool allow_large) {
  const auto family = pointcount::parse_family(family_name);
  const auto dir = cache_root(cfg);
  pointcount::HistogramStore store(dir, enum_options(cfg, allow_large));
  const auto& hist = store.get(family, q);

  Record rec;
  rec.command = "count";
  rec.inputs = {{"family", family_name}, {"q", q}};
  rec.route = store.origin(family, q);
  json classes = json::array();
  rec.csv_header = family == pointcount::Family::elliptic ? std::vector<std::string>{"a1", "num", "den"}
                                                          : std::vector<std::string>{"a1", "a2", "num", "den"};
  for (const auto& [cls, mass] : hist.entries()) {
    json row = {{"a1", cls.a1}, {"mass", exact(mass)}};
    std::vector<std::string> csv{std::to_string(cls.a1)};
    if (cls.a2) {
      row["a2"] = *cls.a2;
      csv.push_back(std::to_string(*cls.a2));
    }
    csv.push_back(to_string(Integer(numerator(mass))));
    csv.push_back(to_string(Integer(denominator(mass))));
    classes.push_back(row);
    rec.csv_rows.push_back(csv);
  }
  rec.outputs = {{"classes", classes},
                 {"class_count", hist.size()},
                 {"group_order", hist.group_order()},
                 {"model_count", hist.model_count()},
                 {"total_mass", exact(hist.total_mass())}};
  rec.provenance = {{"cache_dir", cache_provenance(dir)}, {"jobs", cfg.jobs}};
  if (dir) rec.provenance["cache_file"] = pointcount::cache_path(*dir, family, q).string();
  rec.text = {"classes: " + std::to_string(hist.size()), "models: " + std::to_string(hist.model_count()),
              "total mass: " + to_string(hist.total_mass())};
  return rec;
}

Record cmd_trace(const RunConfig& cfg, const std::string& space_name, const std::string& lambda, std::int64_t q,
                 bool force_full, bool allow_large) {
  const auto space = cohomology::parse_space(space_name);
  const auto lam = symchar::parse_weight(lambda);
  const auto dir = cache_root(cfg);
  pointcount::HistogramStore store(dir, enum_options(cfg, allow_large));
  cohomology::TraceOptions opts;
  opts.force_full = force_full;
  const Rational value = cohomology::trace_ec(space, lam, q, store, opts);

  Record rec;
  rec.command = "trace";
  rec.inputs = {{"space", space_name}, {"lambda", weight_json(lam)}, {"q", q}, {"force_full", force_full}};
  rec.outputs = {{"value", exact(value)}};
  if (lam.size() % 2 != 0 && !force_full) {
    rec.route = "odd-weight-vanishing";
  } else if (space == cohomology::Space::A1 || space == cohomology::Space::A11) {
    rec.route = "motive";
    const MotiveExpr e = space == cohomology::Space::A1 ? cohomology::euler_a1(lam.l) : cohomology::euler_a11(lam);
    rec.evidence = {{"motive", motive_json(e)}, {"pretty", e.pretty()}};
  } else {
    rec.route = "point-count";
    rec.provenance["genus2_histogram"] = store.origin(pointcount::Family::genus2, q);
  }
  rec.provenance["cache_dir"] = cache_provenance(dir);
  return rec;
}

Record cmd_euler(const std::string& space_name, std::optional<int> n, std::optional<std::string> lambda) {
  const auto space = cohomology::parse_space(space_name);
  Record rec;
  rec.command = "euler";
  MotiveExpr e;
  if (space == cohomology::Space::A1) {
    if (!n) throw DomainError("euler: --n is required for a1");
    e = cohomology::euler_a1(*n);
    rec.inputs = {{"space", space_name}, {"n", *n}};
  } else if (space == cohomology::Space::A11) {
    if (!lambda) throw DomainError("euler: --lambda is required for a11");
    const auto lam = symchar::parse_weight(*lambda);
    e = cohomology::euler_a11(lam);
    rec.inputs = {{"space", space_name}, {"lambda", weight_json(lam)}};
  } else {
    throw DomainError("euler: motives are only available for a1 and a11");
  }
  rec.route = "motive";
  rec.outputs = {{"motive", motive_json(e)}, {"pretty", e.pretty()}};
  return rec;
}

Record cmd_eisenstein(const RunConfig& cfg, const std::string& lambda, int degree) {
  const auto lam = symchar::parse_weight(lambda);
  const auto table = nonvanishing(cfg);
  const MotiveExpr e = cohomology::eisenstein_lowest(lam, degree, table);
  Record rec;
  rec.command = "eisenstein";
  rec.inputs = {{"lambda", weight_json(lam)}, {"degree", degree}};
  rec.outputs = {{"motive", motive_json(e)}, {"pretty", e.pretty()}, {"dimension", exact(e.coefficient_sum())}};
  rec.route = e.is_zero() ? "zero" : "residual-eisenstein";
  if (lam.l == lam.m && lam.l % 2 == 0 && lam.l > 0) {
    const int a = lam.l / 2;
    rec.evidence = {{"cusp_weight", 4 + 4 * a}, {"dim_cusp", modforms::dim_cusp(4 + 4 * a)}};
  }
  rec.provenance = {{"nonvanishing_table", cfg.nonvanishing_path.empty() ? json("default") : json(cfg.nonvanishing_path)}};
  return rec;
}

Record cmd_branch(const std::string& lambda) {
  const auto lam = symchar::parse_weight(lambda);
  const auto b = symchar::branch_a11(lam);
  Record rec;
  rec.command = "branch";
  rec.inputs = {{"lambda", weight_json(lam)}};
  rec.route = "restriction";
  json off = json::array(), plus = json::array(), minus = json::array();
  rec.csv_header = {"a", "b", "kind", "multiplicity"};
  for (const auto& [ab, m] : b.off_diag) {
    off.push_back({{"a", ab.first}, {"b", ab.second}, {"multiplicity", m}});
    rec.csv_rows.push_back({std::to_string(ab.first), std::to_string(ab.second), "pair", std::to_string(m)});
  }
  for (const auto& [a, m] : b.diag_plus) {
    plus.push_back({{"a", a}, {"multiplicity", m}});
    rec.csv_rows.push_back({std::to_string(a), std::to_string(a), "plus", std::to_string(m)});
  }
  for (const auto& [a, m] : b.diag_minus) {
    minus.push_back({{"a", a}, {"multiplicity", m}});
    rec.csv_rows.push_back({std::to_string(a), std::to_string(a), "minus", std::to_string(m)});
  }
  rec.outputs = {{"off_diagonal", off}, {"diag_plus", plus}, {"diag_minus", minus}, {"dimension", b.dimension()}};
  rec.evidence = {{"weyl_dimension", symchar::weyl_dim(lam)}};
  return rec;
}

Record cmd_mult(const std::string& lambda, int n, int k) {
  const auto lam = symchar::parse_weight(lambda);
  Record rec;
  rec.command = "mult";
  rec.inputs = {{"lambda", weight_json(lam)}, {"n", n}, {"k", k}};
  rec.route = "kunneth";
  rec.outputs = {{"multiplicity", symchar::multiplicity_in_cohomology(lam, n, k)}};
  return rec;
}

Record cmd_poincare(int n) {
  const auto p = symchar::invariant_poincare(n);
  Record rec;
  rec.command = "poincare";
  rec.inputs = {{"n", n}};
  rec.route = "invariants";
  rec.csv_header = {"k", "dimension"};
  for (std::size_t k = 0; k < p.size(); ++k) rec.csv_rows.push_back({std::to_string(k), std::to_string(p[k])});
  rec.outputs = {{"dimensions", p}, {"palindromic", std::equal(p.begin(), p.end(), p.rbegin())}};
  return rec;
}

Record cmd_hecke(int k, std::int64_t p, int r) {
  Record rec;
  rec.command = "hecke";
  rec.inputs = {{"weight", k}, {"p", p}, {"power", r}};
  rec.route = "q-expansion";
  rec.outputs = {{"trace", exact(modforms::hecke_trace(k, p, r))}, {"dim_cusp", modforms::dim_cusp(k)}};
  return rec;
}

std::vector<motives::TraceSample> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("fit: cannot open samples file '" + path + "'");
  std::vector<motives::TraceSample> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (cols.size() != 3) {
      throw DomainError("fit: samples line " + std::to_string(lineno) + " must be p,r,value");
    }
    try {
      motives::TraceSample s;
      s.p = std::stoll(cols[0]);
      s.r = std::stoi(cols[1]);
      const auto slash = cols[2].find('/');
      s.value = slash == std::string::npos
                    ? Rational(Integer(cols[2]))
                    : Rational(Integer(cols[2].substr(0, slash)), Integer(cols[2].substr(slash + 1)));
      out.push_back(s);
    } catch (const std::exception&) {
      throw DomainError("fit: samples line " + std::to_string(lineno) + " is malformed");
    }
  }
  return out;
}

Record cmd_fit(const std::string& basis_spec, const std::string& samples_path) {
  const auto basis = motives::parse_basis_spec(basis_spec);
  const auto samples = read_samples(samples_path);
  const MotiveExpr e = motives::fit(samples, basis);
  Record rec;
  rec.command = "fit";
  rec.inputs = {{"basis", basis_spec}, {"samples", samples.size()}};
  rec.route = "exact-solve";
  rec.outputs = {{"motive", motive_json(e)}, {"pretty", e.pretty()}};
  return rec;
}

Record cmd_inner(const std::string& lambda) {
  const auto lam = symchar::parse_weight(lambda);
  const auto rep = cohomology::inner_vanishing_report(lam);
  Record rec;
  rec.command = "inner";
  rec.inputs = {{"lambda", weight_json(lam)}};
  rec.route = cohomology::to_string(rep.route);
  rec.outputs = {{"verdict", cohomology::to_string(rep.verdict)}};
  rec.evidence = rep.evidence;
  return rec;
}

Record cmd_analyze(const RunConfig& cfg, const std::string& target, const std::string& assume) {
  if (target != "N") throw DomainError("analyze: only the target N is supported");
  const auto nc = cohomology::NConfig::parse(assume);
  const auto table = nonvanishing(cfg);
  const auto res = cohomology::determine_N(nc, table);
  Record rec;
  rec.command = "analyze";
  json flags = json::object();
  for (const auto& [a, inj] : nc.injective) flags["a" + std::to_string(a)] = inj ? "inj" : "noninj";
  rec.inputs = {{"target", target}, {"assume", flags}};
  rec.outputs = {{"N", res.N}, {"i", res.degree}, {"a", res.a}};
  rec.route = "first-nonvanishing-h2";
  json steps = json::array();
  for (int a = 2; a <= res.a; ++a) {
    const auto m = cohomology::h2_lowest_m2(HighestWeight(2 * a, 2 * a), nc, table);
    steps.push_back({{"a", a},
                     {"eisenstein_dim", exact(m.eisenstein_dim)},
                     {"a11_dim", exact(m.a11_dim)},
                     {"injective", m.injective},
                     {"bound", exact(m.bound)},
                     {"nonvanishing", m.nonvanishing}});
  }
  rec.evidence = {{"steps", steps}};
  return rec;
}

int cmd_verify(const RunConfig& cfg, const std::string& level, Format format, std::ostream& out) {
  acceptance::Options opts;
  if (level == "quick") {
    opts.level = acceptance::Level::quick;
  } else if (level == "full") {
    opts.level = acceptance::Level::full;
  } else {
    throw DomainError("verify: level must be quick or full");
  }
  if (cfg.jobs < 1) throw DomainError("jobs must be at least 1");
  opts.jobs = cfg.jobs;
  opts.cache_dir = cache_root(cfg);

  json results = json::array();
  auto on_result = [&](const acceptance::CriterionResult& r) {
    if (format == Format::text) {
      out << acceptance::format_line(r) << '\n';
      for (const auto& n : r.notes) out << "    " << n << '\n';
      out.flush();
    }
  };
  const auto all = acceptance::run(opts, on_result);
  bool ok = true, integrity = false;
  for (const auto& r : all) {
    ok = ok && r.pass;
    integrity = integrity || r.actual.rfind("integrity:", 0) == 0;
    results.push_back({{"id", r.id},
                       {"title", r.title},
                       {"pass", r.pass},
                       {"expected", r.expected},
                       {"actual", r.actual},
                       {"notes", r.notes}});
  }
  if (format != Format::text) {
    Record rec;
    rec.command = "verify";
    rec.inputs = {{"level", level}};
    rec.route = "acceptance";
    rec.outputs = {{"criteria", results}, {"all_pass", ok}};
    rec.provenance = {{"cache_dir", cache_provenance(opts.cache_dir)}, {"jobs", cfg.jobs}};
    rec.csv_header = {"id", "pass", "expected", "actual"};
    for (const auto& r : all) {
      rec.csv_rows.push_back({std::to_string(r.id), r.pass ? "pass" : "fail", "\"" + r.expected + "\"",
                              "\"" + r.actual + "\""});
    }
    emit(rec, format, out);
  }
  if (integrity) return 2;
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact point counts, local-system traces and invariant theory for genus 2", "taut2"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--cache", cfg.cache_dir, "Histogram cache directory (overrides TAUT2_CACHE)");
  app.add_option("--jobs,-j", cfg.jobs, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--nonvanishing", cfg.nonvanishing_path, "Override file with lines weight,a,flag");

  // Global options are also accepted after the subcommand.
  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--cache", cfg.cache_dir, "Histogram cache directory");
    sub->add_option("--jobs,-j", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--nonvanishing", cfg.nonvanishing_path, "Override file with lines weight,a,flag");
  };

  std::string family, space = "a1", lambda, basis, samples, assume, target, level = "quick";
  std::int64_t q = 0, p = 0;
  int n = 0, k = 0, degree = 0, weight = 0, power = 1;
  bool force_full = false, allow_large = false;
  std::optional<int> euler_n;
  std::optional<std::string> euler_lambda;

  auto* count = app.add_subcommand("count", "Enumerate curves and print the Frobenius histogram");
  count->add_option("--family", family)->required();
  count->add_option("--q", q)->required();
  count->add_flag("--allow-large", allow_large, "Permit genus-2 enumeration for q up to 13");

  auto* trace = app.add_subcommand("trace", "Trace of Frobenius on e_c(space, V_lambda)");
  trace->add_option("--space", space)->required();
  trace->add_option("--lambda", lambda)->required();
  trace->add_option("--q", q)->required();
  trace->add_flag("--force-full", force_full, "Evaluate odd |lambda| instead of returning 0");
  trace->add_flag("--allow-large", allow_large, "Permit genus-2 enumeration for q up to 13");

  auto* euler = app.add_subcommand("euler", "Motivic Euler characteristic");
  euler->add_option("--space", space);
  euler->add_option("--n", euler_n);
  euler->add_option("--lambda", euler_lambda);

  auto* eis = app.add_subcommand("eisenstein", "Lowest-weight Eisenstein cohomology of A2");
  eis->add_option("--lambda", lambda)->required();
  eis->add_option("--degree", degree)->required();

  auto* branch = app.add_subcommand("branch", "Branching to (Sp2 x Sp2) x| S2");
  branch->add_option("--lambda", lambda)->required();

  auto* mult = app.add_subcommand("mult", "Multiplicity of V_lambda in H^k(X^n)");
  mult->add_option("--lambda", lambda)->required();
  mult->add_option("--n", n)->required();
  mult->add_option("--k", k)->required();

  auto* poincare = app.add_subcommand("poincare", "Invariant Poincare polynomial of X^n");
  poincare->add_option("--n", n)->required();

  auto* hecke = app.add_subcommand("hecke", "Trace of T_p^r on S_k");
  hecke->add_option("--weight", weight)->required();
  hecke->add_option("--p", p)->required();
  hecke->add_option("--power", power);

  auto* fit = app.add_subcommand("fit", "Fit a motive to trace samples");
  fit->add_option("--basis", basis)->required();
  fit->add_option("--samples", samples)->required();

  auto* inner = app.add_subcommand("inner", "Inner cohomology vanishing report");
  inner->add_option("--lambda", lambda)->required();

  auto* analyze = app.add_subcommand("analyze", "Determine N under injectivity assumptions");
  analyze->add_option("target", target)->required();
  analyze->add_option("--assume", assume, "e.g. a2=inj,a3=noninj");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));

  for (auto* sub : {count, trace, euler, eis, branch, mult, poincare, hecke, fit, inner, analyze, verify}) common(sub);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const Format format = parse_format(cfg.format);
    Record rec;
    if (*count) {
      rec = cmd_count(cfg, family, q, allow_large);
    } else if (*trace) {
      rec = cmd_trace(cfg, space, lambda, q, force_full, allow_large);
    } else if (*euler) {
      rec = cmd_euler(space, euler_n, euler_lambda);
    } else if (*eis) {
      rec = cmd_eisenstein(cfg, lambda, degree);
    } else if (*branch) {
      rec = cmd_branch(lambda);
    } else if (*mult) {
      rec = cmd_mult(lambda, n, k);
    } else if (*poincare) {
      rec = cmd_poincare(n);
    } else if (*hecke) {
      rec = cmd_hecke(weight, p, power);
    } else if (*fit) {
      rec = cmd_fit(basis, samples);
    } else if (*inner) {
      rec = cmd_inner(lambda);
    } else if (*analyze) {
      rec = cmd_analyze(cfg, target, assume);
    } else {
      return cmd_verify(cfg, level, format, out);
    }
    emit(rec, format, out);
    return 0;
  } catch (const IntegrityError& e) {
    err << "integrity failure: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace taut2::cli
