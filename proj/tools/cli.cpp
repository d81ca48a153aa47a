#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fria/error.hpp"
#include "fria/friedrichs.hpp"
#include "fria/majorant.hpp"
#include "fria/maxwell.hpp"
#include "fria/mesh.hpp"
#include "fria/oracle.hpp"
#include "fria/weights.hpp"

namespace fria::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Re-raises input errors met while interpreting a flag as usage errors naming it.
template <class F>
auto for_flag(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidInput& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

double sig12(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", v);
  return std::strtod(buf.data(), nullptr);
}

std::string fixed5(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(5) << v;
  return os.str();
}

std::string exact(double v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

struct OutputTarget {
  std::string format = "json";
  std::optional<std::string> path;
};

// `--out csv|json` selects a format, anything else is a file path.
OutputTarget resolve_output(const std::string& out, const std::string& format, const std::string& default_format) {
  OutputTarget t;
  t.format = default_format;
  if (!format.empty()) t.format = format;
  if (out == "csv" || out == "json") {
    t.format = out;
  } else if (!out.empty()) {
    t.path = out;
  }
  return t;
}

void emit(const std::string& text, const OutputTarget& target, std::ostream& out) {
  if (!target.path) {
    out << text;
    return;
  }
  std::ofstream file(*target.path);
  if (!file) throw UsageError("--out: cannot open '" + *target.path + "' for writing");
  file << text;
}

std::vector<double> parse_lengths(const std::string& text) {
  return for_flag("--lengths", [&] {
    auto v = parse_real_list(text);
    DInterval check(v);
    return v;
  });
}

FullWeight parse_weight_flag(const std::string& flag, const std::string& text, int dim) {
  if (text.empty()) return FullWeight::identity(dim);
  return for_flag(flag, [&] {
    FullWeight w = parse_weight(text);
    if (w.dim() != dim) {
      throw InvalidInput("weight dimension " + std::to_string(w.dim()) + " does not match " + std::to_string(dim) +
                         " box lengths");
    }
    return w;
  });
}

LevelRange parse_levels(const std::string& text) {
  return for_flag("--levels", [&] {
    LevelRange r;
    auto read = [&](std::string_view s) {
      int v = 0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw InvalidInput("expected LEVEL or FIRST:LAST, got '" + text + "'");
      }
      return v;
    };
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
      r.first = r.last = read(text);
    } else {
      r.first = read(std::string_view(text).substr(0, colon));
      r.last = read(std::string_view(text).substr(colon + 1));
    }
    if (r.first < 0 || r.last < r.first || r.last > kMaxLshapeLevel) {
      throw InvalidInput("level range must satisfy 0 <= FIRST <= LAST <= " + std::to_string(kMaxLshapeLevel));
    }
    return r;
  });
}

ordered_json lengths_json(const DInterval& box) {
  ordered_json a = ordered_json::array();
  for (double l : box.lengths()) a.push_back(l);
  return a;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

constexpr std::array<double, 7> kDeltas{1e-6, 1e-4, 1e-2, 1.0, 1e2, 1e4, 1e6};
constexpr std::array<const char*, 7> kDeltaLabels{"1e-06", "1e-04", "1e-02", "1", "1e+02", "1e+04", "1e+06"};
constexpr double kCoarseConstant = 22.50791;
constexpr double kThmAConstant = 0.31829;

// ---------------------------------------------------------------------------
// bounds

struct FriedrichsArgs {
  std::string lengths;
  std::string weight;
  std::string method = "auto";
  std::string out;
};

BoundReport friedrichs_by_method(const std::string& method, const DInterval& box, const FullWeight& w) {
  if (method == "auto") return best_bound(box, w);
  if (method == "mikhlin") return mikhlin_bound(box);
  if (method == "coarse") return coarse_bound(box, w);
  if (method == "thmA") {
    if (!w.is_diagonal()) throw BoundUndefined("thmA needs a diagonal weight; use thmA2 for full matrices");
    return diagonal_bound(box, w.diagonal_part());
  }
  if (method == "thmA2") return full_bound(box, w);
  // semidef
  BoundReport r = semidef_bound(box, w.is_diagonal() ? w.diagonal_part() : tilde_reduction(w));
  r.weight = w;
  return r;
}

std::string run_friedrichs(const FriedrichsArgs& a) {
  const DInterval box(parse_lengths(a.lengths));
  const FullWeight w = parse_weight_flag("--weight", a.weight, box.dim());
  const BoundReport r = friedrichs_by_method(a.method, box, w);
  ordered_json j;
  j["method"] = std::string(to_string(r.method));
  j["value"] = sig12(r.value);
  j["seminorm_only"] = r.seminorm_only;
  j["inputs"] = {{"lengths", lengths_json(box)}, {"weight", format_weight(w)}};
  return dump(j);
}

struct MaxwellArgs {
  std::string lengths = "1,1,1";
  std::string eps;
  double diam = 0.0;
  double eps_max = 0.0;
  std::string method = "auto";
  bool convex = true;
  std::string out;
};

std::string run_maxwell(const MaxwellArgs& a, bool has_diam, bool has_eps_max) {
  const DInterval box(parse_lengths(a.lengths));
  if (box.dim() != 3) throw UsageError("--lengths: Maxwell bounds need exactly three lengths");
  const FullWeight eps = parse_weight_flag("--eps", a.eps, 3);
  const MaxwellInput in = for_flag("--diam/--eps-max", [&] {
    return MaxwellInput::make(box, eps, has_diam ? std::optional<double>(a.diam) : std::nullopt,
                              has_eps_max ? std::optional<double>(a.eps_max) : std::nullopt);
  });
  if (!a.convex) throw BoundUndefined("the Maxwell bounds hold for convex domains only");
  BoundReport r = [&] {
    if (a.method == "coarse") return maxwell_coarse(in);
    if (a.method == "thmA") return maxwell_diagonal(in);
    if (a.method == "thmA2") return maxwell_full(in);
    if (a.method == "semidef") return maxwell_semidef(in);
    return maxwell_best(in);
  }();
  ordered_json j;
  j["method"] = std::string(to_string(r.method));
  j["value"] = sig12(r.value);
  j["seminorm_only"] = r.seminorm_only;
  j["inputs"] = {{"lengths", lengths_json(box)},
                 {"eps", format_weight(eps)},
                 {"diam", in.diam},
                 {"eps_max", in.eps_max},
                 {"convex", a.convex}};
  return dump(j);
}

// ---------------------------------------------------------------------------
// tables and experiment

std::string table1() {
  std::ostringstream os;
  os << "delta";
  for (auto label : kDeltaLabels) os << ',' << label;
  os << "\ncoarse";
  const DInterval box{1.0, 1.0};
  for (double d : kDeltas) os << ',' << fixed5(coarse_bound(box, FullWeight::diagonal({1.0, d})).value);
  os << "\nthmA";
  for (double d : kDeltas) os << ',' << fixed5(diagonal_bound(box, DiagonalWeight{1.0, d}).value);
  os << '\n';
  return os.str();
}

std::string table3() {
  const DInterval box{1.0, 1.0, 1.0};
  std::ostringstream os;
  os << "delta";
  // Only the delta <= 1 columns: for delta > 1 the printed values assume eps_max = 1.
  for (std::size_t k = 0; k < 4; ++k) os << ',' << kDeltaLabels[k];
  std::ostringstream coarse, diag;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto in = MaxwellInput::make(box, FullWeight::diagonal({1.0, 1.0, kDeltas[k]}));
    coarse << ',' << fixed5(maxwell_coarse(in).value);
    diag << ',' << fixed5(maxwell_diagonal(in).value);
  }
  os << "\ncoarse" << coarse.str() << "\nthmA" << diag.str() << '\n';
  return os.str();
}

std::vector<std::string> majorant_columns(std::size_t k) {
  if (k == 2) return {"M_coarse", "M_thmA"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("M_" + std::to_string(i + 1));
  return names;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows, std::size_t k) {
  std::ostringstream os;
  os << "level,elements";
  for (const auto& name : majorant_columns(k)) os << ',' << name;
  os << '\n';
  for (const auto& r : rows) {
    os << r.level << ',' << r.elements;
    for (const auto& m : r.majorants) os << ',' << fixed5(m.total);
    os << '\n';
  }
  return os.str();
}

std::string experiment_json(const std::vector<ExperimentRow>& rows, const FullWeight& alpha, double f,
                            std::span<const double> constants) {
  ordered_json j;
  j["alpha"] = format_weight(alpha);
  j["f"] = f;
  ordered_json cs = ordered_json::array();
  for (double c : constants) cs.push_back(c);
  j["constants"] = cs;
  ordered_json out_rows = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["level"] = r.level;
    row["elements"] = r.elements;
    row["energy_norm"] = sig12(r.energy_norm);
    row["cg_iterations"] = r.solver.iterations;
    row["cg_relative_residual"] = sig12(r.solver.relative_residual);
    ordered_json ms = ordered_json::array();
    for (const auto& m : r.majorants) {
      ms.push_back({{"constant", m.constant_used},
                    {"residual_norm", sig12(m.residual_norm)},
                    {"defect_norm", sig12(m.defect_norm)},
                    {"total", sig12(m.total)}});
    }
    row["majorants"] = ms;
    out_rows.push_back(row);
  }
  j["rows"] = out_rows;
  return dump(j);
}

struct ExperimentArgs {
  std::string levels = "0:4";
  std::string alpha = "diag:1,1e-4";
  double f = 1.0;
  std::string constants = "22.50791,0.31829";
  std::string out;
  std::string format;
  std::string solution_out;
  bool serial = false;
};

void write_solution_csv(const std::string& path, const TriMesh& mesh, const FullWeight& alpha, double f) {
  const P1Solution u = solve_diffusion(mesh, alpha, f);
  std::ofstream file(path);
  if (!file) throw UsageError("--solution-out: cannot open '" + path + "' for writing");
  file << "vertex,x,y,value\n" << std::setprecision(12);
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const Point& p = mesh.vertex(static_cast<Index>(v));
    file << v << ',' << p.x << ',' << p.y << ',' << u.value(static_cast<Index>(v)) << '\n';
  }
}

std::string run_experiment(const ExperimentArgs& a, const OutputTarget& target) {
  const LevelRange levels = parse_levels(a.levels);
  const FullWeight alpha = parse_weight_flag("--alpha", a.alpha, 2);
  if (!std::isfinite(a.f)) throw UsageError("--f: must be finite");
  const std::vector<double> constants = for_flag("--constants", [&] {
    auto c = parse_real_list(a.constants);
    for (double v : c) {
      if (!(v > 0.0)) throw InvalidInput("constants must be > 0");
    }
    return c;
  });
  const auto rows = run_refinement_experiment(levels, alpha, a.f, constants, !a.serial);
  if (!a.solution_out.empty()) {
    const TriMesh finest = build_lshape(levels.last);
    write_solution_csv(a.solution_out, finest, alpha, a.f);
  }
  return target.format == "csv" ? experiment_csv(rows, constants.size())
                                : experiment_json(rows, alpha, a.f, constants);
}

std::string table2() {
  const std::array<double, 2> constants{kCoarseConstant, kThmAConstant};
  const auto rows = run_refinement_experiment({0, 4}, FullWeight::diagonal({1.0, 1e-4}), 1.0, constants);
  return experiment_csv(rows, constants.size());
}

// ---------------------------------------------------------------------------
// oracle and mesh

struct DomainArgs {
  std::string domain = "square";
  int n = 64;
  int level = 0;
};

TriMesh build_domain(const DomainArgs& a) {
  if (a.domain == "square") {
    if (a.n < 1) throw UsageError("--n: must be >= 1");
    return build_unit_square(a.n);
  }
  return for_flag("--level", [&] { return build_lshape(a.level); });
}

std::string run_oracle(const DomainArgs& d, const std::string& alpha_text) {
  const FullWeight alpha = parse_weight_flag("--alpha", alpha_text, 2);
  if (!(smallest_eigenvalue(alpha) > 0.0)) throw UsageError("--alpha: must be positive definite");
  const TriMesh mesh = build_domain(d);
  const EigenEstimate est = estimate_cfa(mesh, alpha);
  const DInterval box{1.0, 1.0};
  const double bound = best_bound(box, alpha).value;
  ordered_json j;
  j["lambda_min"] = sig12(est.lambda_min);
  j["c_estimate"] = sig12(est.c_estimate);
  j["bound_thmA"] = sig12(bound);
  j["margin"] = sig12(1.0 - est.c_estimate / bound);
  j["iterations"] = est.iterations;
  j["residual"] = sig12(est.residual);
  j["inputs"] = {{"domain", d.domain}, {"alpha", format_weight(alpha)}};
  if (d.domain == "square") {
    j["inputs"]["n"] = d.n;
  } else {
    j["inputs"]["level"] = d.level;
  }
  return dump(j);
}

std::string run_mesh(const DomainArgs& d) {
  const TriMesh mesh = build_domain(d);
  std::ostringstream os;
  write_mesh(os, mesh);
  return os.str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Guaranteed bounds for weighted Friedrichs and Maxwell constants, and a posteriori majorants",
               "fria"};
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Upper bounds for Friedrichs and Maxwell constants");
  bounds->require_subcommand(1);

  FriedrichsArgs fa;
  auto* fcmd = bounds->add_subcommand("friedrichs", "Weighted Friedrichs constant bound (JSON)");
  auto* flen_opt = fcmd->add_option("--lengths", fa.lengths, "Box side lengths, e.g. 1,1");
  fcmd->add_option("--weight", fa.weight, "diag:a,b[,c] or full:<upper triangle>; default identity");
  fcmd->add_option("--method", fa.method, "auto|mikhlin|coarse|thmA|thmA2|semidef")
      ->check(CLI::IsMember({"auto", "mikhlin", "coarse", "thmA", "thmA2", "semidef"}));
  fcmd->add_option("--out", fa.out, "Output file (default: stdout)");

  MaxwellArgs ma;
  auto* mcmd = bounds->add_subcommand("maxwell", "Tangential Maxwell constant bound for convex domains (JSON)");
  mcmd->add_option("--lengths", ma.lengths, "Box side lengths (3)");
  mcmd->add_option("--eps", ma.eps, "Permittivity, diag:... or full:...; default identity");
  auto* diam_opt = mcmd->add_option("--diam", ma.diam, "Domain diameter; default box diagonal");
  auto* emax_opt = mcmd->add_option("--eps-max", ma.eps_max, "Largest eigenvalue bound; default from --eps");
  mcmd->add_option("--method", ma.method, "auto|coarse|thmA|thmA2|semidef")
      ->check(CLI::IsMember({"auto", "coarse", "thmA", "thmA2", "semidef"}));
  mcmd->add_option("--convex", ma.convex, "Caller asserts the domain is convex (true|false)");
  mcmd->add_option("--out", ma.out, "Output file (default: stdout)");

  // table
  int table_id = 0;
  std::string table_out;
  auto* tcmd = app.add_subcommand("table", "Reproduce a results table as CSV (1, 2 or 3)");
  auto* tid_opt = tcmd->add_option("id", table_id, "Table number")->check(CLI::IsMember({1, 2, 3}));
  tcmd->add_option("--out", table_out, "Output file (default: stdout)");

  // experiment
  auto* ecmd = app.add_subcommand("experiment", "Refinement experiments");
  ecmd->require_subcommand(1);
  ExperimentArgs ea;
  auto* e2 = ecmd->add_subcommand("table2", "L-shape majorant refinement study");
  e2->add_option("--levels", ea.levels, "Level range FIRST:LAST");
  e2->add_option("--alpha", ea.alpha, "Diffusion matrix (2x2)");
  e2->add_option("--f", ea.f, "Constant source");
  e2->add_option("--constants", ea.constants, "Friedrichs constant bounds fed to the majorant");
  e2->add_option("--out", ea.out, "csv|json, or an output file path");
  e2->add_option("--format", ea.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  e2->add_option("--solution-out", ea.solution_out, "Write the finest-level nodal solution as CSV");
  e2->add_flag("--serial", ea.serial, "Compute levels one after another");

  // oracle
  auto* ocmd = app.add_subcommand("oracle", "Brute-force spectral checks");
  ocmd->require_subcommand(1);
  DomainArgs od;
  std::string oracle_alpha = "diag:1,1";
  std::string oracle_out;
  auto* cfa = ocmd->add_subcommand("cfa", "Discrete eigenvalue estimate of the weighted Friedrichs constant (JSON)");
  cfa->add_option("--domain", od.domain, "square|lshape")->check(CLI::IsMember({"square", "lshape"}));
  cfa->add_option("--n", od.n, "Cells per side (square)");
  cfa->add_option("--level", od.level, "Refinement level (lshape)");
  cfa->add_option("--alpha", oracle_alpha, "Diffusion matrix (2x2)");
  cfa->add_option("--out", oracle_out, "Output file (default: stdout)");

  // mesh dump
  DomainArgs md{"lshape", 16, 0};
  std::string mesh_out;
  auto* mshcmd = app.add_subcommand("mesh", "Dump a mesh in the $vertices/$triangles/$edges text format");
  mshcmd->add_option("--domain", md.domain, "square|lshape")->check(CLI::IsMember({"square", "lshape"}));
  mshcmd->add_option("--n", md.n, "Cells per side (square)");
  mshcmd->add_option("--level", md.level, "Refinement level (lshape)");
  mshcmd->add_option("--out", mesh_out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fria: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  // Checked after parsing so that unknown flags are reported first.
  if (*fcmd && flen_opt->count() == 0) {
    err << "fria: usage error: --lengths is required\n";
    return kExitUsage;
  }
  if (*tcmd && tid_opt->count() == 0) {
    err << "fria: usage error: table: missing table number (1, 2 or 3)\n";
    return kExitUsage;
  }

  try {
    if (*fcmd) {
      emit(run_friedrichs(fa), resolve_output(fa.out, "", "json"), out);
    } else if (*mcmd) {
      emit(run_maxwell(ma, diam_opt->count() > 0, emax_opt->count() > 0), resolve_output(ma.out, "", "json"), out);
    } else if (*tcmd) {
      const std::string csv = table_id == 1 ? table1() : table_id == 2 ? table2() : table3();
      emit(csv, resolve_output(table_out, "", "csv"), out);
    } else if (*e2) {
      const OutputTarget target = resolve_output(ea.out, ea.format, "csv");
      emit(run_experiment(ea, target), target, out);
    } else if (*cfa) {
      emit(run_oracle(od, oracle_alpha), resolve_output(oracle_out, "", "json"), out);
    } else if (*mshcmd) {
      emit(run_mesh(md), resolve_output(mesh_out, "", "text"), out);
    }
  } catch (const UsageError& e) {
    err << "fria: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fria: error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace fria::cli
