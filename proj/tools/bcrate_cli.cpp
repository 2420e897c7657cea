// Command-line front end: gen, bounds, hierarchy, approx, decide2, code, report, paper-suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "bcrate/approx.hpp"
#include "bcrate/beta2.hpp"
#include "bcrate/codes.hpp"
#include "bcrate/combinatorics.hpp"
#include "bcrate/errors.hpp"
#include "bcrate/families.hpp"
#include "bcrate/hierarchy.hpp"
#include "bcrate/report.hpp"
#include "bcrate/suite.hpp"
#include "bcrate/symmetry.hpp"

using nlohmann::json;
using namespace bcrate;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitFailed = 1;

// ---------------------------------------------------------------------------
// Output

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    // Arrays of scalars stay on one line; nested structure gets indices.
    const bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
    if (scalars) {
      out.emplace_back(prefix, j.dump());
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string approx_of(const std::string& value) {
  static const std::regex rational(R"(-?\d+/\d+)");
  if (!std::regex_match(value, rational)) return "";
  const auto slash = value.find('/');
  return "~" + to_decimal(Rational(BigInt(value.substr(0, slash)), BigInt(value.substr(slash + 1))));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  if (format == "csv") {
    std::cout << "key,value\n";
    for (const auto& [k, v] : rows) std::cout << csv_field(k) << ',' << csv_field(v) << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) {
    const std::string approx = approx_of(v);
    std::cout << k << std::string(width - k.size() + 2, ' ') << v << (approx.empty() ? "" : "  " + approx) << "\n";
  }
}

// ---------------------------------------------------------------------------
// JSON for library results

json cover_json(const FractionalCover& c) {
  json cliques = json::array();
  for (const auto& w : c.cliques) cliques.push_back({{"members", w.members}, {"weight", to_string(w.weight)}});
  return {{"kind", to_string(c.kind)}, {"total", to_string(c.total)}, {"cliques", cliques}};
}

json sequence_json(const ExpandingSequence& s) { return {{"receivers", s.receivers}, {"weight", to_string(s.weight)}}; }

json tau_json(const TauCertificate& cert) {
  json classes = json::array();
  for (const auto& c : cert.classes) {
    json item = {{"s", c.s},
                 {"messages", c.messages},
                 {"k", c.k},
                 {"capped", c.capped},
                 {"trivial_term", to_string(c.trivial_term)},
                 {"term", to_string(c.term)},
                 {"sequence", c.sequence}};
    if (c.cover_term) item["cover_term"] = to_string(*c.cover_term);
    classes.push_back(item);
  }
  json out = {{"tau", to_string(cert.tau)},
              {"classes", classes},
              {"cover", cover_json(cert.cover)},
              {"small_n_fallback", cert.small_n_fallback},
              {"k_cap", cert.k_cap},
              {"mode", to_string(cert.mode)},
              {"seed", cert.seed},
              {"rate_scale", to_string(cert.rate_scale)}};
  if (cert.ratio_bound) out["ratio_bound"] = {{"lower", to_string(cert.ratio_bound->lower)}, {"upper", to_string(cert.ratio_bound->upper)}};
  return out;
}

// ---------------------------------------------------------------------------
// Shared option plumbing

struct Caps {
  int max_n_low = 12;
  int max_n_high = 6;
  bool override_ceiling = false;
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 24;
  int minrk_free_entries = 26;
};

void add_caps(CLI::App* app, Caps& caps) {
  app->add_option("--max-n-low", caps.max_n_low, "LP ceiling on n (or orbit bits) for levels 1-2")->capture_default_str();
  app->add_option("--max-n-high", caps.max_n_high, "LP ceiling on n (or orbit bits) for levels >= 3")->capture_default_str();
  app->add_flag("--override-ceiling", caps.override_ceiling, "Ignore the LP size ceilings");
  app->add_option("--exhaustive-cap", caps.exhaustive_cap, "Largest message-vector count verified exhaustively")->capture_default_str();
  app->add_option("--minrk-free-entries", caps.minrk_free_entries, "Largest free-entry count for the exact minrk2 search")->capture_default_str();
}

HierarchyOptions hierarchy_options(const Caps& caps) {
  HierarchyOptions h;
  h.max_n_low = caps.max_n_low;
  h.max_n_high = caps.max_n_high;
  h.override_ceiling = caps.override_ceiling;
  return h;
}

// "none", "auto", "cyclic", "cyclicN", "embedded" (the "symmetry" key of the instance file) or a path.
std::optional<SymmetryGroup> resolve_symmetry(const std::string& spec, const std::string& instance_path, const Instance& inst) {
  if (spec.empty() || spec == "none") return std::nullopt;
  if (spec == "embedded") {
    std::ifstream in(instance_path);
    const json doc = json::parse(in);
    if (!doc.contains("symmetry")) throw std::invalid_argument("instance file has no \"symmetry\" entry");
    std::vector<Permutation> gens = doc["symmetry"].at("generators").get<std::vector<Permutation>>();
    SymmetryGroup g(inst.message_count(), gens);
    check_automorphisms(inst, g);
    return g;
  }
  if (std::filesystem::exists(spec)) {
    SymmetryGroup g = read_symmetry(spec, inst.message_count());
    check_automorphisms(inst, g);
    return g;
  }
  SymmetryGroup g = symmetry_from_name(inst, spec);
  check_automorphisms(inst, g);
  return g;
}

Representation read_representation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  Representation rep;
  rep.field = doc.value("field", 2);
  rep.matrix = doc.at("matrix").get<FieldMatrix>();
  return rep;
}

VerifyOptions parse_verify(const std::string& spec, const Caps& caps) {
  VerifyOptions v;
  v.exhaustive_cap = caps.exhaustive_cap;
  if (spec.empty() || spec == "auto") return v;
  if (spec == "exhaustive") {
    v.mode = VerifyMode::kExhaustive;
    return v;
  }
  static const std::regex random(R"(random(?::(\d+)(?::(\d+))?)?)");
  std::smatch m;
  if (!std::regex_match(spec, m, random)) throw std::invalid_argument("--verify expects exhaustive, auto or random:N:seed");
  v.mode = VerifyMode::kRandomized;
  if (m[1].matched) v.trials = std::stoll(m[1]);
  if (m[2].matched) v.seed = std::stoull(m[2]);
  return v;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Subcommands

struct GenArgs {
  std::string family;
  std::vector<std::string> params;
  std::string output;
  bool with_expected = false;
};

int run_gen(const GenArgs& a, const std::string& format) {
  std::map<std::string, int> params;
  for (const auto& p : a.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("parameter '" + p + "' is not key=value");
    params[p.substr(0, eq)] = std::stoi(p.substr(eq + 1));
  }
  const FamilyOutput fam = make_family(a.family, params);
  json doc = fam.graph ? to_json(*fam.graph) : to_json(fam.instance);
  if (!fam.symmetry.is_trivial()) doc["symmetry"] = {{"generators", fam.symmetry.generators()}};
  if (a.with_expected) {
    json expected = json::object();
    for (const auto& e : fam.expected) expected[e.name] = {{"value", to_string(e.value)}, {"note", e.note}};
    doc["expected"] = expected;
  }
  if (a.output.empty() || a.output == "-") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(a.output);
    if (!out) throw std::runtime_error("cannot write " + a.output);
    out << doc.dump(2) << "\n";
    emit({{"written", a.output}, {"family", a.family}, {"messages", fam.instance.message_count()}, {"receivers", fam.instance.receiver_count()}}, format);
  }
  return 0;
}

struct BoundsArgs {
  std::string path;
  bool alpha = false;
  bool psi_f = false;
  bool chibar_f = false;
  bool chibar = false;
  std::string minrk2;
  std::string rep;
};

int run_bounds(const BoundsArgs& a, const Caps& caps, const std::string& format) {
  const LoadedInstance loaded = load_any(a.path);
  const Instance& inst = loaded.instance;
  const bool none = !a.alpha && !a.psi_f && !a.chibar_f && !a.chibar && a.minrk2.empty();
  json out = {{"instance", a.path}};
  auto timed = [&](const std::string& name, auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    json item = fn();
    item["runtime_ms"] = ms_since(start);
    out[name] = item;
  };
  if (a.alpha || none) timed("alpha", [&] {
    const auto s = alpha_exact(inst);
    return json{{"value", to_string(s.weight)}, {"sequence", sequence_json(s)}};
  });
  if (a.psi_f || none) timed("psi_f", [&] {
    const auto c = fractional_cover(inst, CoverKind::kWeak);
    return json{{"value", to_string(c.total)}, {"cover", cover_json(c)}};
  });
  if (a.chibar_f || none) timed("chibar_f", [&] {
    const auto c = fractional_cover(inst, CoverKind::kStrong);
    return json{{"value", to_string(c.total)}, {"cover", cover_json(c)}};
  });
  if (a.chibar || !a.minrk2.empty()) {
    if (!loaded.graph) throw std::invalid_argument("--chibar and --minrk2 need a graph instance");
  }
  if (a.chibar) timed("chibar", [&] {
    const auto c = integer_clique_cover(*loaded.graph);
    return json{{"value", std::to_string(c.size) + "/1"}, {"cliques", c.cliques}};
  });
  if (!a.minrk2.empty()) timed("minrk2", [&] {
    MinrkResult r;
    if (a.minrk2 == "exact") {
      r = minrk2_exact(*loaded.graph, caps.minrk_free_entries);
    } else if (a.minrk2 == "gram") {
      if (a.rep.empty()) throw std::invalid_argument("--minrk2 gram needs --rep FILE");
      r = minrk_bound(*loaded.graph, read_representation(a.rep));
    } else {
      throw std::invalid_argument("--minrk2 expects exact or gram");
    }
    return json{{"value", std::to_string(r.value) + "/1"}, {"exact", r.exact}, {"field", r.representation.field}, {"matrix", r.representation.matrix}};
  });
  emit(out, format);
  return 0;
}

struct HierarchyArgs {
  std::string path;
  int level = 2;
  std::string sym = "none";
  bool dump_lp = false;
  bool full = false;
};

int run_hierarchy(const HierarchyArgs& a, const Caps& caps, const std::string& format) {
  const LoadedInstance loaded = load_any(a.path);
  HierarchyOptions h = hierarchy_options(caps);
  h.symmetry = resolve_symmetry(a.sym, a.path, loaded.instance);
  h.reduced = !a.full;
  if (a.dump_lp) {
    std::cout << build_hierarchy_lp(loaded.instance, a.level, h).problem.dump();
    return 0;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto b = solve_bk(loaded.instance, a.level, h);
  json counts = {{"initialize", b.counts.initialize}, {"nonnegativity", b.counts.nonnegativity}, {"slope", b.counts.slope},
                 {"monotonicity", b.counts.monotonicity}, {"decode", b.counts.decode}};
  for (const auto& [order, rows] : b.counts.submodularity) counts["submodularity_" + std::to_string(order)] = rows;
  emit({{"instance", a.path},
        {"level", b.level},
        {"value", to_string(b.value)},
        {"variables", b.variables},
        {"rows", b.rows},
        {"row_counts", counts},
        {"iterations", b.iterations},
        {"route", b.route},
        {"symmetry", a.sym},
        {"runtime_ms", ms_since(start)}},
       format);
  return 0;
}

struct ApproxArgs {
  std::string path;
  std::uint64_t seed = 1;
  bool mc = false;
};

int run_approx(const ApproxArgs& a, const std::string& format) {
  const LoadedInstance loaded = load_any(a.path);
  ApproxOptions opts;
  opts.seed = a.seed;
  opts.force_monte_carlo = a.mc;
  const auto start = std::chrono::steady_clock::now();
  const auto result = approximate_beta(loaded.instance, opts);
  const auto problems = check_tau(loaded.instance, result.certificate);
  json out = {{"instance", a.path},
              {"lower", to_string(result.lower)},
              {"lower_witness", sequence_json(result.lower_witness)},
              {"upper", to_string(result.upper)},
              {"certificate", tau_json(result.certificate)},
              {"certificate_problems", problems},
              {"runtime_ms", ms_since(start)}};
  emit(out, format);
  return problems.empty() ? 0 : kExitFailed;
}

int run_decide2(const std::string& path, const Caps& caps, const std::string& format) {
  const LoadedInstance loaded = load_any(path);
  const auto cert = decide_beta_eq_2(loaded.instance);
  json out = to_json(cert);
  out["instance"] = path;
  if (cert.scheme) {
    VerifyOptions v;
    v.exhaustive_cap = caps.exhaustive_cap;
    out["verification"] = to_json(verify_code(loaded.instance, *cert.scheme, v));
  }
  if (cert.aac) out["aac_problems"] = validate_aac(loaded.instance, *cert.aac);
  emit(out, format);
  return 0;
}

struct CodeArgs {
  std::string path;
  std::string scheme;
  std::string verify;
  std::string rep;
};

int run_code(const CodeArgs& a, const Caps& caps, const std::string& format) {
  const LoadedInstance loaded = load_any(a.path);
  const Instance& inst = loaded.instance;
  auto need_graph = [&]() -> const Graph& {
    if (!loaded.graph) throw std::invalid_argument("scheme '" + a.scheme + "' needs a graph instance");
    return *loaded.graph;
  };
  CodeScheme s;
  if (a.scheme == "cliquecover") {
    s = clique_cover_code(need_graph(), integer_clique_cover(need_graph()).cliques);
  } else if (a.scheme == "strongcover") {
    s = strong_cover_code(inst, fractional_cover(inst, CoverKind::kStrong));
  } else if (a.scheme == "mds") {
    s = mds_weak_cover_code(inst, fractional_cover(inst, CoverKind::kWeak));
  } else if (a.scheme == "minrk") {
    const Representation rep = a.rep.empty() ? minrk2_exact(need_graph(), caps.minrk_free_entries).representation : read_representation(a.rep);
    s = minrk_code(need_graph(), rep);
  } else if (a.scheme == "twosymbol") {
    const auto cert = decide_beta_eq_2(inst);
    if (!cert.scheme) throw std::invalid_argument("no compatible labeling: " + cert.reason);
    s = *cert.scheme;
  } else {
    throw std::invalid_argument("unknown scheme '" + a.scheme + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto report = verify_code(inst, s, parse_verify(a.verify, caps));
  emit({{"instance", a.path}, {"scheme", to_json(s)}, {"verification", to_json(report)}, {"verify_ms", ms_since(start)}}, format);
  return report.pass ? 0 : kExitFailed;
}

struct ReportArgs {
  std::string path;
  std::vector<int> levels;
  std::string sym = "none";
  ReportOptions options;
};

int run_report(ReportArgs a, const Caps& caps, const std::string& format) {
  const LoadedInstance loaded = load_any(a.path);
  a.options.hierarchy = hierarchy_options(caps);
  a.options.verify.exhaustive_cap = caps.exhaustive_cap;
  a.options.levels = a.levels;
  a.options.minrk_free_entries = caps.minrk_free_entries;
  a.options.symmetry = a.sym;
  if (!a.levels.empty() || a.options.all) a.options.hierarchy.symmetry = resolve_symmetry(a.sym, a.path, loaded.instance);
  const auto report = build_report(a.path, loaded, a.options);
  if (format == "csv") {
    std::cout << to_csv(report);
  } else if (format == "table") {
    std::cout << to_table(report);
  } else {
    std::cout << to_json(report).dump(2) << "\n";
  }
  return 0;
}

int run_suite(const std::string& scale, int workers, const std::string& format) {
  const auto results = paper_suite(scale == "full" ? SuiteScale::kFull : SuiteScale::kQuick, workers);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (format == "json") {
    json claims = json::array();
    for (const auto& r : results) claims.push_back(to_json(r));
    std::cout << json{{"scale", scale}, {"pass", all}, {"claims", claims}}.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << "claim " << r.id << " [" << (r.pass ? "PASS" : "FAIL") << "] " << r.title << "  (" << static_cast<long>(r.runtime_ms) << " ms)\n";
      for (const auto& c : r.checks) std::cout << "    " << (c.pass ? "ok   " : "FAIL ") << c.what << "\n";
      if (!r.error.empty()) std::cout << "    error: " << r.error << "\n";
    }
  }
  return all ? 0 : kExitFailed;
}

int fail(int code, const json& err) {
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact bounds, codes and certificates for broadcasting with side information"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();
  Caps caps;
  add_caps(&app, caps);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a named family instance or graph as JSON");
  gen_cmd->add_option("family", gen.family, "Family name")->required()->check(CLI::IsMember(family_names()));
  gen_cmd->add_option("params", gen.params, "Parameters as key=value (n=5, k=2, q=3, m=6)");
  gen_cmd->add_option("-o,--output", gen.output, "Output file ('-' for stdout)");
  gen_cmd->add_flag("--with-expected", gen.with_expected, "Embed the expected bounds as metadata");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Combinatorial bounds with witnesses (all three covers and alpha by default)");
  bounds_cmd->add_option("instance", bounds.path)->required()->check(CLI::ExistingFile);
  bounds_cmd->add_flag("--alpha", bounds.alpha);
  bounds_cmd->add_flag("--psif", bounds.psi_f);
  bounds_cmd->add_flag("--chibarf", bounds.chibar_f);
  bounds_cmd->add_flag("--chibar", bounds.chibar);
  bounds_cmd->add_option("--minrk2", bounds.minrk2, "exact or gram")->check(CLI::IsMember({"exact", "gram"}));
  bounds_cmd->add_option("--rep", bounds.rep, "Representation file {\"field\", \"matrix\"} for --minrk2 gram");

  HierarchyArgs hier;
  auto* hier_cmd = app.add_subcommand("hierarchy", "Exact value of the LP hierarchy level b_k");
  hier_cmd->add_option("instance", hier.path)->required()->check(CLI::ExistingFile);
  hier_cmd->add_option("--level,-k", hier.level)->capture_default_str()->check(CLI::Range(1, 64));
  hier_cmd->add_option("--sym", hier.sym, "none, auto, cyclic, cyclicN, embedded or a generator file")->capture_default_str();
  hier_cmd->add_flag("--dump-lp", hier.dump_lp, "Print the LP instead of solving it");
  hier_cmd->add_flag("--full", hier.full, "Use the unreduced constraint set");

  ApproxArgs approx;
  auto* approx_cmd = app.add_subcommand("approx", "Approximation certificate (expanding sequences, tau)");
  approx_cmd->add_option("instance", approx.path)->required()->check(CLI::ExistingFile);
  approx_cmd->add_option("--seed", approx.seed)->capture_default_str();
  approx_cmd->add_flag("--mc", approx.mc, "Force Monte-Carlo sampling of the low-degree covers");

  std::string decide_path;
  auto* decide_cmd = app.add_subcommand("decide2", "Decide beta = 2 with a code or an almost alternating cycle");
  decide_cmd->add_option("instance", decide_path)->required()->check(CLI::ExistingFile);

  CodeArgs code;
  auto* code_cmd = app.add_subcommand("code", "Build and verify an index code");
  code_cmd->add_option("instance", code.path)->required()->check(CLI::ExistingFile);
  code_cmd->add_option("--scheme", code.scheme)->required()->check(CLI::IsMember({"cliquecover", "strongcover", "mds", "minrk", "twosymbol"}));
  code_cmd->add_option("--verify", code.verify, "exhaustive, auto or random:N:seed");
  code_cmd->add_option("--rep", code.rep, "Representation file for the minrk scheme");

  ReportArgs report;
  std::vector<int> single_level;
  auto* report_cmd = app.add_subcommand("report", "Bound report with exact-beta verdicts");
  report_cmd->add_option("instance", report.path)->required()->check(CLI::ExistingFile);
  report_cmd->add_flag("--all", report.options.all, "Everything: alpha, b1, b2, covers, chibar, minrk2 and codes");
  report_cmd->add_option("--levels", report.levels, "Hierarchy levels")->delimiter(',');
  report_cmd->add_option("--level", single_level, "Hierarchy level (repeatable)");
  report_cmd->add_option("--sym", report.sym, "Symmetry for the hierarchy LPs")->capture_default_str();
  report_cmd->add_flag("--alpha", report.options.alpha);
  report_cmd->add_flag("--psif", report.options.psi_f);
  report_cmd->add_flag("--chibarf", report.options.chibar_f);
  report_cmd->add_flag("--chibar", report.options.chibar);
  report_cmd->add_flag("--minrk2", report.options.minrk2);
  report_cmd->add_flag("--codes", report.options.codes, "Build and verify the code of every cover");
  report_cmd->add_flag("--timings", report.options.timings, "Include runtimes (output no longer byte-deterministic)");

  std::string scale = "quick";
  int workers = 0;
  auto* suite_cmd = app.add_subcommand("paper-suite", "Reproduce the finite claims");
  suite_cmd->add_option("--scale", scale)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  suite_cmd->add_option("--workers", workers, "Threads (default: BCRATE_WORKERS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*gen_cmd) return run_gen(gen, format);
    if (*bounds_cmd) return run_bounds(bounds, caps, format);
    if (*hier_cmd) return run_hierarchy(hier, caps, format);
    if (*approx_cmd) return run_approx(approx, format);
    if (*decide_cmd) return run_decide2(decide_path, caps, format);
    if (*code_cmd) return run_code(code, caps, format);
    if (*report_cmd) {
      report.levels.insert(report.levels.end(), single_level.begin(), single_level.end());
      return run_report(report, caps, format);
    }
    if (*suite_cmd) return run_suite(scale, workers, format);
  } catch (const ResourceCapError& e) {
    return fail(kExitCap, {{"error", "resource_cap"}, {"cap", e.cap()}, {"message", e.what()}});
  } catch (const ParseError& e) {
    return fail(kExitValidation, {{"error", "validation"}, {"message", e.what()}});
  } catch (const json::exception& e) {
    return fail(kExitValidation, {{"error", "validation"}, {"message", e.what()}});
  } catch (const std::invalid_argument& e) {
    return fail(kExitValidation, {{"error", "validation"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    return fail(kExitFailed, {{"error", "internal"}, {"message", e.what()}});
  }
  return 0;
}
