#include "qehrhart/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qehrhart/generators.hpp"
#include "qehrhart/gk.hpp"
#include "qehrhart/harmonic.hpp"
#include "qehrhart/polytope.hpp"
#include "qehrhart/serialize.hpp"

namespace qehrhart::cli {

namespace {

enum class Format { table, csv, json };

struct RunConfig {
  std::string subcommand;
  std::string polytope_path;
  std::int64_t m_max = 1;
  std::int64_t m = 1;
  std::string method = "filtration";
  std::uint64_t seed = 20250101;
  Format format = Format::table;
  std::string cache_dir;
  std::size_t max_entries = 0;
  unsigned threads = 1;
  bool with_bases = false;
  std::size_t trials = 100;
  std::size_t samples = 200;
  std::int64_t k_max = 4;
  std::int64_t p3_m_max = 2;
  std::int64_t growth_m_max = 4;
  std::size_t var = 1;
  std::int64_t gk_m_max = 5;
  std::int64_t mult_m_max = 3;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read polytope file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string join(const std::vector<std::size_t>& v, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
  return os.str();
}

std::string point_text(const IntVector& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

void print_table(std::ostream& out, const BigradedTable& table) {
  for (std::size_t m = 0; m < table.rows.size(); ++m) out << "m=" << m << ": " << join(table.rows[m]) << '\n';
}

// Results cache for q-Ehrhart tables, keyed by the polytope bytes and parameters.
class ResultCache {
 public:
  ResultCache(std::string dir, const std::string& polytope_bytes, const RunConfig& cfg) : dir_(std::move(dir)) {
    if (dir_.empty()) return;
    std::ostringstream key;
    key << cfg.subcommand << '\n' << cfg.m_max << '\n' << cfg.method << '\n';
    std::ostringstream name;
    name << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key.str(), fnv1a(polytope_bytes)) << ".json";
    path_ = std::filesystem::path(dir_) / name.str();
  }

  std::optional<Json> load() const {
    if (dir_.empty() || !std::filesystem::exists(path_)) return std::nullopt;
    try {
      std::ifstream in(path_);
      return Json::parse(in);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const Json& value) const {
    if (dir_.empty()) return;
    std::filesystem::create_directories(dir_);
    const auto tmp = path_.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << value.dump() << '\n';
    }
    std::filesystem::rename(tmp, path_);
  }

 private:
  std::string dir_;
  std::filesystem::path path_;
};

int cmd_points(const RunConfig& cfg, const Polytope& p, const ComputeBudget& budget, std::ostream& out) {
  const LatticePointSet z = lattice_points(dilate(p, Rational(static_cast<long>(cfg.m))), budget);
  if (cfg.format == Format::json) {
    Json j = to_json(z);
    j["dilation"] = cfg.m;
    out << j.dump(2) << '\n';
  } else if (cfg.format == Format::csv) {
    for (const auto& q : z.points) {
      for (std::size_t i = 0; i < q.size(); ++i) out << (i ? "," : "") << q[i];
      out << '\n';
    }
  } else {
    out << "lattice points of " << cfg.m << "P: " << z.size() << '\n';
    for (const auto& q : z.points) out << "  " << point_text(q) << '\n';
  }
  return kOk;
}

int cmd_ehrhart(const RunConfig& cfg, const Polytope& p, std::ostream& out) {
  const auto counts = ehrhart_series(p, cfg.m_max);
  if (cfg.format == Format::json) {
    out << Json{{"counts", counts}}.dump(2) << '\n';
  } else if (cfg.format == Format::csv) {
    out << "m,count\n";
    for (std::size_t m = 0; m < counts.size(); ++m) out << m << ',' << counts[m] << '\n';
  } else {
    for (std::size_t m = 0; m < counts.size(); ++m) out << "m=" << m << ": " << counts[m] << '\n';
  }
  return kOk;
}

int cmd_qehrhart(const RunConfig& cfg, const Polytope& p, const std::string& bytes, const ComputeBudget& budget,
                 std::ostream& out, std::ostream& err) {
  std::vector<Method> methods;
  if (cfg.method == "all") {
    methods = {Method::filtration, Method::harmonic, Method::dual};
  } else {
    methods = {parse_method(cfg.method)};
  }

  const auto counts = ehrhart_series(p, cfg.m_max);
  const ResultCache cache(cfg.cache_dir, bytes, cfg);
  std::map<std::string, BigradedTable> tables;
  if (auto cached = cache.load()) {
    try {
      for (const auto& method : methods) {
        BigradedTable t = bigraded_from_json(cached->at(std::string(to_string(method))));
        if (t.row_sums() != counts) throw ParseError("stale cache entry");
        tables.emplace(std::string(to_string(method)), std::move(t));
      }
      err << "cache hit\n";
    } catch (const std::exception&) {
      tables.clear();
    }
  }
  if (tables.empty()) {
    Json stored;
    for (const auto& method : methods) {
      BigradedTable t = q_ehrhart(p, cfg.m_max, method, budget, cfg.threads);
      stored[std::string(to_string(method))] = to_json(t);
      tables.emplace(std::string(to_string(method)), std::move(t));
    }
    cache.store(stored);
  }

  const BigradedTable& first = tables.at(std::string(to_string(methods.front())));
  bool agree = true;
  for (const auto& [name, t] : tables) agree = agree && t == first;

  if (cfg.format == Format::json) {
    Json j;
    for (const auto& [name, t] : tables) j["methods"][name] = to_json(t);
    j["ehrhart"] = counts;
    if (methods.size() > 1) j["agreement"] = agree;
    out << j.dump(2) << '\n';
  } else if (cfg.format == Format::csv) {
    if (agree) out << to_csv(first);
  } else {
    for (const auto& method : methods) {
      out << "method " << to_string(method) << '\n';
      print_table(out, tables.at(std::string(to_string(method))));
    }
    if (methods.size() > 1) out << "agreement: " << (agree ? "yes" : "NO") << '\n';
  }
  if (!agree) {
    err << "error: q-Ehrhart pipelines disagree\n";
    return kCheckFailed;
  }
  return kOk;
}

int cmd_filtration(const RunConfig& cfg, const Polytope& p, const ComputeBudget& budget, std::ostream& out) {
  const FiltrationTable table = filtration_dims(p, cfg.m, cfg.with_bases, budget);
  if (cfg.format == Format::json) {
    out << to_json(table, cfg.with_bases).dump(2) << '\n';
  } else if (cfg.format == Format::csv) {
    out << to_csv(table);
  } else {
    out << "filtration of (A_P)_" << cfg.m << " (" << table.support.size() << " monomials)\n";
    for (std::size_t d = 0; d < table.dims.size(); ++d) {
      out << "  dim F_{" << cfg.m << "," << d << "} = " << table.dims[d] << '\n';
      if (!cfg.with_bases) continue;
      for (std::size_t r = 0; r < table.bases[d].rows(); ++r) out << "    " << table.element(d, r).to_string() << '\n';
    }
  }
  return kOk;
}

int cmd_harmonic_basis(const RunConfig& cfg, const Polytope& p, const ComputeBudget& budget, std::ostream& out) {
  const LatticePointSet z = lattice_points(dilate(p, Rational(static_cast<long>(cfg.m))), budget);
  if (z.empty()) throw std::invalid_argument("the dilation has no lattice points");
  const HarmonicBasis basis = cfg.method == "dual" ? harmonic_dual(z, budget) : harmonic_basis(z, budget);
  if (cfg.format == Format::json) {
    out << to_json(basis).dump(2) << '\n';
  } else if (cfg.format == Format::csv) {
    out << "m,d,dim\n";
    for (std::size_t d = 0; d < basis.graded_parts.size(); ++d)
      out << cfg.m << ',' << d << ',' << basis.graded_parts[d].size() << '\n';
  } else {
    for (std::size_t d = 0; d < basis.graded_parts.size(); ++d) {
      out << "degree " << d << " (dim " << basis.graded_parts[d].size() << ")\n";
      for (const auto& f : basis.graded_parts[d]) out << "  " << f.to_string() << '\n';
    }
  }
  return kOk;
}

int cmd_generators(const RunConfig& cfg, const Polytope& p, const ComputeBudget& budget, std::ostream& out) {
  const GeneratorReport report = minimal_generators(p, cfg.m_max, budget);
  if (cfg.format == Format::json) {
    out << to_json(report).dump(2) << '\n';
  } else if (cfg.format == Format::csv) {
    out << "m,d,count\n";
    for (const auto& c : report.counts) out << c.m << ',' << c.d << ',' << c.count << '\n';
  } else {
    for (const auto& c : report.counts) out << "(" << c.m << "," << c.d << "): " << c.count << '\n';
    for (const auto& g : report.generators) out << "  [" << g.m << "," << g.d << "] " << g.poly.to_string() << '\n';
    out << "closure violations: " << report.closure_violations << '\n';
  }
  return report.closure_violations == 0 ? kOk : kCheckFailed;
}

int cmd_gk_check(const RunConfig& cfg, const Polytope& p, const ComputeBudget& budget, std::ostream& out) {
  gk::GKOptions options;
  options.m_max = cfg.gk_m_max;
  options.k_max = cfg.k_max;
  options.property3_m_max = cfg.p3_m_max;
  options.growth_m_max = cfg.growth_m_max;
  options.var = cfg.var;
  options.budget = budget;
  const gk::GKReport report = gk::gk_report(p, cfg.polytope_path, options);
  if (cfg.format == Format::json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "polytope: " << report.polytope_id << '\n';
    out << "max vanishing order\n";
    for (const auto& v : report.vanishing)
      out << "  m=" << v.m << "  order=" << v.order << "  verified=" << v.verified_order << "  witness "
          << v.witness.to_string() << '\n';
    out << "divisibility of F_{m,d} for d >= ceil(104m/105)\n";
    for (const auto& r : report.divisibility)
      out << "  (m,d)=(" << r.m << "," << r.d << ")  " << (r.divisible ? "divisible" : "NOT divisible") << '\n';
    out << "property-3 search\n";
    for (const auto& r : report.property3) {
      out << "  (m,d)=(" << r.m << "," << r.d << ")  ";
      if (r.hit) {
        out << "found k=" << r.hit->k << "  witness " << r.hit->witness.to_string() << '\n';
      } else {
        out << "inconclusive up to k=" << r.k_max << '\n';
      }
    }
    out << "generator growth\n";
    for (const auto& g : report.growth)
      out << "  m=" << g.m << "  new=" << g.new_generators << "  alpha=" << (g.alpha ? to_string(*g.alpha) : "-")
          << '\n';
    if (!report.complete) out << "aborted at stage '" << report.aborted_stage << "' (compute budget)\n";
  }
  return report.complete ? kOk : kBudgetExceeded;
}

int cmd_lemma32(const RunConfig& cfg, const Polytope& p, const ComputeBudget& budget, std::ostream& out) {
  const LatticePointSet z = lattice_points(dilate(p, Rational(static_cast<long>(cfg.m))), budget);
  const Lemma32Report report = lemma32_check(z, cfg.trials, cfg.seed);
  if (cfg.format == Format::json) {
    out << Json{{"points", z.size()},
                {"trials", report.trials},
                {"skipped", report.skipped},
                {"mismatches", report.mismatches},
                {"failures", report.failures}}
               .dump(2)
        << '\n';
  } else {
    out << "points: " << z.size() << "  trials: " << report.trials << "  skipped: " << report.skipped
        << "  mismatches: " << report.mismatches << '\n';
    for (const auto& f : report.failures) out << "  " << f << '\n';
  }
  return report.mismatches == 0 ? kOk : kCheckFailed;
}

int cmd_mult_check(const RunConfig& cfg, const Polytope& p, const ComputeBudget& budget, std::ostream& out) {
  const MultiplicativityReport report = multiplicativity_check(p, cfg.mult_m_max, cfg.samples, cfg.seed, budget);
  if (cfg.format == Format::json) {
    out << Json{{"samples", report.samples},
                {"filtration_violations", report.filtration_violations},
                {"lowest_part_violations", report.lowest_part_violations},
                {"failures", report.failures}}
               .dump(2)
        << '\n';
  } else {
    out << "samples: " << report.samples << "  filtration violations: " << report.filtration_violations
        << "  lowest-part violations: " << report.lowest_part_violations << '\n';
    for (const auto& f : report.failures) out << "  " << f << '\n';
  }
  return report.violations() == 0 ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("QEHRHART_CACHE_DIR")) cfg.cache_dir = env;

  CLI::App app{"Exact q-Ehrhart series, harmonic spaces and vanishing-order filtrations of polytopes"};
  app.require_subcommand(1);
  const std::map<std::string, Format> formats{{"table", Format::table}, {"csv", Format::csv}, {"json", Format::json}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--polytope,-p", cfg.polytope_path, "Polytope file ({\"dim\": n, \"vertices\": [...]})")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--format,-f", cfg.format, "Output format: table, csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--max-entries", cfg.max_entries, "Abort when a matrix would exceed this many entries (0: no cap)");
  };
  auto with_m = [&](CLI::App* sub) {
    sub->add_option("--m,--dilation", cfg.m, "Dilation factor")->check(CLI::NonNegativeNumber);
  };
  auto with_seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Random seed"); };

  auto* points = app.add_subcommand("points", "List the lattice points of mP");
  common(points);
  with_m(points);

  auto* ehrhart = app.add_subcommand("ehrhart", "Classical Ehrhart counts |mP cap Z^n|");
  common(ehrhart);
  ehrhart->add_option("--mmax", cfg.m_max, "Largest dilation")->check(CLI::NonNegativeNumber);

  auto* qehr = app.add_subcommand("qehrhart", "q-Ehrhart table dim (H_P)_{m,d}");
  common(qehr);
  qehr->add_option("--mmax", cfg.m_max, "Largest dilation")->check(CLI::NonNegativeNumber);
  qehr->add_option("--method", cfg.method, "filtration, harmonic, dual or all")
      ->check(CLI::IsMember({"filtration", "harmonic", "dual", "all"}));
  qehr->add_option("--cache-dir", cfg.cache_dir, "Results cache directory (env QEHRHART_CACHE_DIR)");
  qehr->add_option("--threads", cfg.threads, "Worker threads for per-dilation work")->check(CLI::PositiveNumber);

  auto* filt = app.add_subcommand("filtration", "Vanishing-order filtration of (A_P)_m");
  common(filt);
  with_m(filt);
  filt->add_flag("--bases", cfg.with_bases, "Print a basis of every filtered piece");

  auto* hb = app.add_subcommand("harmonic-basis", "Graded basis of the harmonic space of mP");
  common(hb);
  with_m(hb);
  hb->add_option("--method", cfg.method, "harmonic or dual")->check(CLI::IsMember({"harmonic", "dual"}));

  auto* gens = app.add_subcommand("generators", "Minimal generators of the harmonic algebra up to m_max");
  common(gens);
  gens->add_option("--mmax", cfg.m_max, "Largest dilation")->check(CLI::PositiveNumber);

  auto* gkc = app.add_subcommand("gk-check", "Vanishing, divisibility, property-3 and generator-growth diagnostics");
  common(gkc);
  gkc->add_option("--mmax", cfg.gk_m_max, "Largest dilation for vanishing/divisibility")->check(CLI::PositiveNumber);
  gkc->add_option("--kmax", cfg.k_max, "Property-3 search budget")->check(CLI::PositiveNumber);
  gkc->add_option("--p3-mmax", cfg.p3_m_max, "Run property-3 searches for m up to this")->check(CLI::NonNegativeNumber);
  gkc->add_option("--growth-mmax", cfg.growth_m_max, "Largest m for generator growth (< 2 skips)")
      ->check(CLI::NonNegativeNumber);
  gkc->add_option("--var", cfg.var, "Index of the variable in the divisor x_var - 1 (default 1: y - 1)");

  auto* l32 = app.add_subcommand("lemma32", "Compare lowest parts of exponential and binomial expansions on mP");
  common(l32);
  with_m(l32);
  with_seed(l32);
  l32->add_option("--trials", cfg.trials, "Number of random trials")->check(CLI::PositiveNumber);

  auto* mult = app.add_subcommand("mult-check", "Random multiplicativity checks of the filtration");
  common(mult);
  mult->add_option("--mmax", cfg.mult_m_max, "Largest dilation (>= 2)")->check(CLI::Range(2, 1 << 20));
  with_seed(mult);
  mult->add_option("--samples", cfg.samples, "Number of product samples")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  const ComputeBudget budget{cfg.max_entries};
  try {
    const std::string bytes = read_file(cfg.polytope_path);
    const Polytope p = parse_polytope(bytes);
    if (cfg.subcommand == "points") return cmd_points(cfg, p, budget, out);
    if (cfg.subcommand == "ehrhart") return cmd_ehrhart(cfg, p, out);
    if (cfg.subcommand == "qehrhart") return cmd_qehrhart(cfg, p, bytes, budget, out, err);
    if (cfg.subcommand == "filtration") return cmd_filtration(cfg, p, budget, out);
    if (cfg.subcommand == "harmonic-basis") return cmd_harmonic_basis(cfg, p, budget, out);
    if (cfg.subcommand == "generators") return cmd_generators(cfg, p, budget, out);
    if (cfg.subcommand == "gk-check") return cmd_gk_check(cfg, p, budget, out);
    if (cfg.subcommand == "lemma32") return cmd_lemma32(cfg, p, budget, out);
    if (cfg.subcommand == "mult-check") return cmd_mult_check(cfg, p, budget, out);
    err << "error: unknown subcommand " << cfg.subcommand << '\n';
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "aborted: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace qehrhart::cli
