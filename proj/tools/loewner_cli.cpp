// Command-line front end: builds Loewner-type matrices, checks inertia
// predictions and runs the analysis instruments. Exit codes: 0 ok,
// 1 property violated, 2 usage error.

#include "loewner/loewner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;
using namespace loewner;

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr const char* kPrecisionEnv = "LOEWNER_PRECISION_BITS";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  unsigned precision = 53;
  double zero_tol = 1e-10;
  double residual_tol = 1e-10;
  std::uint64_t seed = 0;
  std::string format;  // empty: subcommand default
  std::string out;

  ToleranceContext tol() const {
    ToleranceContext t;
    t.precision_bits = precision;
    t.zero_rel_tol = zero_tol;
    t.residual_tol = residual_tol;
    t.validate();
    return t;
  }
};

using Table = std::vector<std::vector<std::string>>;  // first row is the header

json inertia_json(const Inertia& in) { return {{"pos", in.pos}, {"zero", in.zero}, {"neg", in.neg}}; }

template <class Real>
json real_json(const Real& v) {
  if constexpr (std::is_same_v<Real, double>) {
    return v;
  } else {
    return to_decimal(v);
  }
}

template <class Real>
std::string real_text(const Real& v) {
  return to_decimal(v);
}

json header(const std::string& command, const Common& c) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"precision_bits", c.precision}};
}

json points_json(const PointConfig& cfg) {
  json arr = json::array();
  if (cfg.has_exact()) {
    for (const auto& q : *cfg.exact()) arr.push_back(to_decimal(q));
  } else {
    for (double p : cfg.points()) arr.push_back(p);
  }
  return arr;
}

void emit(const Common& c, const std::string& default_format, const json& doc, const Table& table) {
  const std::string format = c.format.empty() ? default_format : c.format;
  std::ostringstream os;
  if (format == "json") {
    os << doc.dump(2) << '\n';
  } else {
    for (const auto& row : table) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
  }
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + c.out + "'");
    f << os.str();
  }
}

double parse_nonzero_r(const std::string& text) {
  const double r = parse_real(text);
  if (r == 0) throw InputError("r must be nonzero");
  return r;
}

std::vector<std::size_t> parse_grid_dims(const std::string& text) {
  const auto parts = loewner::detail::split(text, ':');
  if (parts.size() != 2) throw InputError("grid must look like nx:ny");
  std::vector<std::size_t> out;
  for (const auto& p : parts) {
    const double v = parse_real(p);
    if (v < 1 || v != std::floor(v)) throw InputError("grid dimensions must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct BuildArgs {
  std::string points, r, kind = "loewner", q;
};

int run_build(const Common& c, const BuildArgs& a) {
  const double r = parse_real(a.r);
  const auto tol = c.tol();
  json doc = header("build", c);
  doc["kind"] = a.kind;
  doc["r"] = r;
  Table table;
  with_precision(tol.precision_bits, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    Matrix<Real> m;
    if (a.kind == "loewner") {
      m = loewner_matrix<Real>(parse_points(a.points), r).dense();
    } else if (a.kind == "sinh") {
      const auto x = parse_real_list(a.points);
      std::vector<Real> xr;
      for (double v : x) xr.push_back(to_real<Real>(v));
      m = sinh_loewner<Real>(xr, r).dense();
    } else if (a.kind == "power-sum") {
      m = power_sum_matrix<Real>(parse_points(a.points), r).dense();
    } else {
      if (a.q.empty()) throw InputError("--kind cross needs --q");
      m = cross_loewner<Real>(parse_points(a.points), parse_points(a.q), r);
    }
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      std::vector<std::string> text;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        row.push_back(real_json(m(i, j)));
        text.push_back(real_text(m(i, j)));
      }
      rows.push_back(row);
      table.push_back(text);
    }
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    doc["matrix"] = rows;
  });
  emit(c, "json", doc, table);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string points, r, r_range;
};

int run_verify(const Common& c, const VerifyArgs& a) {
  if (a.r.empty() == a.r_range.empty()) throw UsageError("verify needs exactly one of --r or --r-range");
  const auto cfg = parse_points(a.points);
  const auto tol = c.tol();
  std::vector<double> grid;
  if (!a.r.empty()) {
    grid.push_back(parse_nonzero_r(a.r));
  } else {
    grid = range_grid(parse_range(a.r_range));
    for (double r : grid)
      if (r == 0) throw InputError("r-range contains r = 0");
  }
  json doc = header("verify", c);
  doc["n"] = cfg.size();
  doc["points"] = points_json(cfg);
  json results = json::array();
  Table table{{"r", "rule", "pred_pos", "pred_zero", "pred_neg", "pos", "zero", "neg", "match", "precision_bits"}};
  bool all = true;
  for (double r : grid) {
    const auto rep = verify_instance(cfg, r, tol);
    all = all && rep.match;
    results.push_back({{"r", r},
                       {"rule", rule_name(rep.predicted.rule)},
                       {"predicted", inertia_json(rep.predicted.inertia)},
                       {"computed", inertia_json(rep.computed)},
                       {"match", rep.match},
                       {"exact_route", rep.exact_route},
                       {"precision_bits", rep.precision_bits},
                       {"diagnostics", rep.diagnostics}});
    table.push_back({to_decimal(r), rule_name(rep.predicted.rule), std::to_string(rep.predicted.inertia.pos),
                     std::to_string(rep.predicted.inertia.zero), std::to_string(rep.predicted.inertia.neg),
                     std::to_string(rep.computed.pos), std::to_string(rep.computed.zero),
                     std::to_string(rep.computed.neg), rep.match ? "true" : "false",
                     std::to_string(rep.precision_bits)});
    if (!rep.match) {
      std::cerr << "mismatch at r=" << to_decimal(r) << ": predicted " << rep.predicted.inertia << ", computed "
                << rep.computed << (rep.diagnostics.empty() ? "" : " (" + rep.diagnostics + ")") << '\n';
    }
  }
  doc["results"] = results;
  doc["all_match"] = all;
  emit(c, "json", doc, table);
  return all ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string points, r_range, scale = "signed-log", tau;
};

int run_sweep(const Common& c, const SweepArgs& a) {
  const auto cfg = parse_points(a.points);
  const auto range = parse_range(a.r_range);
  FigureOptions opt;
  opt.scaling = a.scale == "none" ? Scaling::kNone : Scaling::kSignedLog;
  if (!a.tau.empty()) opt.tau = parse_real(a.tau);
  if (opt.tau && !(*opt.tau > 0)) throw InputError("--tau must be positive");
  const auto sweep = eigen_trajectories(cfg, range.lo, range.hi, range.steps, c.tol());
  const auto fig = emit_figure1(sweep, opt);
  const auto changes = sign_change_report(sweep);

  Table table{fig.header};
  table.insert(table.end(), fig.rows.begin(), fig.rows.end());
  json doc = header("sweep", c);
  doc["n"] = cfg.size();
  doc["points"] = points_json(cfg);
  doc["scale"] = a.scale;
  doc["columns"] = fig.header;
  doc["rows"] = fig.rows;
  json ch = json::array();
  bool ok = true;
  for (const auto& x : changes) {
    ok = ok && !x.anomalous;
    ch.push_back({{"r_before", x.r_before},
                  {"r_after", x.r_after},
                  {"before", inertia_json(x.before)},
                  {"after", inertia_json(x.after)},
                  {"integer", x.bracketed_integer ? json(*x.bracketed_integer) : json(nullptr)},
                  {"anomalous", x.anomalous}});
    if (x.anomalous) {
      std::cerr << "inertia change between r=" << to_decimal(x.r_before) << " and r=" << to_decimal(x.r_after)
                << " brackets no singular exponent\n";
    }
  }
  for (const auto& p : sweep.points) {
    if (!p.error.empty()) {
      ok = false;
      std::cerr << "r=" << to_decimal(p.r) << ": " << p.error << '\n';
    }
  }
  doc["changes"] = ch;
  doc["under_resolved_steps"] = trajectory_jumps(sweep);
  emit(c, "csv", doc, table);
  return ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct ZerosArgs {
  std::string points, coeffs, r;
  std::size_t grid = 0;
  double lo = 0, hi = 0;
};

int run_zeros(const Common& c, const ZerosArgs& a) {
  const auto cfg = parse_points(a.points);
  const ComboFunction f(cfg, parse_real_list(a.coeffs), parse_real(a.r));
  ZeroScan scan;
  scan.points = a.grid ? a.grid : c.tol().grid_points;
  scan.lo = a.lo;
  scan.hi = a.hi;
  const auto z = count_zeros(f, scan);
  json doc = header("zeros", c);
  doc["n"] = cfg.size();
  doc["r"] = f.r;
  doc["count"] = z.count;
  doc["bound"] = z.bound;
  doc["bound_applies"] = z.bound_applies;
  doc["within_bound"] = z.within_bound;
  doc["ambiguous"] = z.ambiguous;
  json br = json::array();
  Table table{{"lo", "hi"}};
  for (const auto& [lo, hi] : z.brackets) {
    br.push_back({lo, hi});
    table.push_back({to_decimal(lo), to_decimal(hi)});
  }
  doc["brackets"] = br;
  emit(c, "json", doc, table);
  return z.within_bound ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct SsrArgs {
  std::string points, r;
  std::size_t k_max = 0;
};

int run_ssr(const Common& c, const SsrArgs& a) {
  const auto cfg = parse_points(a.points);
  const Exponent r(parse_nonzero_r(a.r));
  const auto rep = ssr_scan_loewner(cfg, r, a.k_max, c.tol());
  json doc = header("ssr", c);
  doc["n"] = cfg.size();
  doc["r"] = r.value();
  json per = json::array();
  Table table{{"k", "positive", "negative", "zero", "sign"}};
  for (const auto& t : rep.per_k) {
    per.push_back({{"k", t.k},
                   {"positive", t.positive},
                   {"negative", t.negative},
                   {"zero", t.zero},
                   {"sign", minor_sign_name(t.sign())}});
    table.push_back({std::to_string(t.k), std::to_string(t.positive), std::to_string(t.negative),
                     std::to_string(t.zero), minor_sign_name(t.sign())});
  }
  doc["per_k"] = per;
  doc["ssr_order"] = rep.ssr_order;
  doc["ssr_class"] = rep.ssr_class();
  doc["minor_precision_bits"] = rep.precision_bits;
  // Expected: SSR_r at r in {1, ..., n-1}, full SSR for every other r.
  const std::size_t scanned = rep.per_k.size();
  const auto m = r.integer_value();
  const bool singular = m && *m >= 1 && *m < static_cast<long>(cfg.size());
  const bool ok = rep.ssr_order >= (singular ? std::min<std::size_t>(scanned, static_cast<std::size_t>(*m)) : scanned);
  doc["expected_pattern"] = ok;
  emit(c, "json", doc, table);
  return ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

int run_det_id(const Common& c, const std::string& points) {
  const auto cfg = parse_points(points);
  const auto rep = det_identity_check(cfg);
  json doc = header("det-id", c);
  doc["points"] = points_json(cfg);
  doc["L3"] = {{"closed_form", to_decimal(rep.closed_L3)}, {"exact", to_decimal(rep.exact_L3)}, {"match", rep.match_L3}};
  doc["L4"] = {{"closed_form", to_decimal(rep.closed_L4)}, {"exact", to_decimal(rep.exact_L4)}, {"match", rep.match_L4}};
  Table table{{"matrix", "closed_form", "exact", "match"},
              {"L3", to_decimal(rep.closed_L3), to_decimal(rep.exact_L3), rep.match_L3 ? "true" : "false"},
              {"L4", to_decimal(rep.closed_L4), to_decimal(rep.exact_L4), rep.match_L4 ? "true" : "false"}};
  emit(c, "json", doc, table);
  return rep.match_L3 && rep.match_L4 ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct DkArgs {
  std::string points, r;
  std::size_t samples = 100;
};

int run_dk(const Common& c, const DkArgs& a) {
  const auto cfg = parse_points(a.points);
  const Exponent r(parse_real(a.r));
  const auto tol = c.tol();
  const auto probe = dk_norm_probe(cfg, r, a.samples, c.seed);
  const bool attains = probe.bound >= probe.reference * (1 - tol.residual_tol);
  const bool monotone_range = r.value() > 0 && r.value() <= 1;
  const bool bounded = !monotone_range || probe.bound <= probe.reference * (1 + tol.residual_tol);
  json doc = header("dk", c);
  doc["r"] = r.value();
  doc["seed"] = c.seed;
  doc["samples"] = probe.samples;
  doc["bound"] = probe.bound;
  doc["reference"] = probe.reference;
  doc["ratio"] = probe.reference > 0 ? probe.bound / probe.reference : 0.0;
  doc["norm_equals_reference_expected"] = monotone_range;
  Table table{{"r", "samples", "bound", "reference"},
              {to_decimal(r.value()), std::to_string(probe.samples), to_decimal(probe.bound),
               to_decimal(probe.reference)}};
  emit(c, "json", doc, table);
  return attains && bounded ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

struct ComplexArgs {
  std::string points, region, grid = "8:8";
  int retries = 3;
};

int run_complex(const Common& c, const ComplexArgs& a) {
  const auto cfg = parse_points(a.points);
  const auto parts = loewner::detail::split(a.region, ':');
  if (parts.size() != 4) throw InputError("region must look like re_min:re_max:im_min:im_max");
  const Region region{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]), parse_real(parts[3])};
  const auto dims = parse_grid_dims(a.grid);
  if (a.retries < 0) throw InputError("--retries must be non-negative");
  const auto scan = complex_zero_scan(cfg, region, dims[0], dims[1], a.retries);
  json doc = header("complex-zeros", c);
  doc["region"] = {scan.region.re_min, scan.region.re_max, scan.region.im_min, scan.region.im_max};
  doc["retries"] = scan.retries;
  doc["boundary_clean"] = scan.boundary_clean;
  doc["total_winding"] = scan.total_winding;
  json cells = json::array();
  Table table{{"re_min", "re_max", "im_min", "im_max", "winding", "estimate_re", "estimate_im"}};
  for (const auto& z : scan.cells) {
    cells.push_back({{"cell", {z.cell.re_min, z.cell.re_max, z.cell.im_min, z.cell.im_max}},
                     {"winding", z.winding},
                     {"estimate", {z.estimate.real(), z.estimate.imag()}}});
    table.push_back({to_decimal(z.cell.re_min), to_decimal(z.cell.re_max), to_decimal(z.cell.im_min),
                     to_decimal(z.cell.im_max), std::to_string(z.winding), to_decimal(z.estimate.real()),
                     to_decimal(z.estimate.imag())});
  }
  doc["cells"] = cells;
  emit(c, "json", doc, table);
  if (!scan.boundary_clean) std::cerr << "a zero stayed on cell boundaries after all retries\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_pr_compare(const Common& c, const std::string& points, const std::string& r_text) {
  const auto cfg = parse_points(points);
  const Exponent r(parse_real(r_text));
  const auto cmp = pr_compare(cfg, r, c.tol());
  json doc = header("pr-compare", c);
  doc["r"] = r.value();
  doc["power_sum"] = inertia_json(cmp.power_sum);
  doc["loewner_next"] = inertia_json(cmp.loewner_next);
  doc["match"] = cmp.match;
  doc["exact"] = cmp.exact;
  doc["precision_bits_used"] = cmp.precision_bits;
  Table table{{"r", "power_sum", "loewner_next", "match"},
              {to_decimal(r.value()), cmp.power_sum.str(), cmp.loewner_next.str(), cmp.match ? "true" : "false"}};
  emit(c, "json", doc, table);
  return cmp.match ? kExitOk : kExitViolation;
}

unsigned default_precision() {
  const char* env = std::getenv(kPrecisionEnv);
  if (!env || !*env) return 53;
  const double v = parse_real(env);
  if (v < 53 || v > 1 << 20 || v != std::floor(v)) {
    throw UsageError(std::string(kPrecisionEnv) + " must be an integer >= 53");
  }
  return static_cast<unsigned>(v);
}

}  // namespace

int main(int argc, char** argv) {
  Common common;
  try {
    common.precision = default_precision();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Inertia of Loewner matrices of power functions"};
  app.require_subcommand(1);
  app.add_option("--precision", common.precision, "working precision in bits (>= 53)")
      ->check(CLI::Range(53U, 1U << 20));
  app.add_option("--zero-tol", common.zero_tol, "relative zero threshold at 53 bits")->check(CLI::PositiveNumber);
  app.add_option("--residual-tol", common.residual_tol, "residual tolerance at 53 bits")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "random seed");
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", common.out, "output file (default stdout)");

  std::function<int()> action;

  BuildArgs build;
  auto* b = app.add_subcommand("build", "print a matrix")->fallthrough();
  b->add_option("--points", build.points, "points (or x values for sinh)")->required();
  b->add_option("--r", build.r, "exponent")->required();
  b->add_option("--kind", build.kind)->check(CLI::IsMember({"loewner", "sinh", "power-sum", "cross"}));
  b->add_option("--q", build.q, "second point list for --kind cross");
  b->callback([&] { action = [&] { return run_build(common, build); }; });

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "compare computed and predicted inertia")->fallthrough();
  v->add_option("--points", verify.points)->required();
  auto* vr = v->add_option("--r", verify.r, "single exponent");
  v->add_option("--r-range", verify.r_range, "a:b:steps")->excludes(vr);
  v->callback([&] { action = [&] { return run_verify(common, verify); }; });

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "eigenvalue trajectories as CSV")->fallthrough();
  s->add_option("--points", sweep.points)->required();
  s->add_option("--r-range", sweep.r_range, "a:b:steps")->required();
  s->add_option("--scale", sweep.scale)->check(CLI::IsMember({"signed-log", "none"}));
  s->add_option("--tau", sweep.tau, "signed-log scale");
  s->callback([&] { action = [&] { return run_sweep(common, sweep); }; });

  ZerosArgs zeros;
  auto* z = app.add_subcommand("zeros", "count zeros of a divided-difference combination")->fallthrough();
  z->add_option("--points", zeros.points)->required();
  z->add_option("--coeffs", zeros.coeffs)->required();
  z->add_option("--r", zeros.r)->required();
  z->add_option("--grid", zeros.grid, "grid points");
  z->add_option("--lo", zeros.lo, "scan lower end (default min(p)/100)");
  z->add_option("--hi", zeros.hi, "scan upper end (default 100 max(p))");
  z->callback([&] { action = [&] { return run_zeros(common, zeros); }; });

  SsrArgs ssr;
  auto* q = app.add_subcommand("ssr", "sign pattern of all minors")->fallthrough();
  q->add_option("--points", ssr.points)->required();
  q->add_option("--r", ssr.r)->required();
  q->add_option("--k-max", ssr.k_max, "largest minor order (0 = all)");
  q->callback([&] { action = [&] { return run_ssr(common, ssr); }; });

  std::string det_points;
  auto* d = app.add_subcommand("det-id", "closed-form determinants at three points")->fallthrough();
  d->add_option("--points", det_points)->required();
  d->callback([&] { action = [&] { return run_det_id(common, det_points); }; });

  DkArgs dk;
  auto* k = app.add_subcommand("dk", "sampled norm of the Frechet derivative of t^r")->fallthrough();
  k->add_option("--points", dk.points)->required();
  k->add_option("--r", dk.r)->required();
  k->add_option("--samples", dk.samples)->check(CLI::PositiveNumber);
  k->callback([&] { action = [&] { return run_dk(common, dk); }; });

  ComplexArgs cz;
  auto* x = app.add_subcommand("complex-zeros", "winding numbers of det L_z on a grid")->fallthrough();
  x->add_option("--points", cz.points)->required();
  x->add_option("--region", cz.region, "re_min:re_max:im_min:im_max")->required();
  x->add_option("--grid", cz.grid, "nx:ny");
  x->add_option("--retries", cz.retries);
  x->callback([&] { action = [&] { return run_complex(common, cz); }; });

  std::string pr_points, pr_r;
  auto* p = app.add_subcommand("pr-compare", "inertia of [(p_i+p_j)^r] against L_{r+1}")->fallthrough();
  p->add_option("--points", pr_points)->required();
  p->add_option("--r", pr_r)->required();
  p->callback([&] { action = [&] { return run_pr_compare(common, pr_points, pr_r); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitViolation;
  }
}
