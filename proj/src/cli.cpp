#include "fraclap/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "fraclap/bounds.hpp"
#include "fraclap/checks.hpp"
#include "fraclap/dirichlet_operator.hpp"
#include "fraclap/domain.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/fourier_verify.hpp"
#include "fraclap/heat_kernel.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/kernel_table.hpp"
#include "fraclap/reports.hpp"
#include "fraclap/spectrum.hpp"

namespace fraclap::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct DomainOptions {
  std::string spec;
  std::string file;
  int dim = 2;
  std::uint64_t seed = 0;
  std::size_t max_size = 4000;
};

struct QuadOptions {
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<int> grid;
  std::optional<double> time_split;

  QuadratureSpec resolve(int dim) const {
    auto q = QuadratureSpec::for_dimension(dim);
    if (rel_tol) q.rel_tol = *rel_tol;
    if (abs_tol) q.abs_tol = *abs_tol;
    if (grid) q.fourier_grid_per_dim = *grid;
    if (time_split) q.time_split = *time_split;
    q.validate();
    return q;
  }
};

int parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw ParseError("invalid integer '" + s + "' in " + what);
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw ParseError("invalid number '" + s + "' in " + what);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_double(p, what));
  if (out.empty()) throw ParseError(what + " is empty");
  return out;
}

// "a:b:step" or "a,b,c".
std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  if (s.find(':') != std::string::npos) {
    const auto p = split(s, ':');
    if (p.size() != 3) throw ParseError("--sizes range must be start:stop:step");
    const int a = parse_int(p[0], "--sizes"), b = parse_int(p[1], "--sizes"), st = parse_int(p[2], "--sizes");
    if (st <= 0 || a > b) throw ParseError("--sizes range is empty or has a non-positive step");
    for (int v = a; v <= b; v += st) out.push_back(v);
  } else {
    for (const auto& p : split(s, ',')) out.push_back(parse_int(p, "--sizes"));
  }
  if (out.empty()) throw ParseError("--sizes is empty");
  return out;
}

Domain domain_from_spec(const std::string& spec, int dim, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("domain spec '" + spec + "' must look like name:parameter");
  const std::string name = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  try {
    if (name == "path") return make_path(parse_int(arg, "path"));
    if (name == "lshape") return make_l_shape(parse_int(arg, "lshape"));
    if (name == "random") return make_random_connected(dim, parse_int(arg, "random"), seed);
    if (name == "box") {
      std::vector<int> sides;
      for (const auto& p : split(arg, 'x')) sides.push_back(parse_int(p, "box"));
      return make_box(static_cast<int>(sides.size()), sides);
    }
  } catch (const std::domain_error& e) {
    throw ParseError(std::string("domain spec '") + spec + "': " + e.what());
  }
  throw ParseError("unknown domain family '" + name + "' (expected path, box, lshape or random)");
}

Domain resolve_domain(const DomainOptions& o) {
  if (o.spec.empty() == o.file.empty()) throw ParseError("give exactly one of --domain or --domain-file");
  Domain d = o.file.empty() ? domain_from_spec(o.spec, o.dim, o.seed) : read_domain(o.file);
  if (d.size() > o.max_size) {
    throw ParseError("domain has " + std::to_string(d.size()) + " vertices, above --max-size " +
                     std::to_string(o.max_size));
  }
  return d;
}

std::string domain_label(const DomainOptions& o) { return o.file.empty() ? o.spec : o.file; }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

void add_domain_options(CLI::App* app, DomainOptions& o) {
  app->add_option("--domain", o.spec, "Generated domain: path:N, box:AxB[xC], lshape:ARM or random:N");
  app->add_option("--domain-file", o.file, "JSON domain file");
  app->add_option("--dim", o.dim, "Dimension for random domains")->check(CLI::Range(1, 3));
  app->add_option("--seed", o.seed, "Seed for random domains and sampled probes");
  app->add_option("--max-size", o.max_size, "Largest accepted |Omega|");
}

void add_quad_options(CLI::App* app, QuadOptions& q) {
  app->add_option("--rel-tol", q.rel_tol, "Relative quadrature tolerance");
  app->add_option("--abs-tol", q.abs_tol, "Absolute quadrature tolerance");
  app->add_option("--grid", q.grid, "Fourier grid points per dimension");
  app->add_option("--time-split", q.time_split, "Split point of the time integral");
}

// ---------------------------------------------------------------- kernel

int cmd_kernel(int dim, double alpha_value, const std::string& offsets, const std::string& format,
               const QuadOptions& qo, const std::string& output, std::ostream& out) {
  const AlphaParam alpha(alpha_value);
  const auto quad = qo.resolve(dim);
  std::vector<int> flat;
  for (const auto& p : split(offsets, ',')) flat.push_back(parse_int(p, "--offsets"));
  if (flat.empty() || flat.size() % static_cast<std::size_t>(dim) != 0) {
    throw ParseError("--offsets must hold a multiple of --dim coordinates");
  }
  struct Row {
    Point v;
    QuadratureValue time, fourier;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(dim)) {
    Point v(flat.begin() + static_cast<std::ptrdiff_t>(i), flat.begin() + static_cast<std::ptrdiff_t>(i + dim));
    if (l1_norm(v) == 0) throw ParseError("--offsets contains the zero offset");
    rows.push_back({v, q_alpha_time_integral(v, alpha, quad), q_alpha_fourier(v, alpha, quad)});
  }
  std::ostringstream os;
  if (format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
      doc.push_back({{"offset", r.v},
                     {"q_time", r.time.value},
                     {"q_fourier", r.fourier.value},
                     {"abs_diff", std::abs(r.time.value - r.fourier.value)}});
    }
    os << doc.dump(2) << '\n';
  } else {
    for (int i = 0; i < dim; ++i) os << 'v' << i << ',';
    os << "q_time,q_fourier,abs_diff\n";
    for (const auto& r : rows) {
      for (int c : r.v) os << c << ',';
      os << format_sig(r.time.value, 17) << ',' << format_sig(r.fourier.value, 17) << ','
         << format_sig(std::abs(r.time.value - r.fourier.value), 3) << '\n';
    }
  }
  emit(os.str(), output, out);
  return kOk;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const DomainOptions& dom, double alpha_value, const QuadOptions& qo, const std::string& format,
                 const std::string& output, const std::string& vectors_path, const std::string& matrix_path,
                 bool skip_ground_state, std::ostream& out, std::ostream& err) {
  const Domain domain = resolve_domain(dom);
  const AlphaParam alpha(alpha_value);
  const auto op = assemble(domain, alpha, qo.resolve(domain.dim()));
  const auto spec = eigen_decompose(op);
  const auto validation = validate_spectrum(spec, skip_ground_state);
  if (format == "json") {
    nlohmann::json doc;
    doc["omega_size"] = domain.size();
    doc["alpha"] = alpha.value();
    doc["eigenvalues"] = std::vector<double>(spec.eigenvalues.data(), spec.eigenvalues.data() + spec.size());
    doc["residual_norm"] = spec.residual_norm;
    doc["validation"] = nlohmann::json::parse(validation.to_json());
    emit(doc.dump(2) + "\n", output, out);
  } else {
    emit(spectrum_csv(spec), output, out);
  }
  if (!vectors_path.empty()) write_text(vectors_path, eigenvectors_csv(domain, spec));
  if (!matrix_path.empty()) write_text(matrix_path, matrix_csv(op));
  if (!validation.passed()) {
    for (const auto& name : validation.failures()) err << "spectrum check failed: " << name << '\n';
    return kViolation;
  }
  return kOk;
}

// ---------------------------------------------------------------- bounds / plot

BoundReport bound_report_for(const Domain& domain, const AlphaParam& alpha, const QuadratureSpec& quad) {
  const auto op = assemble(domain, alpha, quad);
  return verify_bounds(domain, alpha, eigen_decompose(op), boundary_term(op));
}

std::string plot_title(const std::string& label, const BoundReport& rep) {
  return label + ", alpha = " + format_sig(rep.alpha, 6) + ", |Omega| = " + std::to_string(rep.omega_size);
}

int cmd_bounds(const DomainOptions& dom, double alpha_value, const QuadOptions& qo, const std::string& format,
               const std::string& output, const std::string& plot_path, std::ostream& out, std::ostream& err) {
  const Domain domain = resolve_domain(dom);
  const AlphaParam alpha(alpha_value);
  const auto rep = bound_report_for(domain, alpha, qo.resolve(domain.dim()));
  emit(format == "json" ? bound_report_json(rep) : bound_report_csv(rep), output, out);
  if (!plot_path.empty()) write_text(plot_path, bounds_svg(rep, plot_title(domain_label(dom), rep)));
  if (!rep.passed) {
    err << "bound verification: " << rep.violations << " eligible inequalities violated\n";
    return kViolation;
  }
  return kOk;
}

int cmd_plot(const DomainOptions& dom, double alpha_value, const QuadOptions& qo, const std::string& output,
             std::ostream& out) {
  const Domain domain = resolve_domain(dom);
  const AlphaParam alpha(alpha_value);
  const auto rep = bound_report_for(domain, alpha, qo.resolve(domain.dim()));
  emit(bounds_svg(rep, plot_title(domain_label(dom), rep)), output, out);
  return kOk;
}

// ---------------------------------------------------------------- verify

void heat_checks(CheckReport& rep) {
  // Symmetry and positivity on a few sample pairs.
  bool symmetric = true, positive = true;
  for (double t : {0.05, 0.5, 1.0, 3.0}) {
    for (int m = -6; m <= 6; ++m) {
      const int x[2] = {m, 1}, y[2] = {-2, m / 2};
      const double a = heat_kernel(t, x, y), b = heat_kernel(t, y, x);
      symmetric = symmetric && a == b;
      positive = positive && a > 0.0;
    }
  }
  rep.add({"heat/symmetry", symmetric, 0.0, 0.0, false, ""});
  rep.add({"heat/positivity", positive, 0.0, 0.0, false, ""});

  double worst_mass = 0.0;
  for (int dim = 1; dim <= 2; ++dim) {
    for (double t : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const int M = heat_mass_cutoff(t, dim, 1e-12);
      double one = 0.0;
      for (int m = -M; m <= M; ++m) one += heat_kernel_1d(t, m);
      worst_mass = std::max(worst_mass, std::abs(std::pow(one, dim) - 1.0));
    }
  }
  rep.add({"heat/mass", worst_mass <= 1e-10, worst_mass, 1e-10, false, ""});

  double worst_sg = 0.0;
  for (double s : {0.3, 0.7}) {
    for (double t : {0.3, 0.7}) {
      for (int m = -5; m <= 5; ++m) {
        double conv = 0.0;
        for (int k = -40; k <= 40; ++k) conv += heat_kernel_1d(s, k) * heat_kernel_1d(t, m - k);
        worst_sg = std::max(worst_sg, std::abs(heat_kernel_1d(s + t, m) - conv));
      }
    }
  }
  rep.add({"heat/semigroup", worst_sg <= 1e-10, worst_sg, 1e-10, false, ""});
}

void domain_checks(CheckReport& rep, const std::string& prefix, const Domain& domain, const AlphaParam& alpha,
                   const QuadratureSpec& quad, bool skip_ground_state, std::mt19937_64& rng) {
  const int d = domain.dim();
  const int n = static_cast<int>(domain.size());
  auto add = [&](std::string name, bool ok, double measured, double tol, std::string detail = "") {
    rep.add({prefix + name, ok, measured, tol, false, std::move(detail)});
  };

  // Dual-method kernel agreement over every offset occurring in Omega.
  KernelTable fourier(d, alpha, quad);
  const auto op = assemble(domain, fourier, KernelMethod::fourier);
  KernelTable timed(d, alpha, quad);
  const auto op_time = assemble(domain, timed, KernelMethod::time_integral);
  double worst_dual = 0.0;
  for (const auto& [key, entry] : timed.entries()) {
    worst_dual = std::max(worst_dual, std::abs(entry.value - fourier.at(key)) / entry.value);
  }
  add("kernel/dual_method", worst_dual <= 1e-8, worst_dual, 1e-8);

  // Matrix invariants.
  const auto& A = op.entries;
  bool sym = true, diag = true, neg = true, rows = true;
  for (int i = 0; i < n; ++i) {
    diag = diag && A(i, i) == op.total_mass;
    rows = rows && A.row(i).sum() > 0.0;
    for (int j = 0; j < n; ++j) {
      sym = sym && A(i, j) == A(j, i);
      if (i != j) neg = neg && A(i, j) < 0.0;
    }
  }
  add("matrix/symmetric", sym, 0.0, 0.0);
  add("matrix/constant_diagonal", diag, op.total_mass, 0.0);
  add("matrix/negative_off_diagonal", neg, 0.0, 0.0);
  add("matrix/positive_row_sums", rows, 0.0, 0.0);
  const auto boundary = boundary_term(op);
  const double off_sum = (A - op.total_mass * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().sum();
  const double bdiff = std::abs(n * op.total_mass - off_sum - boundary.value) / boundary.value;
  add("matrix/boundary_identity", boundary.value > 0.0 && bdiff <= 1e-10, bdiff, 1e-10);

  // Spectrum.
  const auto spec = eigen_decompose(op);
  auto sv = validate_spectrum(spec, skip_ground_state);
  for (auto& c : sv.checks) c.name = prefix + "spectrum/" + c.name;
  rep.append(sv);
  const double trace = n * op.total_mass;
  const double trace_err = std::abs(spec.eigenvalues.sum() - trace) / trace;
  add("spectrum/trace", trace_err <= 1e-8, trace_err, 1e-8);

  // Fourier side.
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> cube(-kPi, kPi);
  Eigen::VectorXcd u(n);
  for (int i = 0; i < n; ++i) u[i] = {gauss(rng), gauss(rng)};
  const double pl = plancherel_check(domain, u);
  add("fourier/plancherel", pl <= 1e-12, pl, 1e-12);
  const auto fc = form_check(op_time, u, quad);
  add("fourier/form", fc.rel_error <= 1e-6, fc.rel_error, 1e-6);

  double worst_hz = std::numeric_limits<double>::infinity();
  std::vector<double> z(static_cast<std::size_t>(d));
  bool hz_ok = true;
  for (int s = 0; s < 20; ++s) {
    for (auto& c : z) c = cube(rng);
    const auto hz = hz_bound_check(op, boundary, z);
    worst_hz = std::min(worst_hz, hz.slack / hz.rhs);
    hz_ok = hz_ok && hz.slack >= -1e-8 * hz.rhs;
  }
  add("fourier/hz_bound", hz_ok, worst_hz, -1e-8, "minimum slack / rhs over 20 random z");

  // Bounds and the integrated lemma.
  const auto bounds = verify_bounds(domain, alpha, spec, boundary);
  add("bounds/theorem", bounds.passed, bounds.violations, 0.0,
      bounds.lower_vacuous ? "no eligible k for the lower bound" : "");
  if (d <= 3 && n >= 2) {
    std::uniform_int_distribution<int> pick_k(1, n - 1);
    std::uniform_real_distribution<double> pick_r(0.0, kPi);
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 20; ++s) {
      const int k = pick_k(rng);
      const double r = kPi - pick_r(rng);  // (0, pi]
      const auto l5 = lemma5_check(domain, alpha, spec, boundary, k, r);
      worst = std::min(worst, l5.slack / l5.scale);
      ok = ok && l5.slack >= -1e-8 * l5.scale;
    }
    add("bounds/lemma5", ok, worst, -1e-8, "minimum slack / scale over 20 random (k, R)");
  } else {
    rep.add({prefix + "bounds/lemma5", true, 0.0, 0.0, true, "needs d <= 3 and |Omega| >= 2"});
  }
}

void minorant_checks(CheckReport& rep, const AlphaParam& alpha) {
  for (int d = 1; d <= 2; ++d) {
    const int pts = 41;
    const int total = d == 1 ? pts : pts * pts;
    double worst = std::numeric_limits<double>::infinity();
    for (int c = 0; c < total; ++c) {
      double z[2] = {-kPi + 2.0 * kPi * (c % pts) / (pts - 1), -kPi + 2.0 * kPi * (c / pts) / (pts - 1)};
      const std::span<const double> zs(z, static_cast<std::size_t>(d));
      worst = std::min(worst, std::pow(phi_symbol(zs), alpha.half()) - phi_minorant(zs, alpha));
    }
    rep.add({"alpha=" + format_sig(alpha.value(), 6) + "/d=" + std::to_string(d) + "/minorant", worst >= 0.0,
             worst, 0.0, false, "min of Phi^{alpha/2} - phi over the 41^d grid"});
  }
}

int cmd_verify(const DomainOptions& dom, const std::string& alphas, const QuadOptions& qo, bool skip_ground_state,
               const std::string& output, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, Domain>> domains;
  if (dom.spec.empty() && dom.file.empty()) {
    domains.emplace_back("path:20", make_path(20));
    const int box[] = {6, 6};
    domains.emplace_back("box:6x6", make_box(2, box));
    domains.emplace_back("lshape:3", make_l_shape(3));
  } else {
    domains.emplace_back(domain_label(dom), resolve_domain(dom));
  }
  std::vector<AlphaParam> alpha_list;
  for (double a : parse_double_list(alphas, "--alpha")) alpha_list.emplace_back(a);

  CheckReport rep;
  heat_checks(rep);
  std::mt19937_64 rng(dom.seed);
  for (const auto& alpha : alpha_list) {
    minorant_checks(rep, alpha);
    for (const auto& [label, domain] : domains) {
      const std::string prefix = label + "/alpha=" + format_sig(alpha.value(), 6) + "/";
      domain_checks(rep, prefix, domain, alpha, qo.resolve(domain.dim()), skip_ground_state, rng);
    }
  }
  emit(rep.to_json(), output, out);
  if (!rep.passed()) {
    for (const auto& name : rep.failures()) err << "check failed: " << name << '\n';
    return kViolation;
  }
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepItem {
  std::string family;
  int param = 0;
  double alpha = 0.0;
};

struct SweepRow {
  int size = 0;
  double lambda1 = 0.0;
  double gap_upper_avg = 0.0, gap_upper_next = 0.0, gap_lower = 0.0;
  double boundary = 0.0;
  double seconds = 0.0;
  bool passed = true;
};

double mean_or_nan(double sum, int count) {
  return count ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

SweepRow sweep_one(const SweepItem& item, int dim, std::uint64_t seed, const QuadOptions& qo) {
  const auto start = std::chrono::steady_clock::now();
  Domain domain = [&] {
    if (item.family == "path") return make_path(item.param);
    if (item.family == "lshape") return make_l_shape(item.param);
    if (item.family == "random") return make_random_connected(dim, item.param, seed);
    const std::vector<int> sides(static_cast<std::size_t>(dim), item.param);
    return make_box(dim, sides);
  }();
  const AlphaParam alpha(item.alpha);
  const auto op = assemble(domain, alpha, qo.resolve(domain.dim()));
  const auto spec = eigen_decompose(op);
  const auto boundary = boundary_term(op);
  const auto rep = verify_bounds(domain, alpha, spec, boundary);

  SweepRow row;
  row.size = static_cast<int>(domain.size());
  row.lambda1 = spec.eigenvalues[0];
  row.boundary = boundary.value;
  row.passed = rep.passed;
  double su = 0, sn = 0, sl = 0;
  int cu = 0, cn = 0, cl = 0;
  for (const auto& r : rep.rows) {
    if (r.eligible_upper_avg) su += r.margin_upper_avg / std::abs(r.upper_avg), ++cu;
    if (r.eligible_upper_next) sn += r.margin_upper_next / std::abs(r.upper_next), ++cn;
    if (r.eligible_lower) sl += r.margin_lower / std::abs(r.avg), ++cl;
  }
  row.gap_upper_avg = mean_or_nan(su, cu);
  row.gap_upper_next = mean_or_nan(sn, cn);
  row.gap_lower = mean_or_nan(sl, cl);
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACLAP_THREADS")) {
    const int cap = parse_int(env, "FRACLAP_THREADS");
    if (cap < 1) throw ParseError("FRACLAP_THREADS must be >= 1");
    n = std::min(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

int cmd_sweep(const std::string& family, const std::string& sizes, const std::string& alphas, int dim,
              std::uint64_t seed, const QuadOptions& qo, bool timing, const std::string& output,
              std::ostream& out, std::ostream& err) {
  if (family != "path" && family != "box" && family != "lshape" && family != "random") {
    throw ParseError("--family must be path, box, lshape or random");
  }
  const auto params = parse_sizes(sizes);
  const auto alpha_values = parse_double_list(alphas, "--alpha");
  for (double a : alpha_values) (void)AlphaParam(a);
  std::vector<SweepItem> items;
  for (int p : params) {
    for (double a : alpha_values) items.push_back({family, p, a});
  }

  // Workers claim items by index; results land in their own slots, so the
  // output order never depends on scheduling.
  std::vector<SweepRow> rows(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      try {
        rows[i] = sweep_one(items[i], dim, seed, qo);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = worker_count(items.size());
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ostringstream os;
  os << "family,param,dim,alpha,size,lambda_1,gap_upper_avg,gap_upper_next,gap_lower,boundary";
  if (timing) os << ",runtime_s";
  os << '\n';
  bool all_pass = true;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    const auto& r = rows[i];
    const int row_dim = it.family == "path" ? 1 : it.family == "lshape" ? 2 : dim;
    auto f = [](double v) { return format_sig(v, 12); };
    os << it.family << ',' << it.param << ',' << row_dim << ',' << f(it.alpha) << ',' << r.size << ','
       << f(r.lambda1) << ',' << f(r.gap_upper_avg) << ',' << f(r.gap_upper_next) << ',' << f(r.gap_lower)
       << ',' << f(r.boundary);
    if (timing) os << ',' << format_sig(r.seconds, 4);
    os << '\n';
    all_pass = all_pass && r.passed;
  }
  emit(os.str(), output, out);
  if (!all_pass) {
    err << "sweep: an eligible bound was violated\n";
    return kViolation;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirichlet fractional Laplacian on lattice domains: kernels, spectra and eigenvalue bounds",
               "fraclap"};
  app.require_subcommand(1);

  DomainOptions dom;
  QuadOptions qo;
  double alpha = 0.0;
  std::string alpha_list = "0.5,1,1.5";
  std::string format = "csv";
  std::string output;
  int dim = 1;
  std::string offsets;
  std::string vectors_path, matrix_path, plot_path;
  bool skip_ground_state = false;
  std::string family, sizes;
  bool timing = false;

  auto* kernel = app.add_subcommand("kernel", "Q_alpha at given offsets by both quadrature routes");
  kernel->add_option("--dim", dim, "Lattice dimension")->required()->check(CLI::PositiveNumber);
  kernel->add_option("--alpha", alpha, "Fractional order in (0, 2)")->required();
  kernel->add_option("--offsets", offsets, "Comma-separated coordinates, --dim per offset")->required();
  kernel->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  kernel->add_option("-o,--output", output, "Output file (default stdout)");
  add_quad_options(kernel, qo);

  auto* spectrum = app.add_subcommand("spectrum", "Full spectrum of the assembled operator");
  add_domain_options(spectrum, dom);
  spectrum->add_option("--alpha", alpha, "Fractional order in (0, 2)")->required();
  spectrum->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  spectrum->add_option("-o,--output", output, "Output file (default stdout)");
  spectrum->add_option("--eigenvectors", vectors_path, "Also write the eigenvector CSV");
  spectrum->add_option("--matrix", matrix_path, "Also write the operator matrix CSV");
  spectrum->add_flag("--skip-ground-state", skip_ground_state, "Skip simplicity/positivity of the ground state");
  add_quad_options(spectrum, qo);

  auto* bounds = app.add_subcommand("bounds", "Eigenvalue-sum bound report");
  add_domain_options(bounds, dom);
  bounds->add_option("--alpha", alpha, "Fractional order in (0, 2)")->required();
  bounds->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("-o,--output", output, "Output file (default stdout)");
  bounds->add_option("--plot", plot_path, "Also write an SVG plot");
  add_quad_options(bounds, qo);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite (default: path 20, 6x6 box, L-shape 3)");
  add_domain_options(verify, dom);
  verify->add_option("--alpha", alpha_list, "Comma-separated fractional orders");
  verify->add_option("-o,--output", output, "JSON report file (default stdout)");
  verify->add_flag("--skip-ground-state", skip_ground_state, "Skip simplicity/positivity of the ground state");
  add_quad_options(verify, qo);

  auto* sweep = app.add_subcommand("sweep", "Bound gaps across a domain family");
  sweep->add_option("--family", family, "path, box, lshape or random")->required();
  sweep->add_option("--sizes", sizes, "start:stop:step or a comma list")->required();
  sweep->add_option("--alpha", alpha_list, "Comma-separated fractional orders")->required();
  sweep->add_option("--dim", dim, "Dimension for box and random families")->check(CLI::Range(1, 3));
  sweep->add_option("--seed", dom.seed, "Seed for random domains");
  sweep->add_option("-o,--output", output, "Output CSV (default stdout)");
  sweep->add_flag("--timing", timing, "Append a runtime column (makes the output run-dependent)");
  add_quad_options(sweep, qo);

  auto* plot = app.add_subcommand("plot", "SVG of the eigenvalue averages against both bounds");
  add_domain_options(plot, dom);
  plot->add_option("--alpha", alpha, "Fractional order in (0, 2)")->required();
  plot->add_option("-o,--output", output, "Output SVG (default stdout)");
  add_quad_options(plot, qo);

  std::vector<std::string> argv_store{"fraclap"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kParseError;
  }

  try {
    if (kernel->parsed()) return cmd_kernel(dim, alpha, offsets, format, qo, output, out);
    if (spectrum->parsed()) {
      return cmd_spectrum(dom, alpha, qo, format, output, vectors_path, matrix_path, skip_ground_state, out, err);
    }
    if (bounds->parsed()) return cmd_bounds(dom, alpha, qo, format, output, plot_path, out, err);
    if (verify->parsed()) return cmd_verify(dom, alpha_list, qo, skip_ground_state, output, out, err);
    if (sweep->parsed()) {
      return cmd_sweep(family, sizes, alpha_list, sweep->count("--dim") ? dim : 2, dom.seed, qo, timing, output,
                       out, err);
    }
    if (plot->parsed()) return cmd_plot(dom, alpha, qo, output, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const ConvergenceError& e) {
    err << "numeric failure: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kNumericFailure;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kParseError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace fraclap::cli
