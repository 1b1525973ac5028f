#include "whittaker_lab/cli/job.hpp"

#include "whittaker_lab/whittaker_lab.hpp"
#include "whittaker_lab/verify.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wlab::cli {

namespace {

struct ParamError : std::runtime_error {
  ParamError(std::string name, const std::string& what) : std::runtime_error(what), param(std::move(name)) {}
  std::string param;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& raw, double& out) {
  const std::string s = trim(raw);
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

template <typename Int>
bool parse_integer(const std::string& raw, Int& out) {
  const std::string s = trim(raw);
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

/// Typed access to the string parameters of a job.
class Params {
 public:
  Params(const JobSpec& job, std::initializer_list<const char*> allowed) : job_(job) {
    const std::set<std::string> names(allowed.begin(), allowed.end());
    for (const auto& [key, values] : job.params) {
      if (!names.count(key)) throw ParamError(key, "unknown parameter --" + key + " for " + job.command);
      if (values.empty()) throw ParamError(key, "parameter --" + key + " has no value");
    }
  }

  bool has(const std::string& key) const { return job_.params.count(key) > 0; }

  const std::string& single(const std::string& key) const {
    const auto it = job_.params.find(key);
    if (it == job_.params.end()) throw ParamError(key, "missing required parameter --" + key);
    if (it->second.size() != 1) throw ParamError(key, "parameter --" + key + " given more than once");
    return it->second.front();
  }

  const std::vector<std::string>& repeated(const std::string& key) const {
    static const std::vector<std::string> none;
    const auto it = job_.params.find(key);
    return it == job_.params.end() ? none : it->second;
  }

  int integer(const std::string& key) const {
    int v = 0;
    if (!parse_integer(single(key), v)) throw ParamError(key, "--" + key + " expects an integer");
    return v;
  }
  int integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

  std::uint64_t seed() const {
    if (!has("seed")) return 0;
    std::uint64_t v = 0;
    if (!parse_integer(single("seed"), v)) throw ParamError("seed", "--seed expects a nonnegative integer");
    return v;
  }

  double real(const std::string& key) const {
    double v = 0.0;
    if (!parse_double(single(key), v)) throw ParamError(key, "--" + key + " expects a real number");
    return v;
  }
  double real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

  Complex complex(const std::string& key) const { return complex_value(key, single(key)); }
  Complex complex(const std::string& key, Complex fallback) const { return has(key) ? complex(key) : fallback; }

  std::vector<int> integers(const std::string& key) const {
    std::vector<int> out;
    for (const auto& item : split(single(key), ',')) {
      int v = 0;
      if (!parse_integer(item, v)) throw ParamError(key, "--" + key + " expects a comma-separated integer list");
      out.push_back(v);
    }
    return out;
  }
  std::vector<int> integers(const std::string& key, std::vector<int> fallback) const {
    return has(key) ? integers(key) : fallback;
  }

  std::vector<double> reals(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : split(single(key), ',')) {
      double v = 0.0;
      if (!parse_double(item, v)) throw ParamError(key, "--" + key + " expects a comma-separated real list");
      out.push_back(v);
    }
    return out;
  }

  std::vector<Complex> complexes(const std::string& key) const {
    std::vector<Complex> out;
    for (const auto& item : split(single(key), ',')) out.push_back(complex_value(key, item));
    return out;
  }
  std::vector<Complex> complexes(const std::string& key, std::vector<Complex> fallback) const {
    return has(key) ? complexes(key) : fallback;
  }

  bool flag(const std::string& key) const {
    if (!has(key)) return false;
    const std::string& v = single(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParamError(key, "--" + key + " expects true or false");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? single(key) : fallback;
  }

  static Complex complex_value(const std::string& key, const std::string& item) {
    try {
      return parse_complex(item);
    } catch (const std::invalid_argument&) {
      throw ParamError(key, "--" + key + " expects complex numbers written re or re:im");
    }
  }

 private:
  const JobSpec& job_;
};

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Result {
  Json fields = Json::object();
  Table table;
  int exit_code = kPassed;
};

Table scalar_table(const std::vector<std::pair<std::string, Complex>>& values) {
  Table t{{"quantity", "re", "im"}, {}};
  for (const auto& [name, z] : values) t.rows.push_back({name, num(z.real()), num(z.imag())});
  return t;
}

Json check_json(const verify::Check& c) {
  return Json{{"label", c.label},     {"worst_error", c.worst_error}, {"bound", c.bound},
              {"samples", c.samples}, {"failures", c.failures},       {"passed", c.passed()}};
}

Json index_json(const std::vector<int>& v) { return Json(v); }

SpectralParams spectral(const std::vector<Complex>& alpha) {
  Eigen::VectorXcd a(static_cast<Eigen::Index>(alpha.size()));
  for (std::size_t i = 0; i < alpha.size(); ++i) a(static_cast<Eigen::Index>(i)) = alpha[i];
  return SpectralParams(a);
}

void require_length(const std::string& key, std::size_t got, int want) {
  if (static_cast<int>(got) != want) {
    throw ParamError(key, "--" + key + " has " + std::to_string(got) + " entries, expected " + std::to_string(want));
  }
}

// ---- commands ------------------------------------------------------------

Result run_schur(const JobSpec& job) {
  const Params P(job, {"m", "alpha", "method", "tol"});
  const LatticeIndex m = P.integers("m");
  const std::vector<Complex> alpha_list = P.complexes("alpha");
  const std::string method = P.text("method", "jacobi-trudi");
  const double tol = P.real("tol", 1e-10);
  if (method != "jacobi-trudi" && method != "bialternant" && method != "tableau" && method != "all") {
    throw ParamError("method", "--method must be jacobi-trudi, bialternant, tableau or all");
  }
  require_length("m", m.size(), static_cast<int>(alpha_list.size()) - 1);
  const SpectralParams a = spectral(alpha_list);

  Result r;
  r.fields["n"] = a.n();
  r.fields["partition"] = index_json(m_to_partition(m));
  if (method != "all") {
    const Complex value = method == "jacobi-trudi" ? schur_jacobi_trudi(m, a)
                          : method == "bialternant" ? schur_bialternant(m, a)
                                                    : schur_tableau_oracle(m, a);
    r.fields["method"] = method;
    r.fields["value"] = complex_json(value);
    r.table = scalar_table({{"value", value}});
    return r;
  }
  const Complex jt = schur_jacobi_trudi(m, a);
  const Complex bi = schur_bialternant(m, a);
  const Complex tab = schur_tableau_oracle(m, a);
  const double scale = std::max({std::abs(jt), std::abs(bi), std::abs(tab), 1e-300});
  verify::Check agree{"pairwise agreement of the three evaluators", 0.0, 0.0, 0, 0};
  agree.record(std::max({std::abs(jt - bi), std::abs(jt - tab), std::abs(bi - tab)}) / scale, tol);
  r.fields["value"] = complex_json(jt);
  r.fields["values"] = Json{{"jacobi_trudi", complex_json(jt)},
                            {"bialternant", complex_json(bi)},
                            {"tableau", complex_json(tab)}};
  r.fields["checks"] = Json::array({check_json(agree)});
  r.table = scalar_table({{"jacobi_trudi", jt}, {"bialternant", bi}, {"tableau", tab}});
  r.exit_code = agree.passed() ? kPassed : kCheckFailed;
  return r;
}

Result run_whittaker(const JobSpec& job) {
  const Params P(job, {"p", "n", "v", "alpha"});
  const int p = P.integer("p");
  const int n = P.integer("n");
  const ValuationVector v = P.integers("v");
  const std::vector<Complex> alpha_list = P.complexes("alpha");
  const PrimeContext ctx(p, n);
  require_length("alpha", alpha_list.size(), n);
  require_length("v", v.size(), n - 1);
  const SpectralParams a = spectral(alpha_list);

  const Complex value = whittaker_eval(a, v, ctx);
  Result r;
  r.fields["value"] = complex_json(value);
  r.fields["delta"] = delta(v, ctx);
  r.table = scalar_table({{"value", value}, {"delta", delta(v, ctx)}});
  return r;
}

/// "v1,v2=value" entries of a compact function.
CompactFunction parse_entries(const Params& P, const std::string& key, const PrimeContext& ctx) {
  CompactFunction h(ctx);
  for (const auto& entry : P.repeated(key)) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw ParamError(key, "--" + key + " expects v1,...,v_{n-1}=value");
    LatticeIndex v;
    for (const auto& item : split(entry.substr(0, eq), ',')) {
      int x = 0;
      if (!parse_integer(item, x)) throw ParamError(key, "--" + key + ": bad lattice index in '" + entry + "'");
      v.push_back(x);
    }
    require_length(key, v.size(), ctx.n() - 1);
    const Complex value = Params::complex_value(key, entry.substr(eq + 1));
    if (!in_integral_cone(v)) throw ParamError(key, "--" + key + ": valuations must be >= 0");
    h.set(v, h(v) + value);
  }
  return h;
}

Result run_forward(const JobSpec& job) {
  const Params P(job, {"p", "n", "alpha", "entry"});
  const int p = P.integer("p");
  const int n = P.integer("n");
  const std::vector<Complex> alpha_list = P.complexes("alpha");
  const PrimeContext ctx(p, n);
  require_length("alpha", alpha_list.size(), n);
  const CompactFunction h = parse_entries(P, "entry", ctx);
  const SpectralParams a = spectral(alpha_list);

  const Complex value = forward_transform(h, a);
  Result r;
  r.fields["support_size"] = h.values().size();
  r.fields["value"] = complex_json(value);
  r.table = scalar_table({{"value", value}});
  return r;
}

Result run_inverse(const JobSpec& job) {
  const Params P(job, {"p", "n", "schur-term", "lfactor-d", "s", "v", "N", "method", "tol"});
  const int p = P.integer("p");
  const int n = P.has("lfactor-d") ? P.integer("n", 2) : P.integer("n");
  const PrimeContext ctx(p, n);
  const double tol = P.real("tol", 1e-8);
  Result r;

  if (P.has("lfactor-d")) {
    if (P.has("schur-term")) throw ParamError("schur-term", "give either --schur-term or --lfactor-d, not both");
    if (n != 2) throw ParamError("n", "the L-factor evaluator lives on GL(2): --n must be 2");
    const int d = P.integer("lfactor-d");
    const Complex s = P.complex("s");
    const ValuationVector v = P.integers("v");
    require_length("v", v.size(), 1);
    const int N = P.integer("N", 512);
    const SpectralFunction H = lfactor_spectral(d, s, p);
    const Complex value = inverse_transform_quadrature(H, v, N);
    r.fields["method"] = "quadrature";
    r.fields["N"] = N;
    r.fields["value"] = complex_json(value);
    std::vector<std::pair<std::string, Complex>> rows{{"value", value}};
    if (d <= 4 && v[0] >= 0) {
      const Complex closed = lfactor_flat_closed(d, v[0], p, s);
      verify::Check agree{"quadrature vs closed form", 0.0, 0.0, 0, 0};
      if (closed == Complex{}) {
        agree.record(std::abs(value), 1e-10);
      } else {
        agree.record(std::abs(value - closed) / std::abs(closed), tol);
      }
      r.fields["closed_form"] = complex_json(closed);
      r.fields["checks"] = Json::array({check_json(agree)});
      rows.emplace_back("closed_form", closed);
      r.exit_code = agree.passed() ? kPassed : kCheckFailed;
    }
    r.table = scalar_table(rows);
    return r;
  }

  LaurentPoly poly(n);
  for (const auto& term : P.repeated("schur-term")) {
    const auto eq = term.find('=');
    if (eq == std::string::npos) throw ParamError("schur-term", "--schur-term expects m1,...,m_{n-1}=coefficient");
    LatticeIndex m;
    for (const auto& item : split(term.substr(0, eq), ',')) {
      int x = 0;
      if (!parse_integer(item, x) || x < 0) throw ParamError("schur-term", "bad Schur index in '" + term + "'");
      m.push_back(x);
    }
    require_length("schur-term", m.size(), n - 1);
    poly += schur_laurent(m, false, n) * Params::complex_value("schur-term", term.substr(eq + 1));
  }
  const std::string method = P.text("method", "exact");
  if (method != "exact" && method != "quadrature") throw ParamError("method", "--method must be exact or quadrature");
  const SpectralFunction H = SpectralFunction::exact(poly, ctx);

  if (!P.has("v")) {
    if (method != "exact") throw ParamError("v", "--v is required with --method quadrature");
    const CompactFunction image = inverse_transform_image(H);
    Json rows = Json::array();
    r.table.header = {"v", "re", "im"};
    for (const auto& [v, value] : image.values()) {
      rows.push_back(Json{{"v", index_json(v)}, {"value", complex_json(value)}});
      std::string key;
      for (std::size_t i = 0; i < v.size(); ++i) key += (i ? " " : "") + std::to_string(v[i]);
      r.table.rows.push_back({key, num(value.real()), num(value.imag())});
    }
    r.fields["method"] = "exact";
    r.fields["image"] = rows;
    return r;
  }

  const ValuationVector v = P.integers("v");
  require_length("v", v.size(), n - 1);
  Complex value;
  if (method == "exact") {
    value = inverse_transform_exact(H, v);
  } else {
    const int N = P.integer("N", exact_quadrature_nodes(H, v));
    r.fields["N"] = N;
    value = inverse_transform_quadrature(H, v, N);
  }
  r.fields["method"] = method;
  r.fields["value"] = complex_json(value);
  r.table = scalar_table({{"value", value}});
  return r;
}

Result run_pairing(const JobSpec& job) {
  const Params P(job, {"p", "alpha", "beta", "epsilon", "M"});
  const int p = P.integer("p");
  const std::vector<Complex> alpha_list = P.complexes("alpha");
  const std::vector<Complex> beta_list = P.complexes("beta");
  const double epsilon = P.real("epsilon", 0.0);
  const int M = P.integer("M", kDefaultTruncation);
  require_length("beta", beta_list.size(), static_cast<int>(alpha_list.size()));
  const PrimeContext ctx(p, static_cast<int>(alpha_list.size()));
  const SpectralParams a = spectral(alpha_list);
  const SpectralParams b = spectral(beta_list);

  const SeriesResult lhs = whittaker_pairing(a, b, {epsilon, M}, ctx);
  const Complex rhs = stade_rhs(a, b, epsilon, ctx);
  verify::Check within{"pairing vs closed form within tail bound", 0.0, 0.0, 0, 0};
  within.record(std::abs(lhs.value - rhs), lhs.tail_bound + 1e-13 * std::abs(rhs));
  Result r;
  r.fields["value"] = complex_json(lhs.value);
  r.fields["tail_bound"] = lhs.tail_bound;
  r.fields["closed_form"] = complex_json(rhs);
  r.fields["difference"] = std::abs(lhs.value - rhs);
  r.fields["checks"] = Json::array({check_json(within)});
  r.table = scalar_table({{"value", lhs.value}, {"tail_bound", lhs.tail_bound}, {"closed_form", rhs}});
  r.exit_code = within.passed() ? kPassed : kCheckFailed;
  return r;
}

Result suites_result(const std::vector<verify::SuiteReport>& reports) {
  Result r;
  Json suites = Json::array();
  r.table.header = {"suite", "check", "worst_error", "bound", "samples", "failures", "passed"};
  bool diverged = false;
  for (const auto& rep : reports) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      checks.push_back(check_json(c));
      r.table.rows.push_back({rep.name, c.label, num(c.worst_error), num(c.bound), std::to_string(c.samples),
                              std::to_string(c.failures), c.passed() ? "true" : "false"});
      if (!c.passed()) {
        r.exit_code = std::max<int>(r.exit_code, kCheckFailed);
        if (c.label.rfind("series converged", 0) == 0) diverged = true;
      }
    }
    suites.push_back(Json{{"suite", rep.name},
                          {"seed", rep.seed},
                          {"trials", rep.trials},
                          {"passed", rep.passed()},
                          {"checks", checks},
                          {"notes", rep.notes}});
  }
  if (diverged) r.exit_code = kDivergence;
  r.fields["suites"] = suites;
  return r;
}

void require_positive(const std::string& key, int value) {
  if (value < 1) throw ParamError(key, "--" + key + " must be >= 1");
}

void require_prime(const std::string& key, int p) {
  if (!PrimeContext::is_prime(p)) throw ParamError(key, "--" + key + " = " + std::to_string(p) + " is not prime");
}

void require_ranks(const std::string& key, const std::vector<int>& ns) {
  for (int n : ns) {
    if (n < 2 || n > 5) throw ParamError(key, "--" + key + " entries must lie in 2..5");
  }
}

Result run_verify(const JobSpec& job) {
  const std::string& suite = job.suite;
  if (suite == "schur") {
    const Params P(job, {"seed", "trials", "n", "max-weight", "tol", "invariant-tol"});
    verify::SchurOptions o;
    o.seed = P.seed();
    o.trials = P.integer("trials", o.trials);
    o.ns = P.integers("n", o.ns);
    o.max_weight = P.integer("max-weight", o.max_weight);
    o.tol = P.real("tol", o.tol);
    o.invariant_tol = P.real("invariant-tol", o.invariant_tol);
    require_positive("trials", o.trials);
    require_ranks("n", o.ns);
    if (o.max_weight > kTableauMaxSize) throw ParamError("max-weight", "--max-weight exceeds the tableau oracle guard 12");
    return suites_result({verify::schur_triple(o)});
  }
  if (suite == "cauchy") {
    const Params P(job, {"seed", "trials", "n", "M", "q-max", "tol"});
    verify::CauchyOptions o;
    o.seed = P.seed();
    o.trials = P.integer("trials", o.trials);
    o.ns = P.integers("n", o.ns);
    o.M = P.integer("M", o.M);
    o.q_max = P.real("q-max", o.q_max);
    o.det_tol = P.real("tol", o.det_tol);
    require_positive("trials", o.trials);
    require_ranks("n", o.ns);
    if (o.M < 0) throw ParamError("M", "--M must be >= 0");
    if (!(o.q_max > 0.0 && o.q_max < 1.0)) throw ParamError("q-max", "--q-max must lie in (0, 1)");
    return suites_result({verify::cauchy(o)});
  }
  if (suite == "stade") {
    const Params P(job, {"seed", "trials", "n", "p", "epsilon", "tail"});
    verify::StadeOptions o;
    o.seed = P.seed();
    o.trials = P.integer("trials", o.trials);
    o.ns = P.integers("n", o.ns);
    o.p = P.integer("p", o.p);
    o.epsilons = P.reals("epsilon", o.epsilons);
    o.target_tail = P.real("tail", o.target_tail);
    require_positive("trials", o.trials);
    require_ranks("n", o.ns);
    require_prime("p", o.p);
    for (double e : o.epsilons) {
      if (e < 0.0) throw ParamError("epsilon", "--epsilon entries must be >= 0");
    }
    if (!(o.target_tail > 0.0)) throw ParamError("tail", "--tail must be positive");
    return suites_result({verify::stade(o)});
  }
  if (suite == "inversion") {
    const Params P(job, {"seed", "trials", "n", "p", "points", "max-weight", "tol", "cube", "geometric-n",
                         "geometric-trials", "geometric-tol"});
    verify::InversionOptions o;
    o.seed = P.seed();
    o.trials = P.integer("trials", o.trials);
    o.ns = P.integers("n", o.ns);
    o.p = P.integer("p", o.p);
    o.points = P.integer("points", o.points);
    o.max_weight = P.integer("max-weight", o.max_weight);
    o.tol = P.real("tol", o.tol);
    verify::RoundTripOptions g;
    g.seed = o.seed;
    g.p = o.p;
    g.ns = P.integers("geometric-n", g.ns);
    g.cube = P.integer("cube", g.cube);
    g.trials = P.integer("geometric-trials", g.trials);
    g.tol = P.real("geometric-tol", g.tol);
    require_positive("trials", o.trials);
    require_positive("points", o.points);
    require_positive("geometric-trials", g.trials);
    require_ranks("n", o.ns);
    require_ranks("geometric-n", g.ns);
    require_prime("p", o.p);
    if (o.max_weight < 0) throw ParamError("max-weight", "--max-weight must be >= 0");
    if (g.cube < 0) throw ParamError("cube", "--cube must be >= 0");
    return suites_result({verify::inversion(o), verify::round_trip(g)});
  }
  if (suite == "plancherel") {
    const Params P(job, {"seed", "trials", "n", "p", "cube", "tol"});
    verify::RoundTripOptions o;
    o.seed = P.seed();
    o.trials = P.integer("trials", o.trials);
    o.ns = P.has("n") ? P.integers("n") : o.ns;
    o.p = P.integer("p", o.p);
    o.cube = P.integer("cube", o.cube);
    o.tol = P.real("tol", o.tol);
    require_positive("trials", o.trials);
    require_ranks("n", o.ns);
    require_prime("p", o.p);
    if (o.cube < 0) throw ParamError("cube", "--cube must be >= 0");
    return suites_result({verify::plancherel(o)});
  }
  if (suite == "lfactor") {
    const Params P(job, {"seed", "trials", "d", "p", "s", "lambda-max", "tol", "M", "rep-s", "rep-p", "rep-tol", "rep-radius"});
    verify::LFactorClosedOptions c;
    c.ds = P.integers("d", c.ds);
    c.ps = P.integers("p", c.ps);
    c.ss = P.complexes("s", c.ss);
    c.lambda_max = P.integer("lambda-max", c.lambda_max);
    c.tol = P.real("tol", c.tol);
    verify::IntegralRepOptions i;
    i.seed = P.seed();
    i.trials = P.integer("trials", i.trials);
    i.ds = c.ds;
    i.ps = P.integers("rep-p", i.ps);
    i.s = P.complex("rep-s", i.s);
    i.M = P.integer("M", i.M);
    i.tol = P.real("rep-tol", i.tol);
    i.radius = P.real("rep-radius", i.radius);
    if (!(i.radius > 0.0)) throw ParamError("rep-radius", "--rep-radius must be positive");
    for (int d : c.ds) {
      if (d < 1 || d > 4) throw ParamError("d", "--d entries must lie in 1..4 (closed forms exist only there)");
    }
    for (int p : c.ps) require_prime("p", p);
    for (int p : i.ps) require_prime("rep-p", p);
    for (Complex s : c.ss) {
      if (s.real() <= 1.0) throw ParamError("s", "--s entries need Re(s) > 1");
    }
    if (i.s.real() <= 1.0) throw ParamError("rep-s", "--rep-s needs Re(s) > 1");
    if (c.lambda_max < 0) throw ParamError("lambda-max", "--lambda-max must be >= 0");
    if (i.M < 0) throw ParamError("M", "--M must be >= 0");
    require_positive("trials", i.trials);
    return suites_result({verify::lfactor_closed(c), verify::integral_representation(i)});
  }
  if (suite == "quadrature") {
    const Params P(job, {"seed", "trials", "n", "p", "max-weight", "points", "tol"});
    verify::QuadratureOptions o;
    o.seed = P.seed();
    o.trials = P.integer("trials", o.trials);
    o.ns = P.integers("n", o.ns);
    o.p = P.integer("p", o.p);
    o.max_weight = P.integer("max-weight", o.max_weight);
    o.points_per_h = P.integer("points", o.points_per_h);
    o.tol = P.real("tol", o.tol);
    require_positive("trials", o.trials);
    require_positive("points", o.points_per_h);
    require_ranks("n", o.ns);
    require_prime("p", o.p);
    return suites_result({verify::quadrature_equivalence(o)});
  }
  throw ParamError("suite", "unknown verify suite '" + suite +
                                "' (expected cauchy, stade, inversion, plancherel, lfactor, schur or quadrature)");
}

Result run_lfactor_table(const JobSpec& job) {
  const Params P(job, {"d", "p", "s", "lambda-max", "N", "tol", "as-printed"});
  const int d = P.integer("d");
  const int p = P.integer("p");
  const Complex s = P.complex("s");
  const int lambda_max = P.integer("lambda-max", 12);
  const double tol = P.real("tol", 1e-8);
  const bool printed = P.flag("as-printed");
  const int fixed_nodes = P.integer("N", 0);  // 0 selects adaptive doubling
  if (d < 1) throw ParamError("d", "--d must be >= 1");
  require_prime("p", p);
  if (s.real() <= 1.0) throw ParamError("s", "--s needs Re(s) > 1");
  if (lambda_max < 0) throw ParamError("lambda-max", "--lambda-max must be >= 0");
  if (P.has("N") && fixed_nodes < 64) throw ParamError("N", "--N must be >= 64");
  if (printed && d > 4) throw ParamError("as-printed", "--as-printed needs d <= 4");
  const bool closed_available = d <= 4;

  Result r;
  r.table.header = {"lambda", "closed_re", "closed_im", "numeric_re", "numeric_im", "abs_diff", "rel_diff", "nodes"};
  if (printed) {
    for (const char* h : {"printed_re", "printed_im", "printed_abs_diff"}) r.table.header.push_back(h);
  }
  Json rows = Json::array();
  bool all_ok = true;
  for (int lambda = 0; lambda <= lambda_max; ++lambda) {
    Complex numeric;
    int nodes = 0;
    bool converged = true;
    if (fixed_nodes > 0) {
      numeric = lfactor_flat_numeric(d, lambda, p, s, fixed_nodes);
      nodes = fixed_nodes;
    } else {
      const AdaptiveQuadrature q = lfactor_flat_numeric_adaptive(d, lambda, p, s);
      numeric = q.value;
      nodes = q.nodes;
      converged = q.converged;
    }
    Json row{{"lambda", lambda}};
    std::vector<std::string> csv{std::to_string(lambda)};
    bool ok = converged;
    if (closed_available) {
      const Complex closed = lfactor_flat_closed(d, lambda, p, s);
      const double abs_diff = std::abs(closed - numeric);
      const double rel_diff = closed == Complex{} ? 0.0 : abs_diff / std::abs(closed);
      ok = ok && (closed == Complex{} ? std::abs(numeric) <= 1e-10 : rel_diff <= tol);
      row["closed"] = complex_json(closed);
      row["numeric"] = complex_json(numeric);
      row["abs_diff"] = abs_diff;
      row["rel_diff"] = rel_diff;
      for (const auto& cell : {num(closed.real()), num(closed.imag()), num(numeric.real()), num(numeric.imag()),
                               num(abs_diff), num(rel_diff)}) {
        csv.push_back(cell);
      }
    } else {
      row["numeric"] = complex_json(numeric);
      for (const auto& cell : {std::string(), std::string(), num(numeric.real()), num(numeric.imag()), std::string(),
                               std::string()}) {
        csv.push_back(cell);
      }
    }
    row["nodes"] = nodes;
    csv.push_back(std::to_string(nodes));
    if (printed) {
      const Complex pv = lfactor_flat_as_printed(d, lambda, p, s);
      row["as_printed"] = complex_json(pv);
      row["as_printed_abs_diff"] = std::abs(pv - numeric);
      csv.push_back(num(pv.real()));
      csv.push_back(num(pv.imag()));
      csv.push_back(num(std::abs(pv - numeric)));
    }
    row["passed"] = ok;
    all_ok = all_ok && ok;
    rows.push_back(row);
    r.table.rows.push_back(csv);
  }
  r.fields["closed_form_available"] = closed_available;
  if (!closed_available) r.fields["note"] = "no closed-form cross-check for d > 4";
  r.fields["rows"] = rows;
  r.exit_code = all_ok ? kPassed : kCheckFailed;
  return r;
}

std::string default_format(const std::string& command) { return command == "lfactor-table" ? "csv" : "json"; }

std::string render_csv(const Json& inputs, const Table& table) {
  std::string out = "# inputs: " + inputs.dump() + "\n# schema: " + std::to_string(kSchemaVersion) + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string& c = cells[i];
      const bool quote = c.find_first_of(",\"\n") != std::string::npos;
      if (i) out += ',';
      if (quote) {
        out += '"';
        for (char ch : c) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        out += '"';
      } else {
        out += c;
      }
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

std::string render_error(const Json& inputs, const std::string& command, const std::string& kind,
                         const std::string& message, const std::string& param) {
  Json doc{{"schema", kSchemaVersion}, {"command", command}, {"inputs", inputs}};
  Json error{{"kind", kind}, {"message", message}};
  if (!param.empty()) error["parameter"] = param;
  doc["error"] = error;
  doc["passed"] = false;
  return doc.dump(2) + "\n";
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto parts = split(text, ':');
  double re = 0.0, im = 0.0;
  if (parts.size() == 1 && parse_double(parts[0], re)) return {re, 0.0};
  if (parts.size() == 2 && parse_double(parts[0], re) && parse_double(parts[1], im)) return {re, im};
  throw std::invalid_argument("not a complex number: '" + text + "'");
}

Json job_to_json(const JobSpec& job) {
  Json inputs{{"command", job.command}};
  if (job.command == "verify") inputs["suite"] = job.suite;
  inputs["format"] = job.format.empty() ? default_format(job.command) : job.format;
  Json params = Json::object();
  for (const auto& [key, values] : job.params) {
    params[key] = values.size() == 1 ? Json(values.front()) : Json(values);
  }
  inputs["params"] = params;
  return inputs;
}

JobSpec job_from_json(const Json& inputs) {
  JobSpec job;
  job.command = inputs.at("command").get<std::string>();
  if (inputs.contains("suite")) job.suite = inputs.at("suite").get<std::string>();
  job.format = inputs.value("format", std::string());
  for (const auto& [key, value] : inputs.at("params").items()) {
    if (value.is_array()) {
      job.params[key] = value.get<std::vector<std::string>>();
    } else {
      job.params[key] = {value.get<std::string>()};
    }
  }
  return job;
}

Outcome run(const JobSpec& job) {
  const Json inputs = job_to_json(job);
  const std::string format = job.format.empty() ? default_format(job.command) : job.format;
  try {
    if (format != "json" && format != "csv") throw ParamError("format", "--format must be json or csv");
    Result r;
    if (job.command == "schur") {
      r = run_schur(job);
    } else if (job.command == "whittaker") {
      r = run_whittaker(job);
    } else if (job.command == "forward") {
      r = run_forward(job);
    } else if (job.command == "inverse") {
      r = run_inverse(job);
    } else if (job.command == "pairing") {
      r = run_pairing(job);
    } else if (job.command == "verify") {
      r = run_verify(job);
    } else if (job.command == "lfactor-table") {
      r = run_lfactor_table(job);
    } else {
      throw ParamError("command", "unknown command '" + job.command + "'");
    }
    if (format == "csv") return {r.exit_code, render_csv(inputs, r.table)};
    Json doc{{"schema", kSchemaVersion}, {"command", job.command}};
    if (job.command == "verify") doc["suite"] = job.suite;
    doc["inputs"] = inputs;
    for (const auto& [key, value] : r.fields.items()) doc[key] = value;
    doc["passed"] = r.exit_code == kPassed;
    return {r.exit_code, doc.dump(2) + "\n"};
  } catch (const ParamError& e) {
    return {kPrecondition, render_error(inputs, job.command, "parameter", e.what(), e.param)};
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::divergence ? kDivergence : kPrecondition;
    return {code, render_error(inputs, job.command, std::string(to_string(e.kind())), e.what(), "")};
  } catch (const std::exception& e) {
    return {kPrecondition, render_error(inputs, job.command, "internal", e.what(), "")};
  }
}

namespace {

/// Every stored check must agree with its own numbers.
bool checks_consistent(const Json& node) {
  if (node.is_object()) {
    if (node.contains("label") && node.contains("failures") && node.contains("passed")) {
      const bool passed = node.at("passed").get<bool>();
      const long failures = node.at("failures").get<long>();
      if (passed != (failures == 0)) return false;
      if (passed && !(node.at("worst_error").get<double>() <= node.at("bound").get<double>())) return false;
    }
    for (const auto& [key, value] : node.items()) {
      if (!checks_consistent(value)) return false;
    }
  } else if (node.is_array()) {
    for (const auto& value : node) {
      if (!checks_consistent(value)) return false;
    }
  }
  return true;
}

}  // namespace

Outcome recheck(const std::string& path) {
  const Json meta{{"command", "recheck"}, {"format", "json"}, {"params", Json{{"recheck", path}}}};
  std::ifstream in(path, std::ios::binary);
  if (!in) return {kPrecondition, render_error(meta, "recheck", "parameter", "cannot read " + path, "recheck")};
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Json inputs;
  bool consistent = true;
  try {
    static const std::string prefix = "# inputs: ";
    if (content.rfind(prefix, 0) == 0) {
      const auto eol = content.find('\n');
      inputs = Json::parse(content.substr(prefix.size(), eol - prefix.size()));
    } else {
      const Json doc = Json::parse(content);
      if (doc.value("schema", 0) != kSchemaVersion) {
        return {kPrecondition, render_error(meta, "recheck", "parameter", "unsupported schema version", "recheck")};
      }
      inputs = doc.at("inputs");
      consistent = checks_consistent(doc);
    }
  } catch (const std::exception& e) {
    return {kPrecondition, render_error(meta, "recheck", "parameter", std::string("unreadable report: ") + e.what(),
                                        "recheck")};
  }

  JobSpec job;
  try {
    job = job_from_json(inputs);
  } catch (const std::exception& e) {
    return {kPrecondition, render_error(meta, "recheck", "parameter", std::string("bad inputs echo: ") + e.what(),
                                        "recheck")};
  }
  const Outcome again = run(job);
  const bool identical = again.document == content;
  Json doc{{"schema", kSchemaVersion}, {"command", "recheck"}, {"inputs", inputs},
           {"identical", identical},   {"consistent", consistent}, {"reproduced_exit_code", again.exit_code}};
  int code = again.exit_code;
  if (!identical || !consistent) code = kCheckFailed;
  doc["passed"] = code == kPassed;
  return {code, doc.dump(2) + "\n"};
}

}  // namespace wlab::cli
