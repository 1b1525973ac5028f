#include "whittaker_lab/cli/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using wlab::cli::JobSpec;

struct Option {
  const char* name;
  const char* help;
  bool repeatable = false;
};

/// Options whose values are forwarded verbatim to JobSpec::params.
struct Bound {
  CLI::App* app;
  std::map<std::string, std::vector<std::string>> values;
  std::map<std::string, bool> flags;
};

void bind_options(Bound& b, const std::vector<Option>& options) {
  for (const auto& o : options) {
    auto* opt = b.app->add_option(std::string("--") + o.name, b.values[o.name], o.help);
    if (!o.repeatable) opt->expected(1);
    opt->allow_extra_args(false);
  }
}

void bind_common(Bound& b, const char* default_format) {
  b.app->add_option("--format", b.values["format"], std::string("json or csv (default ") + default_format + ")")
      ->expected(1);
  b.app->add_option("--output", b.values["output"], "write the report to this file")->expected(1);
}

void bind_flag(Bound& b, const char* name, const char* help) {
  b.app->add_flag(std::string("--") + name, b.flags[name], help);
}

JobSpec to_job(const std::string& command, const std::string& suite, const Bound& b) {
  JobSpec job;
  job.command = command;
  job.suite = suite;
  for (const auto& [key, values] : b.values) {
    if (values.empty()) continue;
    if (key == "format") {
      job.format = values.back();
    } else if (key == "output") {
      job.output = values.back();
    } else {
      job.params[key] = values;
    }
  }
  for (const auto& [key, set] : b.flags) {
    if (set) job.params[key] = {"true"};
  }
  return job;
}

const std::vector<Option> kSeeded{{"seed", "seed of the random draws (default 0)"},
                                  {"trials", "number of random trials"}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic Whittaker transforms, Schur polynomials and symmetric-power L-factors"};
  app.require_subcommand(0, 1);
  std::string recheck_path;
  app.add_option("--recheck", recheck_path, "re-run the job stored in a report and compare byte for byte");

  std::map<std::string, Bound> commands;
  auto add = [&](const std::string& name, const std::string& help, const std::vector<Option>& options,
                 const char* format = "json") -> Bound& {
    Bound& b = commands[name];
    b.app = app.add_subcommand(name, help);
    bind_options(b, options);
    bind_common(b, format);
    return b;
  };

  add("schur", "evaluate s_m(alpha)",
      {{"m", "index m_1,...,m_{n-1}"},
       {"alpha", "alpha_1,...,alpha_n (each re or re:im)"},
       {"method", "jacobi-trudi (default), bialternant, tableau or all"},
       {"tol", "agreement tolerance for --method all"}});
  add("whittaker", "evaluate W_alpha at the valuation vector v",
      {{"p", "prime"}, {"n", "rank"}, {"v", "valuations v_1,...,v_{n-1}"}, {"alpha", "Satake parameters"}});
  add("forward", "forward transform of a finitely supported h",
      {{"p", "prime"},
       {"n", "rank"},
       {"alpha", "Satake parameters"},
       {"entry", "v_1,...,v_{n-1}=value (repeatable)", true}});
  add("inverse", "inverse transform of a Schur combination or of the L-factor evaluator",
      {{"p", "prime"},
       {"n", "rank"},
       {"schur-term", "m_1,...,m_{n-1}=coefficient (repeatable)", true},
       {"lfactor-d", "use h_{s,p,d} instead (n = 2)"},
       {"s", "complex s for --lfactor-d"},
       {"v", "valuation vector; omit for the whole image"},
       {"N", "quadrature nodes per circle"},
       {"method", "exact (default) or quadrature"},
       {"tol", "relative tolerance against the closed form"}});
  add("pairing", "regularized pairing of two Whittaker functions against the closed product",
      {{"p", "prime"},
       {"alpha", "Satake parameters"},
       {"beta", "second parameter set"},
       {"epsilon", "regularization epsilon (default 0)"},
       {"M", "cube truncation (default 40)"}});
  Bound& table = add("lfactor-table", "closed vs numeric inverse transforms of h_{s,p,d}",
                     {{"d", "symmetric power"},
                      {"p", "prime"},
                      {"s", "complex s, Re(s) > 1"},
                      {"lambda-max", "largest lambda (default 12)"},
                      {"N", "fixed node count (default: adaptive doubling from 512)"},
                      {"tol", "relative tolerance (default 1e-8)"}},
                     "csv");
  bind_flag(table, "as-printed", "add the verbatim typeset closed form as extra columns");

  CLI::App* verify = app.add_subcommand("verify", "randomized and closed-form identity suites");
  verify->require_subcommand(1);
  std::map<std::string, Bound> suites;
  auto add_suite = [&](const std::string& name, const std::string& help, std::vector<Option> options) {
    Bound& b = suites[name];
    b.app = verify->add_subcommand(name, help);
    options.insert(options.end(), kSeeded.begin(), kSeeded.end());
    bind_options(b, options);
    bind_common(b, "json");
  };
  add_suite("cauchy", "truncated Cauchy sums against the closed kernel",
            {{"n", "ranks (default 2,3)"}, {"M", "cube side (default 60)"}, {"q-max", "largest |alpha_i beta_j|"},
             {"tol", "determinant identity tolerance"}});
  add_suite("stade", "regularized Whittaker pairing against the product formula",
            {{"n", "ranks (default 2,3)"}, {"p", "prime (default 2)"}, {"epsilon", "list (default 0.05,0.1,0.5)"},
             {"tail", "target tail bound used to pick M"}});
  add_suite("inversion", "(H-flat)-sharp = H and (h-sharp)-flat = h",
            {{"n", "ranks (default 2,3,4)"},
             {"p", "prime"},
             {"points", "torus points per H"},
             {"max-weight", "largest |partition| in H"},
             {"tol", "tolerance"},
             {"cube", "cube side for the geometric round trip"},
             {"geometric-n", "ranks of the geometric round trip (default 2,3)"},
             {"geometric-trials", "random h per rank"},
             {"geometric-tol", "coefficient tolerance"}});
  add_suite("plancherel", "geometric vs spectral pairing",
            {{"n", "ranks (default 2,3)"}, {"p", "prime"}, {"cube", "cube side (default 4)"}, {"tol", "tolerance"}});
  add_suite("lfactor", "closed forms vs quadrature and the integral representation",
            {{"d", "degrees (default 1,2,3,4)"},
             {"p", "primes (default 2,3,5)"},
             {"s", "list of s (default 2,2.5,3:0.5)"},
             {"lambda-max", "largest lambda (default 12)"},
             {"tol", "relative tolerance"},
             {"M", "forward truncation (default 80)"},
             {"rep-s", "s for the integral representation (default 2.5)"},
             {"rep-p", "primes for the integral representation (default 2,3)"},
             {"rep-tol", "discrepancy tolerance"},
             {"rep-radius", "|alpha| for the integral representation (default 1)"}});
  add_suite("schur", "bialternant, Jacobi-Trudi and tableau agreement",
            {{"n", "ranks (default 2,3,4)"}, {"max-weight", "largest |partition|"}, {"tol", "tolerance"},
             {"invariant-tol", "symmetry/homogeneity tolerance"}});
  add_suite("quadrature", "torus quadrature vs constant term",
            {{"n", "ranks"}, {"p", "prime"}, {"max-weight", "largest |partition|"}, {"points", "v per H"},
             {"tol", "tolerance"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    wlab::cli::Json doc{{"schema", wlab::cli::kSchemaVersion},
                        {"error", {{"kind", "usage"}, {"message", e.what()}}},
                        {"passed", false}};
    std::cout << doc.dump(2) << "\n";
    return wlab::cli::kPrecondition;
  }

  wlab::cli::Outcome outcome;
  std::optional<std::string> output;
  if (!recheck_path.empty()) {
    if (!app.get_subcommands().empty()) {
      std::cerr << "--recheck takes no subcommand\n";
      return wlab::cli::kPrecondition;
    }
    outcome = wlab::cli::recheck(recheck_path);
  } else {
    JobSpec job;
    bool found = false;
    for (const auto& [name, b] : commands) {
      if (b.app->parsed()) {
        job = to_job(name, "", b);
        found = true;
      }
    }
    for (const auto& [name, b] : suites) {
      if (b.app->parsed()) {
        job = to_job("verify", name, b);
        found = true;
      }
    }
    if (!found) {
      std::cout << app.help();
      return wlab::cli::kPrecondition;
    }
    output = job.output;
    outcome = wlab::cli::run(job);
  }

  if (output) {
    std::ofstream out(*output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << *output << "\n";
      return wlab::cli::kPrecondition;
    }
    out << outcome.document;
  } else {
    std::cout << outcome.document;
  }
  return outcome.exit_code;
}
