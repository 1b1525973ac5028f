#include "whittaker_lab/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace wlab::verify;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<SuiteReport()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Schur triple agreement", [] { return schur_triple({}); }},
      {2, "Cauchy identity", [] { return cauchy({}); }},
      {3, "Stade-type product formula", [] { return stade({}); }},
      {4, "inversion theorem", [] { return inversion({}); }},
      {5, "corollary round trip", [] { return round_trip({}); }},
      {6, "Plancherel", [] { return plancherel({}); }},
      {7, "L-factor closed forms", [] { return lfactor_closed({}); }},
      {8, "integral representation", [] { return integral_representation({}); }},
      {9, "quadrature/constant-term equivalence", [] { return quadrature_equivalence({}); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    std::string error;
    try {
      report = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && report.passed();
    if (!ok) ++failed;

    double worst_ratio = 0.0;
    const Check* worst = nullptr;
    for (const auto& check : report.checks) {
      const double ratio = check.bound > 0.0 ? check.worst_error / check.bound : (check.worst_error > 0.0 ? 1e300 : 0.0);
      if (!worst || ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = &check;
      }
    }
    if (!error.empty()) {
      std::printf("criterion %d %s: FAIL (exception: %s)\n", c.id, c.title.c_str(), error.c_str());
    } else if (worst) {
      std::printf("criterion %d %s: %s (%zu checks; tightest: %s, error %.3e vs bound %.3e; %.1fs)\n", c.id,
                  c.title.c_str(), ok ? "PASS" : "FAIL", report.checks.size(), worst->label.c_str(),
                  worst->worst_error, worst->bound, seconds);
    } else {
      std::printf("criterion %d %s: FAIL (no checks ran)\n", c.id, c.title.c_str());
    }
    for (const auto& check : report.checks) {
      if (!check.passed()) {
        std::printf("  failing check: %s (%ld of %ld samples, worst %.3e vs %.3e)\n", check.label.c_str(),
                    check.failures, check.samples, check.worst_error, check.bound);
      }
    }
    for (const auto& note : report.notes) std::printf("  note: %s\n", note.c_str());
  }
  return failed == 0 ? 0 : 1;
}
