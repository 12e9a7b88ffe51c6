// Runs the verification suites at default budgets and prints one PASS/FAIL
// line per acceptance criterion. Exit code 0 iff every criterion passes.

#include "hobody/catalog.hpp"
#include "hobody/harness.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <utility>

using namespace hobody;

namespace {

using Grid = std::vector<std::pair<int, int>>;

const Grid kMain{{2, 1}, {2, 2}, {3, 1}, {3, 2}};

class Runner {
 public:
  const SuiteReport& report(const std::string& suite, int n, int m) {
    const auto key = std::make_tuple(suite, n, m);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    SuiteConfig cfg;
    cfg.n = n;
    cfg.m = m;
    const auto start = std::chrono::steady_clock::now();
    SuiteReport r = run_suite(suite, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::fprintf(stderr, "  [%s n=%d m=%d: %zu rows, %.1f s]\n", suite.c_str(), n, m, r.rows.size(), secs);
    for (const std::string& note : r.notes) std::fprintf(stderr, "  note: %s\n", note.c_str());
    return cache_.emplace(key, std::move(r)).first->second;
  }

 private:
  std::map<std::tuple<std::string, int, int>, SuiteReport> cache_;
};

struct Tally {
  std::size_t rows = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

using RowFilter = std::function<bool(const ReportRow&)>;

bool any_row(const ReportRow&) { return true; }

Tally tally(Runner& runner, const std::string& suite, const Grid& grid, const RowFilter& keep) {
  Tally t;
  for (const auto& [n, m] : grid) {
    for (const ReportRow& row : runner.report(suite, n, m).rows) {
      if (!keep(row)) continue;
      ++t.rows;
      if (!row.pass) {
        if (t.failed++ == 0)
          t.first_failure = row.body + " (n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                            ", value " + std::to_string(row.value) + " vs " + std::to_string(row.reference) + ")";
      }
    }
  }
  return t;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

int main() {
  Runner runner;
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();

  auto criterion = [&](int id, const std::string& what, const std::vector<Tally>& parts) {
    Tally all;
    for (const Tally& p : parts) {
      all.rows += p.rows;
      all.failed += p.failed;
      if (all.first_failure.empty()) all.first_failure = p.first_failure;
    }
    const bool ok = all.rows > 0 && all.failed == 0;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << what << " [" << all.rows - all.failed << "/"
              << all.rows << " rows]";
    if (!ok && !all.first_failure.empty()) std::cout << " first failure: " << all.first_failure;
    if (all.rows == 0) std::cout << " no rows";
    std::cout << std::endl;
  };

  const RowFilter simplex_rows = [](const ReportRow& r) { return is_simplex_name(r.body); };
  const RowFilter other_rows = [](const ReportRow& r) { return !is_simplex_name(r.body); };

  criterion(1, "Rogers-Shephard equality for simplices", {tally(runner, "rogers-shephard", kMain, simplex_rows)});
  criterion(2, "Rogers-Shephard upper bound for other bodies", {tally(runner, "rogers-shephard", kMain, other_rows)});
  criterion(3, "Zhang equality and lower bound", {tally(runner, "zhang", kMain, any_row)});
  criterion(4, "Petty maximality and planar anchors", {tally(runner, "petty", kMain, any_row)});
  criterion(5, "Variational formula for the covariogram", {tally(runner, "variational", kMain, any_row)});
  criterion(6, "Berwald chain monotonicity", {tally(runner, "chain", kMain, any_row)});
  criterion(7, "Radial mean body volume identity", {tally(runner, "rmb-volume", kMain, any_row)});
  criterion(8, "Duality identity", {tally(runner, "duality", {{2, 1}, {2, 2}}, any_row)});
  const RowFilter ball_centroid = [](const ReportRow& r) { return starts_with(r.body, "ball-centroid:"); };
  const RowFilter minimality = [](const ReportRow& r) { return !starts_with(r.body, "ball-centroid:"); };
  criterion(9, "Ball centroid constant", {tally(runner, "busemann-petty", {{2, 1}, {2, 2}, {3, 1}}, ball_centroid)});
  criterion(10, "Busemann-Petty minimality", {tally(runner, "busemann-petty", {{2, 1}, {2, 2}}, minimality)});
  criterion(11, "Random simplex expectation and functional", {tally(runner, "random-simplex", {{2, 1}, {2, 2}, {3, 1}}, any_row)});
  criterion(12, "Steiner symmetrization", {tally(runner, "steiner", kMain, any_row)});
  criterion(13, "Petty isoperimetric inequality", {tally(runner, "petty-isoperimetric", kMain, any_row)});
  criterion(14, "Invariance identities", {tally(runner, "invariance", kMain, any_row)});

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (14 - failures) << "/14 criteria passed in " << secs << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
