// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ob/quotients.hpp"
#include "ob/verify.hpp"
#include "obtool/json_io.hpp"

using namespace ob;

namespace {

// Wall-clock limits, in seconds.
constexpr double kRelationLimit = 60.0;
constexpr double kFuzzLimit = 300.0;
constexpr std::uint32_t kFuzzWords = 200;

struct Outcome {
  bool passed = true;
  std::string detail;
};

std::string timing(double t, double limit) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.2f s (limit %.0f s)", t, limit);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// All reports pass; the first failing one is quoted.
Outcome summarize(const std::vector<CheckReport>& reports) {
  Outcome o;
  for (const auto& r : reports)
    if (!r.passed && o.passed) {
      o.passed = false;
      o.detail = "failed: " + r.name + " " + r.detail + " " + r.witness;
    }
  if (o.passed) o.detail = std::to_string(reports.size()) + " checks";
  return o;
}

// Reports whose name contains every needle.
std::vector<CheckReport> select(const std::vector<CheckReport>& reports, std::vector<std::string> needles) {
  std::vector<CheckReport> out;
  for (const auto& r : reports) {
    bool all = true;
    for (const auto& n : needles) all = all && r.name.find(n) != std::string::npos;
    if (all) out.push_back(r);
  }
  return out;
}

Outcome require_present(Outcome o, const std::vector<CheckReport>& reports, const std::vector<std::string>& needles) {
  if (!o.passed) return o;
  if (select(reports, needles).empty()) {
    std::string joined;
    for (const auto& n : needles) joined += "'" + n + "' ";
    return {false, "missing check " + joined};
  }
  return o;
}

Outcome relations() {
  const auto start = std::chrono::steady_clock::now();
  const auto reports = relation_suite();
  const double t = seconds_since(start);
  Outcome o = summarize(reports);
  o = require_present(o, reports, {"relation", "(2,3,2,1,1)"});
  o.detail += timing(t, kRelationLimit);
  if (t >= kRelationLimit) o.passed = false;
  return o;
}

Outcome rank_levels_one_two(const std::vector<CheckReport>& basis) {
  const auto l1 = select(basis, {"basis l=1"});
  const auto l2 = select(basis, {"basis l=2"});
  std::vector<CheckReport> both = l1;
  both.insert(both.end(), l2.begin(), l2.end());
  Outcome o = summarize(both);
  if (l1.empty() || l2.empty()) return {false, "no rank checks for one of the levels"};
  o.detail += " (" + std::to_string(l1.size()) + " at l=1, " + std::to_string(l2.size()) + " at l=2)";
  return o;
}

Outcome independence_level_three(const std::vector<CheckReport>& basis) {
  const auto up = select(basis, {"affine independence ^ ", "l=3"});
  const auto updown = select(basis, {"affine independence ^v ", "l=3"});
  if (up.empty() || updown.empty()) return {false, "missing End(^) or End(^v) independence check"};
  std::vector<CheckReport> both = up;
  both.insert(both.end(), updown.begin(), updown.end());
  return summarize(both);
}

Outcome parameters() {
  const auto reports = parameter_suite();
  Outcome o = summarize(reports);
  for (const char* shape : {"(2,3,2,1,1)", "(2,2)", "(1,1)"}) o = require_present(o, reports, {"bubble values", shape});
  o = require_present(o, reports, {"down-dot power coefficients"});
  o = require_present(o, reports, {"counterclockwise bubbles"});
  return o;
}

Outcome cyclotomic() {
  const auto reports = cyclotomic_suite();
  Outcome o = summarize(reports);
  for (const char* level : {"l=1", "l=2", "l=3"}) {
    o = require_present(o, reports, {"bubble recursion in the quotient", level});
    o = require_present(o, reports, {"series satisfies the recursion", level});
  }
  return o;
}

Outcome level_one() {
  const auto reports = level_one_suite();
  Outcome o = summarize(reports);
  o = require_present(o, reports, {"on generators"});
  o = require_present(o, reports, {"50 composites"});
  o = require_present(o, reports, {"dimensions match matching counts"});
  return o;
}

Outcome fuzzing() {
  const auto start = std::chrono::steady_clock::now();
  SuiteOptions options;
  options.fuzz_count = kFuzzWords;
  const auto reports = fuzz_suite(options);
  const double t = seconds_since(start);
  Outcome o = summarize(reports);
  o = require_present(o, reports, {"filtered oracle fuzz"});
  o = require_present(o, reports, {"is detected"});
  o.detail += timing(t, kFuzzLimit);
  if (t >= kFuzzLimit) o.passed = false;
  return o;
}

Outcome walled_brauer() {
  const auto reports = walled_brauer_suite();
  Outcome o = summarize(reports);
  o = require_present(o, reports, {"(r+s)!"});
  o = require_present(o, reports, {"idempotent-up-to-scalar"});
  if (!o.passed) return o;
  AlgebraSpec spec;
  spec.delta = Scalar(5L);
  for (auto [r, s] : {std::pair{1u, 1u}, std::pair{2u, 1u}, std::pair{1u, 2u}}) {
    const std::string first = obtool::dump(obtool::structure_json(walled_brauer_algebra(r, s, spec)));
    const std::string second = obtool::dump(obtool::structure_json(walled_brauer_algebra(r, s, spec)));
    if (first != second) return {false, "JSON differs between runs for B(" + std::to_string(r) + "," + std::to_string(s) + ")"};
  }
  o.detail += ", JSON byte-stable";
  return o;
}

}  // namespace

int main() {
  const auto basis = basis_suite();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"relations hold in the engine and on tensor space", relations},
      {"rank equals basis count for l = 1, 2", [&] { return rank_levels_one_two(basis); }},
      {"independence at l = 3 with at most 2 dots", [&] { return independence_level_three(basis); }},
      {"bubble parameters and down-dot coefficients", parameters},
      {"cyclotomic and series recursions", cyclotomic},
      {"level one equivalence", level_one},
      {"oracle fuzzing and mutation detection", fuzzing},
      {"walled Brauer algebras", walled_brauer},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %zu: %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
