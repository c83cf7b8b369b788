// Acceptance harness: relation suites, oracle fuzzing, parameter identities and
// desk-scale rank checks of the basis theorems.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ob/diagrams.hpp"
#include "ob/quotients.hpp"
#include "ob/reps.hpp"
#include "ob/rewrite.hpp"

namespace ob {

struct CheckReport {
  std::string name;
  bool passed = false;
  std::string detail;   // short summary, e.g. "rank 8 = count 8"
  std::string witness;  // offending input and both sides, on failure
  double seconds = 0.0;
};

bool all_passed(const std::vector<CheckReport>& reports);

struct FuzzBounds {
  std::uint32_t max_slices = 8;
  std::uint32_t max_dots = 4;
  std::uint32_t max_width = 3;  // source length; cups only on levels of at most this length
};

// Random typable slice word; deterministic for a given generator state.
SliceWord random_slice_word(std::mt19937_64& rng, const FuzzBounds& bounds, bool allow_dots = true);

// Distinct nonzero rationals for the parameters m_1..m_ℓ.
std::vector<Scalar> random_parameters(std::mt19937_64& rng, std::uint32_t levels);

struct SuiteOptions {
  Pyramid pyramid{std::vector<std::uint32_t>{2, 3, 2, 1, 1}};
  std::uint64_t seed = 0;
  std::uint32_t fuzz_count = 200;
};

// Defining relations, their primed and graded forms, in the engine and in the
// tensor representation of `pyramid`.
std::vector<CheckReport> relation_suite(const SuiteOptions& options = {});

// Rank of the stacked images of the cyclotomic normal basis Hom(a, b) under Ψ_λ
// with f = Π(u − m_i); passes iff it equals the basis count. Throws
// std::invalid_argument when min(λ) is below the average length of a and b.
CheckReport basis_theorem_check(const Word& a, const Word& b, const CyclotomicData& cd, const Pyramid& p,
                                const std::vector<Scalar>& m);
// Linear independence of an explicit list of diagrams under Ψ_λ.
CheckReport independence_check(std::string name, const std::vector<BasisElement>& elements, const Pyramid& p,
                               const std::vector<Scalar>& m);

struct FuzzOutcome {
  CheckReport report;
  std::size_t checked = 0;
};
// Ψ-consistency, idempotence and linearity of normalization on random words.
FuzzOutcome oracle_fuzz(const Engine& engine, std::uint64_t seed, std::uint32_t count, const FuzzBounds& bounds = {});
// The fuzz run against a rule set with one sign flipped; passes iff detected.
CheckReport mutation_check(std::uint64_t seed, std::uint32_t count);

std::vector<CheckReport> fuzz_suite(const SuiteOptions& options = {});
std::vector<CheckReport> basis_suite(const SuiteOptions& options = {});
std::vector<CheckReport> parameter_suite(const SuiteOptions& options = {});
std::vector<CheckReport> cyclotomic_suite(const SuiteOptions& options = {});
std::vector<CheckReport> level_one_suite(const SuiteOptions& options = {});
std::vector<CheckReport> walled_brauer_suite(const SuiteOptions& options = {});

const std::vector<std::string>& suite_names();
// "all" runs every suite; independent suites run concurrently and are merged in
// declaration order. Throws std::invalid_argument on an unknown name.
std::vector<CheckReport> run_suite(std::string_view name, const SuiteOptions& options = {});

}  // namespace ob
