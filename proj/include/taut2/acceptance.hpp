#pragma once

// The acceptance suite behind `taut2 verify` and the acceptance test binary.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace taut2::acceptance {

enum class Level { quick, full };

struct Options {
  Level level = Level::quick;
  unsigned jobs = 1;
  // Histogram cache for the genus-2 mass criterion; in-memory only if unset.
  std::optional<std::filesystem::path> cache_dir;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string expected;
  std::string actual;
  // Extra lines of evidence (timings, informational values).
  std::vector<std::string> notes;
};

using Reporter = std::function<void(const CriterionResult&)>;

// Runs criteria 1..13 in order; each result is passed to `report` as soon as
// it is known. Integrity failures inside a criterion mark it failed.
std::vector<CriterionResult> run(const Options& options, const Reporter& report = {});

std::string format_line(const CriterionResult& r);

// Number of standard Young tableaux of the given partition shape.
unsigned long long syt_count(const std::vector<int>& shape);

}  // namespace taut2::acceptance
