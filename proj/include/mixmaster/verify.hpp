// Recomputes every transcribed fixture table and reports per-row deltas.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mixmaster::verify {

struct RowCheck {
  std::string table;
  /// e.g. "block 3 sector 4"
  std::string row;
  double delta = 0;
  double tolerance = 0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<RowCheck> rows;

  std::size_t passed() const;
  bool pass() const { return passed() == rows.size(); }
};

/// One check per row of takens.csv (exact k), eigenvalues_classic18.csv
/// (absolute 1e-4), cllp_classic18.csv (absolute 5e-4 per block, relative
/// 0.5% on the composed eigenvalues) and cllp_classic18_matrix.csv
/// (relative 0.5%). Throws fixtures::FixtureError on unreadable files.
VerifyReport verify_appendix(const std::filesystem::path& dir);

}  // namespace mixmaster::verify
