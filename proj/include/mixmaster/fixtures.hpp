// Reference tables shipped in appendix/ and the CSV reader behind them.
#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixmaster::fixtures {

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimal CSV reader: '#' comment lines and blank lines are skipped, the
/// first remaining line is the header, double-quoted fields may contain
/// commas.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  static CsvTable read(const std::filesystem::path& path);
  static CsvTable parse(const std::string& text, const std::string& origin = "<memory>");
};

/// Takens order alpha, beta and the stored resonance vector for the base
/// point u = [m; tail] in a sector. pattern is the tail period, e.g. "3-5".
struct AlphaRow {
  std::string pattern;
  int m = 0;
  int sector = 0;
  int alpha = 0;
  int beta = 0;
  std::array<long, 3> k{};
};

class AlphaTable {
 public:
  AlphaTable() = default;
  explicit AlphaTable(std::vector<AlphaRow> rows) : rows_(std::move(rows)) {}

  static AlphaTable load(const std::filesystem::path& path);

  const std::vector<AlphaRow>& rows() const { return rows_; }
  /// nullptr if absent.
  const AlphaRow* find(const std::string& pattern, int m, int sector) const;

 private:
  std::vector<AlphaRow> rows_;
};

struct EigenRow {
  int block = 0;
  double u_start = 0;
  std::string passage;
  int sector = 0;
  double lc = 0, lt = 0, ln = 0, la = 0;
};

struct CllpRow {
  int block = 0;
  double u_start = 0;
  std::string passage;  // "final" for the composed map
  double mu1 = 0, mu2 = 0;
  double v1 = 0, v2 = 0;
};

std::vector<EigenRow> load_eigen_rows(const std::filesystem::path& path);
std::vector<CllpRow> load_cllp_rows(const std::filesystem::path& path);
std::array<double, 4> load_matrix(const std::filesystem::path& path);

/// MIXMASTER_FIXTURES if set, otherwise the appendix/ directory of the
/// source tree.
std::filesystem::path default_fixture_dir();

inline constexpr const char* kTakensFile = "takens.csv";
inline constexpr const char* kEigenFile = "eigenvalues_classic18.csv";
inline constexpr const char* kCllpFile = "cllp_classic18.csv";
inline constexpr const char* kMatrixFile = "cllp_classic18_matrix.csv";

}  // namespace mixmaster::fixtures
