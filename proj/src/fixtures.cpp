#include "mixmaster/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef MIXMASTER_FIXTURE_DIR
#define MIXMASTER_FIXTURE_DIR "appendix"
#endif

namespace mixmaster::fixtures {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FixtureError("bad integer '" + s + "' in " + what);
  }
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FixtureError("bad number '" + s + "' in " + what);
  }
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FixtureError("missing column '" + name + "'");
}

CsvTable CsvTable::parse(const std::string& text, const std::string& origin) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto fields = split_line(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw FixtureError(origin + ": row has " + std::to_string(fields.size()) + " fields, header has " +
                         std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw FixtureError(origin + ": no header line");
  return table;
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot read fixture file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

AlphaTable AlphaTable::load(const std::filesystem::path& path) {
  CsvTable t = CsvTable::read(path);
  const std::string what = path.string();
  std::size_t cp = t.column("pattern"), cm = t.column("m"), cs = t.column("sector"), ca = t.column("alpha"),
              cb = t.column("beta"), k1 = t.column("k1"), k2 = t.column("k2"), k3 = t.column("k3");
  std::vector<AlphaRow> rows;
  for (const auto& r : t.rows) {
    AlphaRow row;
    row.pattern = r[cp];
    row.m = to_int(r[cm], what);
    row.sector = to_int(r[cs], what);
    row.alpha = to_int(r[ca], what);
    row.beta = to_int(r[cb], what);
    row.k = {to_int(r[k1], what), to_int(r[k2], what), to_int(r[k3], what)};
    rows.push_back(std::move(row));
  }
  return AlphaTable(std::move(rows));
}

const AlphaRow* AlphaTable::find(const std::string& pattern, int m, int sector) const {
  for (const auto& r : rows_) {
    if (r.pattern == pattern && r.m == m && r.sector == sector) return &r;
  }
  return nullptr;
}

std::vector<EigenRow> load_eigen_rows(const std::filesystem::path& path) {
  CsvTable t = CsvTable::read(path);
  const std::string what = path.string();
  std::size_t cb = t.column("block"), cu = t.column("u_start"), cp = t.column("passage"), cs = t.column("sector"),
              c1 = t.column("lc"), c2 = t.column("lt"), c3 = t.column("ln"), c4 = t.column("la");
  std::vector<EigenRow> out;
  for (const auto& r : t.rows) {
    out.push_back({to_int(r[cb], what), to_double(r[cu], what), r[cp], to_int(r[cs], what), to_double(r[c1], what),
                   to_double(r[c2], what), to_double(r[c3], what), to_double(r[c4], what)});
  }
  return out;
}

std::vector<CllpRow> load_cllp_rows(const std::filesystem::path& path) {
  CsvTable t = CsvTable::read(path);
  const std::string what = path.string();
  std::size_t cb = t.column("block"), cu = t.column("u_start"), cp = t.column("passage"), m1 = t.column("mu1"),
              m2 = t.column("mu2"), v1 = t.column("v1"), v2 = t.column("v2");
  std::vector<CllpRow> out;
  for (const auto& r : t.rows) {
    out.push_back({to_int(r[cb], what), to_double(r[cu], what), r[cp], to_double(r[m1], what), to_double(r[m2], what),
                   to_double(r[v1], what), to_double(r[v2], what)});
  }
  return out;
}

std::array<double, 4> load_matrix(const std::filesystem::path& path) {
  CsvTable t = CsvTable::read(path);
  if (t.rows.size() != 1) throw FixtureError(path.string() + ": expected exactly one matrix row");
  const std::string what = path.string();
  const auto& r = t.rows.front();
  return {to_double(r[t.column("m11")], what), to_double(r[t.column("m12")], what),
          to_double(r[t.column("m21")], what), to_double(r[t.column("m22")], what)};
}

std::filesystem::path default_fixture_dir() {
  if (const char* env = std::getenv("MIXMASTER_FIXTURES"); env && *env) return env;
  return MIXMASTER_FIXTURE_DIR;
}

}  // namespace mixmaster::fixtures
