#include "segsym/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "segsym/error.hpp"

namespace segsym::io {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    fail(ErrorKind::InputMissing, "cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::InputMissing, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::InputMissing, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::InputMissing, "cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InputMissing, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string field_to_csv(const Field& f) {
  const Grid2D& g = f.grid;
  std::string out = "# nx,ny,h,ox,oy\n# " + std::to_string(g.nx) + "," + std::to_string(g.ny) + "," +
                    fmt17(g.h) + "," + fmt17(g.origin.x) + "," + fmt17(g.origin.y) + "\n";
  out.reserve(out.size() + g.size() * 24);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i) out += ',';
      out += fmt17(f.at(i, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<double> parse_row(const std::string& line, int lineno) {
  std::vector<double> vals;
  const char* p = line.c_str();
  while (*p) {
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p) fail(ErrorKind::InputMissing, "field csv: bad number on line " + std::to_string(lineno));
    vals.push_back(v);
    p = end;
    while (*p == ' ' || *p == '\r') ++p;
    if (*p == ',') ++p;
  }
  return vals;
}

}  // namespace

Field field_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  Grid2D grid;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (body.find_first_of("0123456789") == std::string::npos || body.find("nx") != std::string::npos) continue;
      const auto hdr = parse_row(body, lineno);
      if (hdr.size() != 5) fail(ErrorKind::InputMissing, "field csv: header needs nx,ny,h,ox,oy");
      grid = Grid2D(static_cast<int>(hdr[0]), static_cast<int>(hdr[1]), hdr[2], {hdr[3], hdr[4]});
      have_header = true;
      continue;
    }
    if (!have_header) fail(ErrorKind::InputMissing, "field csv: data before header");
    const auto row = parse_row(line, lineno);
    if (static_cast<int>(row.size()) != grid.nx)
      fail(ErrorKind::InputMissing, "field csv: row " + std::to_string(lineno) + " has wrong length");
    values.insert(values.end(), row.begin(), row.end());
  }
  if (!have_header) fail(ErrorKind::InputMissing, "field csv: missing header");
  if (values.size() != grid.size()) fail(ErrorKind::InputMissing, "field csv: wrong number of rows");
  return Field(grid, std::move(values));
}

void write_field(const std::filesystem::path& path, const Field& f) { write_atomic(path, field_to_csv(f)); }

Field read_field(const std::filesystem::path& path) { return field_from_csv(read_text(path)); }

}  // namespace segsym::io
