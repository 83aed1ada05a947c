#pragma once

#include <filesystem>
#include <string>

#include "segsym/grid.hpp"

namespace segsym::io {

/// Formats with 17 significant digits so text round-trips bit-exactly.
std::string fmt17(double v);

/// create_directories that reports failure as InputMissing.
void ensure_directory(const std::filesystem::path& dir);

/// Writes to `<path>.tmp` and renames over `path`, so readers never see a
/// partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

/// Field snapshot: a `# nx,ny,h,ox,oy` label line, a `# <values>` line, then
/// one comma-separated row of nx values per grid line (j = 0 first).
std::string field_to_csv(const Field& f);
Field field_from_csv(const std::string& text);

void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);

}  // namespace segsym::io
