#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace parisi {

/// Writes content atomically: temp file in the target directory, then rename.
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content);

/// RFC-4180 CSV: header row plus one row per record; numeric cells are
/// formatted with %.17g so identical data yields identical bytes.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace parisi
