#pragma once

#include <string>
#include <vector>

namespace quadphi::csvio {

/// Shortest decimal string that round-trips to the same double.
std::string fmt_double(double v);

/// Writes content to a temp file in the destination directory, then renames
/// over the target; readers never observe a partial file.
void atomic_write_text(const std::string& path, const std::string& content);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Comma-separated, header row, '.' decimal point, LF line endings.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

CsvTable read_csv(const std::string& path);

} // namespace quadphi::csvio
