#pragma once

#include <string>
#include <vector>

namespace levyopt {

// Minimal numeric CSV: one header row, then double-valued cells. Files are
// UTF-8 with LF line endings and a fixed column order set by the caller.

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// precision = significant digits (%.{p}g); 17 round-trips doubles exactly.
void write_csv(const std::string& path, const CsvTable& table, int precision = 17);
CsvTable read_csv(const std::string& path);

// Observation paths on the grid i/n: columns (i, x) with i = 0..n contiguous.
void save_path_csv(const std::string& path, const std::vector<double>& obs);
std::vector<double> load_path_csv(const std::string& path);

}  // namespace levyopt
