#include "core/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace levyopt {

void write_csv(const std::string& path, const CsvTable& table, int precision) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (std::size_t c = 0; c < table.header.size(); ++c)
        out << (c ? "," : "") << table.header[c];
    out << '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw IoError("row width mismatch writing " + path);
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.*g", precision, row[c]);
            if (c) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.header.push_back(cell);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw IoError(path + ":" + std::to_string(lineno) + ": bad numeric cell '" +
                              cell + "'");
            row.push_back(v);
        }
        if (row.size() != t.header.size())
            throw IoError(path + ":" + std::to_string(lineno) + ": row width mismatch");
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------- path files ----------------

void save_path_csv(const std::string& path, const std::vector<double>& obs) {
    CsvTable t;
    t.header = {"i", "x"};
    t.rows.reserve(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        t.rows.push_back({(double)i, obs[i]});
    write_csv(path, t);
}

std::vector<double> load_path_csv(const std::string& path) {
    const CsvTable t = read_csv(path);
    if (t.header.size() != 2 || t.header[0] != "i" || t.header[1] != "x")
        throw IoError(path + ": expected header i,x");
    std::vector<double> obs;
    obs.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i][0] != (double)i)
            throw IoError(path + ": index column must run 0..n without gaps");
        obs.push_back(t.rows[i][1]);
    }
    if (obs.empty()) throw IoError(path + ": no observations");
    return obs;
}

}  // namespace levyopt
