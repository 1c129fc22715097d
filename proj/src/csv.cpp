/*
 Copyright 2026 The vilqr Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "vilqr/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vilqr {

namespace {

bool needsQuotes(const std::string& cell) {
    return cell.find_first_of(",\"\n\r") != std::string::npos;
}

void writeCell(std::ostream& out, const std::string& cell) {
    if (!needsQuotes(cell)) {
        out << cell;
        return;
    }
    out << '"';
    for (char c : cell) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

void writeRow(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) {
            out << ',';
        }
        writeCell(out, row[i]);
    }
    out << '\n';
}

// Splits the whole file into records, honouring quoted fields.
std::vector<std::vector<std::string>> parseRecords(const std::string& text, const std::string& path) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool quoted = false;
    bool cell_started = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"' && !cell_started) {
            quoted = true;
            cell_started = true;
        } else if (c == ',') {
            record.push_back(std::move(cell));
            cell.clear();
            cell_started = false;
        } else if (c == '\n') {
            record.push_back(std::move(cell));
            cell.clear();
            cell_started = false;
            records.push_back(std::move(record));
            record.clear();
        } else if (c != '\r') {
            cell += c;
            cell_started = true;
        }
    }
    if (quoted) {
        throw CsvError(path + ": unterminated quoted field");
    }
    if (cell_started || !record.empty()) {
        record.push_back(std::move(cell));
        records.push_back(std::move(record));
    }
    return records;
}

} // namespace

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw CsvError("no column named '" + name + "'");
}

std::string formatDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

double parseDouble(const std::string& cell) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw CsvError("'" + cell + "' is not a number");
    }
    return v;
}

void writeCsv(const std::filesystem::path& path, const CsvTable& table) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CsvError("cannot open " + path.string() + " for writing");
    }
    writeRow(out, table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw CsvError(path.string() + ": row has " + std::to_string(row.size()) +
                           " cells, header has " + std::to_string(table.header.size()));
        }
        writeRow(out, row);
    }
    out.flush();
    if (!out) {
        throw CsvError("write failed for " + path.string());
    }
}

CsvTable readCsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CsvError("cannot open " + path.string() + " for reading");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    auto records = parseRecords(ss.str(), path.string());
    if (records.empty()) {
        throw CsvError(path.string() + ": missing header row");
    }
    CsvTable table;
    table.header = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != table.header.size()) {
            throw CsvError(path.string() + ": line " + std::to_string(i + 1) + " has " +
                           std::to_string(records[i].size()) + " cells, expected " +
                           std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[i]));
    }
    return table;
}

CsvTable trajectoryTable(const std::vector<double>& t, const std::vector<Vector>& X,
                         const std::vector<Vector>& U) {
    if (t.size() != X.size() || (U.size() != X.size() && U.size() + 1 != X.size())) {
        throw std::invalid_argument("trajectoryTable: inconsistent sample counts");
    }
    CsvTable table;
    const int n = X.empty() ? 0 : static_cast<int>(X.front().size());
    const int m = U.empty() ? 1 : static_cast<int>(U.front().size());
    table.header.push_back("t");
    for (int i = 0; i < n; ++i) {
        table.header.push_back("x" + std::to_string(i + 1));
    }
    for (int j = 0; j < m; ++j) {
        table.header.push_back(m == 1 ? "u" : "u" + std::to_string(j + 1));
    }
    for (std::size_t k = 0; k < X.size(); ++k) {
        std::vector<std::string> row{formatDouble(t[k])};
        for (int i = 0; i < n; ++i) {
            row.push_back(formatDouble(X[k](i)));
        }
        for (int j = 0; j < m; ++j) {
            row.push_back(k < U.size() ? formatDouble(U[k](j)) : std::string());
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace vilqr
