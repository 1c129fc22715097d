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

#ifndef VILQR_CSV_HPP
#define VILQR_CSV_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "vilqr/dynamics.hpp"

namespace vilqr {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// String table; cells are already formatted. Column order is the header order.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const CsvTable&) const = default;

    /// Index of a header column; throws CsvError if absent.
    std::size_t column(const std::string& name) const;
};

/// Full-precision scientific notation, e.g. 1.2345678901234567e-02. Round-trips exactly.
std::string formatDouble(double v);

double parseDouble(const std::string& cell);

/// Writes header plus rows. Cells containing ',', '"' or newlines are quoted.
void writeCsv(const std::filesystem::path& path, const CsvTable& table);

CsvTable readCsv(const std::filesystem::path& path);

/**
 * @brief Columns t, x1..xn, u1..um; one row per state sample.
 *
 * U may be one shorter than X (an ILQR trajectory); the input cells of the
 * final row are then left empty.
 */
CsvTable trajectoryTable(const std::vector<double>& t, const std::vector<Vector>& X,
                         const std::vector<Vector>& U);

} // namespace vilqr

#endif // VILQR_CSV_HPP
