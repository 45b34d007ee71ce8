#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "condbell/errors.hpp"
#include "condbell/montecarlo.hpp"

namespace condbell::cli {

/// Exact header line of the event-record CSV.
inline constexpr const char* kCsvHeader = "trial,a,b,A1,A2,B1,B2";

struct RowError {
    std::size_t line = 0;  // 1-based line in the file; the header is line 1
    std::string message;
};

/// Rows that do not conform to the schema or violate the selected-setting
/// structure. Lists every offending row (up to a cap) with its line number.
class CsvSchemaError : public Error {
public:
    CsvSchemaError(const std::string& source, std::vector<RowError> rows, std::size_t totalErrors);

    const std::vector<RowError>& rows() const noexcept { return rows_; }
    std::size_t totalErrors() const noexcept { return total_; }

private:
    std::vector<RowError> rows_;
    std::size_t total_;
};

/// File without a header or without any data row.
class CsvEmptyError : public Error {
public:
    using Error::Error;
};

void writeCsv(std::ostream& out, const std::vector<EventRecord>& records);

std::vector<EventRecord> readCsv(std::istream& in, const std::string& source = "<csv>");

}  // namespace condbell::cli
