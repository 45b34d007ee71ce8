#include "condbell/cli/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

namespace condbell::cli {

namespace {

constexpr std::size_t kMaxListedErrors = 20;

std::string summarize(const std::string& source, const std::vector<RowError>& rows, std::size_t total) {
    std::string msg = source + ": " + std::to_string(total) + " malformed row(s)";
    for (const RowError& r : rows) msg += "\n  line " + std::to_string(r.line) + ": " + r.message;
    if (total > rows.size()) msg += "\n  ... " + std::to_string(total - rows.size()) + " more";
    return msg;
}

/// Splits on commas and parses each field as a base-10 integer.
bool parseFields(std::string_view line, std::array<long long, 7>& fields, std::string& error) {
    std::size_t n = 0;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        const std::string_view field =
            line.substr(pos, comma == std::string_view::npos ? line.size() - pos : comma - pos);
        if (n == fields.size()) {
            error = "expected 7 fields";
            return false;
        }
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
            error = "field " + std::to_string(n + 1) + " ('" + std::string(field) + "') is not an integer";
            return false;
        }
        fields[n++] = v;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (n != fields.size()) {
        error = "expected 7 fields, got " + std::to_string(n);
        return false;
    }
    return true;
}

}  // namespace

CsvSchemaError::CsvSchemaError(const std::string& source, std::vector<RowError> rows, std::size_t totalErrors)
    : Error(summarize(source, rows, totalErrors)), rows_(std::move(rows)), total_(totalErrors) {}

void writeCsv(std::ostream& out, const std::vector<EventRecord>& records) {
    out << kCsvHeader << '\n';
    std::string line;
    for (const EventRecord& r : records) {
        line.clear();
        line += std::to_string(r.trial);
        for (int v : {r.aSetting, r.bSetting, r.A1, r.A2, r.B1, r.B2}) {
            line += ',';
            line += std::to_string(v);
        }
        line += '\n';
        out << line;
    }
}

std::vector<EventRecord> readCsv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw CsvEmptyError(source + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) {
        throw CsvSchemaError(source,
                             {RowError{1, "header must be '" + std::string(kCsvHeader) + "', got '" + line + "'"}}, 1);
    }

    std::vector<EventRecord> records;
    std::vector<RowError> errors;
    std::size_t totalErrors = 0;
    std::size_t lineNo = 1;
    auto fail = [&](std::string msg) {
        ++totalErrors;
        if (errors.size() < kMaxListedErrors) errors.push_back(RowError{lineNo, std::move(msg)});
    };

    std::array<long long, 7> f{};
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            fail("empty row");
            continue;
        }
        std::string err;
        if (!parseFields(line, f, err)) {
            fail(err);
            continue;
        }
        if (f[0] < 0) {
            fail("trial index must be nonnegative");
            continue;
        }
        if (!isSetting(static_cast<int>(f[1])) || !isSetting(static_cast<int>(f[2]))) {
            fail("settings a, b must be 1 or 2");
            continue;
        }
        bool inRange = true;
        for (int k = 3; k < 7; ++k) inRange = inRange && f[k] >= -1 && f[k] <= 1;
        if (!inRange) {
            fail("observable values must be -1, 0 or 1");
            continue;
        }
        EventRecord r{
            static_cast<std::uint64_t>(f[0]), static_cast<int>(f[1]), static_cast<int>(f[2]), static_cast<int>(f[3]),
            static_cast<int>(f[4]),           static_cast<int>(f[5]), static_cast<int>(f[6])};
        if (!r.isStructurallyValid()) {
            fail("selected observables must be nonzero and unselected ones zero (a=" + std::to_string(r.aSetting) +
                 ", b=" + std::to_string(r.bSetting) + ")");
            continue;
        }
        records.push_back(r);
    }
    if (totalErrors > 0) throw CsvSchemaError(source, std::move(errors), totalErrors);
    if (records.empty()) throw CsvEmptyError(source + ": no data rows");
    return records;
}

}  // namespace condbell::cli
