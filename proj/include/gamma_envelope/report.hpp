#pragma once

#include <string>
#include <vector>

namespace gamma_envelope::report {

/// Round-trip rendering: 17 significant digits, '.' decimal
/// separator regardless of locale, "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double v);

/// Compact rendering for human-facing tables (9 significant digits).
std::string format_short(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    /// LF line endings; cells with commas, quotes or newlines are quoted.
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

class MarkdownTable {
public:
    explicit MarkdownTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace gamma_envelope::report
