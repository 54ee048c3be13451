#include "gamma_envelope/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gamma_envelope::report {
namespace {

std::string format_with(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, precision);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_cells(const std::vector<std::string>& cells) {
    std::vector<std::string> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(csv_cell(c));
    return out;
}

std::string join(const std::vector<std::string>& cells, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += sep;
        out += cells[i];
    }
    return out;
}

}  // namespace

std::string format_double(double v) { return format_with(v, 17); }
std::string format_short(double v) { return format_with(v, 9); }

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::invalid_argument("CsvWriter: row width mismatch");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
    std::string out = join(csv_cells(header_), ",") + "\n";
    for (const auto& r : rows_) out += join(csv_cells(r), ",") + "\n";
    return out;
}

MarkdownTable::MarkdownTable(std::vector<std::string> header) : header_(std::move(header)) {}

void MarkdownTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::invalid_argument("MarkdownTable: row width mismatch");
    rows_.push_back(std::move(cells));
}

std::string MarkdownTable::str() const {
    std::string out = "| " + join(header_, " | ") + " |\n|";
    for (std::size_t i = 0; i < header_.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& r : rows_) out += "| " + join(r, " | ") + " |\n";
    return out;
}

}  // namespace gamma_envelope::report
