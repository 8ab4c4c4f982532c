#include "chebtrunc/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace chebtrunc {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string format_int(std::int64_t value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_uint(std::uint64_t value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void CsvWriter::schema(const std::string& name) { out_ += "# schema " + name + "\n"; }

void CsvWriter::header(const std::string& row) { out_ += row + "\n"; }

CsvWriter& CsvWriter::field(const std::string& v) {
    if (row_open_) out_ += ',';
    out_ += v;
    row_open_ = true;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }
CsvWriter& CsvWriter::field(std::int64_t v) { return field(format_int(v)); }
CsvWriter& CsvWriter::field(int v) { return field(format_int(v)); }

void CsvWriter::end_row() {
    out_ += '\n';
    row_open_ = false;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace chebtrunc
