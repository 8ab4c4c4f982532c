#pragma once

#include <cstdint>
#include <string>

namespace chebtrunc {

/// Shortest decimal representation that round-trips the value (to_chars).
std::string format_double(double value);
std::string format_int(std::int64_t value);
std::string format_uint(std::uint64_t value);

/// Incremental CSV builder: comma-separated, LF line endings, UTF-8.
/// Schema versions are emitted as a leading '#' comment line.
class CsvWriter {
public:
    void schema(const std::string& name);
    void header(const std::string& row);

    CsvWriter& field(const std::string& v);
    CsvWriter& field(double v);
    CsvWriter& field(std::int64_t v);
    CsvWriter& field(int v);
    void end_row();

    const std::string& str() const { return out_; }

private:
    std::string out_;
    bool row_open_ = false;
};

void write_file(const std::string& path, const std::string& contents);

}  // namespace chebtrunc
