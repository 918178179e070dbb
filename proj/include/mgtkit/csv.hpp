#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace mgtkit {

/// Shortest decimal representation that round-trips the exact double.
/// Keeps CSV/JSON artifacts byte-stable across reruns.
std::string format_double(double v);

std::string csv_escape(const std::string& field);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& fields);
    void close();

private:
    std::ofstream out_;
    std::string path_;
    std::size_t width_ = 0;
};

}  // namespace mgtkit
