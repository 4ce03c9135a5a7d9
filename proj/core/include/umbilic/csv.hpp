#pragma once

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace umbilic {

// 17 significant digits: round-trips every double.
std::string fmt17(double v);

// Comma-separated rows with a header, LF line endings.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& begin_row();
    CsvWriter& col(double v);
    CsvWriter& col(int v);
    CsvWriter& col(const std::string& v);

    std::string str() const;

  private:
    std::ostringstream out_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

// Writes via a temp file in the same directory followed by a rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace umbilic
