#include <umbilic/csv.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace umbilic {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ",";
        out_ << header[i];
    }
    out_ << "\n";
    in_row_ = columns_;
}

CsvWriter& CsvWriter::begin_row() {
    if (in_row_ != columns_)
        throw std::logic_error("csv row with wrong column count");
    out_ << "";
    in_row_ = 0;
    return *this;
}

CsvWriter& CsvWriter::col(double v) { return col(fmt17(v)); }
CsvWriter& CsvWriter::col(int v) { return col(std::to_string(v)); }

CsvWriter& CsvWriter::col(const std::string& v) {
    if (in_row_) out_ << ",";
    out_ << v;
    if (++in_row_ == columns_) out_ << "\n";
    return *this;
}

std::string CsvWriter::str() const {
    if (in_row_ != columns_) throw std::logic_error("csv ends mid-row");
    return out_.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace umbilic
