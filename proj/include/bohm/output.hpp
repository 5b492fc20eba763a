#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace bohm {

struct OutputFile {
    std::string path;  // relative to the run directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

/// Lowercase hex SHA-256 of a file's contents. Throws IoError.
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);
[[nodiscard]] std::string sha256_text(const std::string& text);

/// Shortest text that round-trips the double; "nan"/"inf"/"-inf" otherwise.
[[nodiscard]] std::string format_number(double v);

/// Columnar text with a fixed header; numbers use format_number.
class Csv {
public:
    explicit Csv(std::initializer_list<std::string> header);
    Csv& row(std::initializer_list<double> values);
    /// Row whose first cell is text (a label or flag), followed by numbers.
    Csv& row(const std::string& first, std::initializer_list<double> values);
    /// Numbers followed by a trailing text cell (a flag).
    Csv& row_with_tail(std::initializer_list<double> values, const std::string& last);
    [[nodiscard]] const std::string& text() const noexcept { return text_; }

private:
    std::string text_;
};

/// Writes files under one directory and records their checksums in order.
class OutputSet {
public:
    /// Creates the directory if needed. Throws IoError.
    explicit OutputSet(std::filesystem::path dir);

    void write(const std::string& name, const std::string& content);
    [[nodiscard]] const std::vector<OutputFile>& files() const noexcept { return files_; }
    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    std::filesystem::path dir_;
    std::vector<OutputFile> files_;
};

/// Writes content to path in one go. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace bohm
