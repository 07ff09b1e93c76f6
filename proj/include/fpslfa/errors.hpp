#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fpslfa {

// An input file (dataset, config) that could not be read as its format.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, std::size_t line, const std::string& detail)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + detail),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

// A model snapshot with a bad magic, version, or payload size.
class FormatError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An invalid or contradictory run configuration.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Factors left the finite range during an update. The row/column identify
// the entry whose update blew up; the epoch is filled in by the training
// loop before the error reaches the caller.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::uint32_t row, std::uint32_t col, const std::string& detail)
        : std::runtime_error("divergence at entry (" + std::to_string(row) + ", " +
                             std::to_string(col) + "): " + detail),
          row_(row),
          col_(col) {}

    DivergenceError(std::uint32_t row, std::uint32_t col, std::size_t epoch,
                    const std::string& detail)
        : std::runtime_error("divergence at entry (" + std::to_string(row) + ", " +
                             std::to_string(col) + "), epoch " + std::to_string(epoch) +
                             ": " + detail),
          row_(row),
          col_(col),
          epoch_(static_cast<std::ptrdiff_t>(epoch)) {}

    std::uint32_t row() const { return row_; }
    std::uint32_t col() const { return col_; }
    std::ptrdiff_t epoch() const { return epoch_; }  // -1 when not yet annotated

private:
    std::uint32_t row_;
    std::uint32_t col_;
    std::ptrdiff_t epoch_ = -1;
};

}  // namespace fpslfa
