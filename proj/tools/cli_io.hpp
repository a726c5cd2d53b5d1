#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relab/relab.h"

namespace relab_cli {

// Raised for failures that map onto a process exit code.
class CliError : public std::runtime_error {
public:
    CliError(int exit_code, const std::string& msg) : std::runtime_error(msg), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

int exit_code_for(relab_status s);
// Throws CliError when s is not RELAB_OK.
void check(relab_status s, const char* what);

enum class Format { json, tsv };

using Cell = std::variant<double, std::int64_t, std::string, std::nullptr_t>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

class Report {
public:
    Report(std::string command, std::uint64_t seed, std::string base, std::uint64_t digest);
    void scalar(const std::string& key, Cell value);
    Table& table(const std::string& name, std::vector<std::string> columns);
    // Long-form curve rows (x, y, series) collected into one "curves" table.
    void curve_point(const std::string& series, double x, double y);
    void write(std::ostream& os, Format format) const;

private:
    std::vector<std::pair<std::string, Cell>> meta_;
    std::vector<std::pair<std::string, Cell>> scalars_;
    std::vector<Table> tables_;
    Table curves_{"curves", {"x", "y", "series"}, {}};
};

// Fixed 12-significant-digit rendering shared by both encodings.
std::string format_number(double x);
double round12(double x);
std::string hex64(std::uint64_t x);

std::string read_file(const std::string& path);
std::uint64_t digest_of(const std::string& bytes);

std::vector<std::string> parse_labels(const std::string& content);

struct Spikes {
    std::vector<double> times;
    double T = 0.0;
    bool has_header = false;
};
Spikes parse_spikes(const std::string& content);

struct Csv {
    std::vector<std::string> header;  // empty when the file has none
    std::vector<std::vector<std::string>> cells;
};
Csv parse_csv(const std::string& content);

std::vector<double> parse_double_list(const std::string& text);

}  // namespace relab_cli
