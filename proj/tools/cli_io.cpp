#include "cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace relab_cli {

int exit_code_for(relab_status s) {
    switch (s) {
        case RELAB_OK: return 0;
        case RELAB_E_NUMERICAL:
        case RELAB_E_TOO_LARGE:
        case RELAB_E_INTERNAL:
        case RELAB_E_BUFFER: return 1;
        default: return 2;
    }
}

void check(relab_status s, const char* what) {
    if (s == RELAB_OK) return;
    throw CliError(exit_code_for(s), std::string(what) + ": " + relab_status_name(s) + ": " + relab_last_error());
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

Report::Report(std::string command, std::uint64_t seed, std::string base, std::uint64_t digest) {
    meta_.emplace_back("tool", std::string("relab"));
    meta_.emplace_back("version", std::string(relab_version()));
    meta_.emplace_back("command", std::move(command));
    meta_.emplace_back("seed", static_cast<std::int64_t>(seed));
    meta_.emplace_back("base", std::move(base));
    meta_.emplace_back("input_digest", hex64(digest));
}

void Report::scalar(const std::string& key, Cell value) { scalars_.emplace_back(key, std::move(value)); }

Table& Report::table(const std::string& name, std::vector<std::string> columns) {
    tables_.push_back(Table{name, std::move(columns), {}});
    return tables_.back();
}

void Report::curve_point(const std::string& series, double x, double y) {
    curves_.rows.push_back({x, y, series});
}

namespace {

nlohmann::ordered_json to_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return round12(*d);
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return nullptr;
}

std::string to_tsv(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return "null";
}

void write_tsv_table(std::ostream& os, const Table& t) {
    os << "\n#table\t" << t.name << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "\t" : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << to_tsv(row[i]);
        os << '\n';
    }
}

}  // namespace

void Report::write(std::ostream& os, Format format) const {
    if (format == Format::json) {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : meta_) j[k] = to_json(v);
        auto& s = j["results"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : scalars_) s[k] = to_json(v);
        auto& tj = j["tables"] = nlohmann::ordered_json::object();
        auto emit = [&](const Table& t) {
            auto& o = tj[t.name];
            o["columns"] = t.columns;
            auto rows = nlohmann::ordered_json::array();
            for (const auto& row : t.rows) {
                auto r = nlohmann::ordered_json::array();
                for (const auto& c : row) r.push_back(to_json(c));
                rows.push_back(std::move(r));
            }
            o["rows"] = std::move(rows);
        };
        for (const auto& t : tables_) emit(t);
        if (!curves_.rows.empty()) emit(curves_);
        os << j.dump(2) << '\n';
        return;
    }
    for (const auto& [k, v] : meta_) os << '#' << k << '\t' << to_tsv(v) << '\n';
    if (!scalars_.empty()) {
        os << "\n#table\tresults\nkey\tvalue\n";
        for (const auto& [k, v] : scalars_) os << k << '\t' << to_tsv(v) << '\n';
    }
    for (const auto& t : tables_) write_tsv_table(os, t);
    if (!curves_.rows.empty()) write_tsv_table(os, curves_);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(2, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t digest_of(const std::string& bytes) {
    return relab_fnv1a64(bytes.data(), bytes.size(), relab_fnv1a64_init());
}

namespace {

std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(content);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

double parse_double(const std::string& s, const std::string& where) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw CliError(2, "not a number in " + where + ": '" + s + "'");
    }
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos != s.size()) throw CliError(2, "not a number in " + where + ": '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> parse_labels(const std::string& content) {
    auto lines = split_lines(content);
    // A trailing newline does not introduce an empty token.
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

Spikes parse_spikes(const std::string& content) {
    Spikes s;
    bool first = true;
    std::size_t lineno = 0;
    for (const auto& raw : split_lines(content)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (first && line.rfind("#", 0) == 0) {
            first = false;
            const std::string body = trim(line.substr(1));
            if (body.rfind("T=", 0) != 0) throw CliError(2, "spike header must read '# T=<seconds>'");
            s.T = parse_double(trim(body.substr(2)), "spike header");
            s.has_header = true;
            continue;
        }
        first = false;
        s.times.push_back(parse_double(line, "spike file line " + std::to_string(lineno)));
    }
    if (!s.has_header) {
        for (double t : s.times) s.T = std::max(s.T, t);
    }
    return s;
}

Csv parse_csv(const std::string& content) {
    Csv csv;
    for (const auto& line : split_lines(content)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::string f;
        std::istringstream in(line);
        while (std::getline(in, f, ',')) fields.push_back(trim(f));
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        csv.cells.push_back(std::move(fields));
    }
    if (!csv.cells.empty()) {
        bool numeric = true;
        for (const auto& f : csv.cells.front()) {
            char* end = nullptr;
            std::strtod(f.c_str(), &end);
            if (f.empty() || *end != '\0') numeric = false;
        }
        if (!numeric) {
            csv.header = std::move(csv.cells.front());
            csv.cells.erase(csv.cells.begin());
        }
    }
    return csv;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string f;
    std::istringstream in(text);
    while (std::getline(in, f, ',')) {
        f = trim(f);
        if (f.empty()) continue;
        out.push_back(parse_double(f, "list"));
    }
    return out;
}

}  // namespace relab_cli
