#include "tda/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace tda {

namespace {

// Strips a trailing carriage return (files written on Windows) and leading
// and trailing spaces/tabs.
std::string trimmed(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
        line.pop_back();
    }
    std::size_t start = 0;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) {
        ++start;
    }
    return line.substr(start);
}

bool is_skippable(const std::string& line) {
    return line.empty() || line.front() == '#';
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(trimmed(line.substr(pos)));
            break;
        }
        fields.push_back(trimmed(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file for reading: " + path.string());
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open file for writing: " + path.string());
    }
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("failed while writing file: " + path.string());
    }
}

std::string line_context(const std::filesystem::path& path, std::size_t line_number) {
    return path.string() + ":" + std::to_string(line_number);
}

long long parse_int(const std::string& text, const std::string& context) {
    if (text.empty()) {
        throw std::invalid_argument(context + ": expected an integer, got an empty field");
    }
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(text.c_str(), &end, 10);
    if (errno == ERANGE) {
        throw std::invalid_argument(context + ": integer out of range: '" + text + "'");
    }
    if (end != text.c_str() + text.size()) {
        throw std::invalid_argument(context + ": not an integer: '" + text + "'");
    }
    return value;
}

}  // namespace

std::string format_float(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

double parse_float(const std::string& text, const std::string& context) {
    if (text.empty()) {
        throw std::invalid_argument(context + ": expected a number, got an empty field");
    }
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
        throw std::invalid_argument(context + ": not a number: '" + text + "'");
    }
    if (errno == ERANGE && (value == 0.0 || std::isinf(value))) {
        throw std::invalid_argument(context + ": number out of range: '" + text + "'");
    }
    if (!std::isfinite(value)) {
        throw std::invalid_argument(context + ": non-finite value: '" + text + "'");
    }
    return value;
}

Barcode read_barcode(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<Interval> raw;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string body = trimmed(line);
        if (is_skippable(body)) {
            continue;
        }
        const std::vector<std::string> fields = split_fields(body);
        if (fields.size() != 2) {
            throw std::invalid_argument(line_context(path, line_number) +
                                        ": expected 'birth,death', got '" + body + "'");
        }
        const std::string context = line_context(path, line_number);
        raw.push_back(Interval{parse_float(fields[0], context), parse_float(fields[1], context)});
    }
    return canonicalize(std::move(raw));
}

void write_barcode(const std::filesystem::path& path, const Barcode& barcode) {
    std::ofstream out = open_output(path);
    for (const Interval& bar : barcode) {
        out << format_float(bar.birth) << ',' << format_float(bar.death) << '\n';
    }
    finish_output(out, path);
}

DistanceMatrix read_distance_matrix(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::size_t line_number = 0;

    auto next_data_line = [&](const char* what) -> std::string {
        while (std::getline(in, line)) {
            ++line_number;
            const std::string body = trimmed(line);
            if (!is_skippable(body)) {
                return body;
            }
        }
        throw std::invalid_argument(path.string() + ": unexpected end of file, expected " +
                                    std::string(what));
    };

    const std::string header = next_data_line("the point count");
    const long long count = parse_int(header, line_context(path, line_number));
    if (count < 0) {
        throw std::invalid_argument(line_context(path, line_number) +
                                    ": point count must be non-negative");
    }
    const std::size_t n = static_cast<std::size_t>(count);

    DistanceMatrix matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string body = next_data_line("a matrix row");
        const std::vector<std::string> fields = split_fields(body);
        if (fields.size() != n) {
            throw std::invalid_argument(line_context(path, line_number) + ": expected " +
                                        std::to_string(n) + " entries, got " +
                                        std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < n; ++j) {
            matrix.set_entry(i, j, parse_float(fields[j], line_context(path, line_number)));
        }
    }
    matrix.validate();
    // Force exact symmetry so downstream code can rely on at(i,j) == at(j,i)
    // even when the file carries tiny asymmetries within tolerance.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            matrix.set_pair(i, j, 0.5 * (matrix.at(i, j) + matrix.at(j, i)));
        }
    }
    return matrix;
}

void write_distance_matrix(const std::filesystem::path& path, const DistanceMatrix& matrix) {
    std::ofstream out = open_output(path);
    const std::size_t n = matrix.size();
    out << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != 0) {
                out << ',';
            }
            out << format_float(matrix.at(i, j));
        }
        out << '\n';
    }
    finish_output(out, path);
}

std::vector<std::array<double, 2>> read_point_cloud(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<std::array<double, 2>> points;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string body = trimmed(line);
        if (is_skippable(body)) {
            continue;
        }
        const std::vector<std::string> fields = split_fields(body);
        if (fields.size() != 2) {
            throw std::invalid_argument(line_context(path, line_number) +
                                        ": expected 'x,y', got '" + body + "'");
        }
        const std::string context = line_context(path, line_number);
        points.push_back({parse_float(fields[0], context), parse_float(fields[1], context)});
    }
    return points;
}

void write_point_cloud(const std::filesystem::path& path,
                       const std::vector<std::array<double, 2>>& points) {
    std::ofstream out = open_output(path);
    for (const auto& point : points) {
        out << format_float(point[0]) << ',' << format_float(point[1]) << '\n';
    }
    finish_output(out, path);
}

Signal read_signal(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    Signal signal;
    std::string line;
    std::size_t line_number = 0;
    bool seen_data = false;
    static const std::string kRateKey = "sample_rate=";
    while (std::getline(in, line)) {
        ++line_number;
        const std::string body = trimmed(line);
        if (is_skippable(body)) {
            continue;
        }
        if (body.compare(0, kRateKey.size(), kRateKey) == 0) {
            if (seen_data || signal.sample_rate != 0.0) {
                throw std::invalid_argument(line_context(path, line_number) +
                                            ": sample_rate header must appear once, before data");
            }
            const double rate =
                parse_float(body.substr(kRateKey.size()), line_context(path, line_number));
            if (rate <= 0.0) {
                throw std::invalid_argument(line_context(path, line_number) +
                                            ": sample_rate must be positive");
            }
            signal.sample_rate = rate;
            continue;
        }
        signal.samples.push_back(parse_float(body, line_context(path, line_number)));
        seen_data = true;
    }
    return signal;
}

void write_signal(const std::filesystem::path& path, const Signal& signal) {
    std::ofstream out = open_output(path);
    if (signal.sample_rate > 0.0) {
        out << "sample_rate=" << format_float(signal.sample_rate) << '\n';
    }
    for (const double sample : signal.samples) {
        out << format_float(sample) << '\n';
    }
    finish_output(out, path);
}

void write_spectrum(const std::filesystem::path& path, const std::vector<double>& values) {
    std::ofstream out = open_output(path);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) out << ',';
        out << format_float(values[i]);
    }
    out << '\n';
    finish_output(out, path);
}

std::vector<int> read_labels(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<int> labels;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string body = trimmed(line);
        if (is_skippable(body)) {
            continue;
        }
        const long long value = parse_int(body, line_context(path, line_number));
        labels.push_back(static_cast<int>(value));
    }
    return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
    std::ofstream out = open_output(path);
    for (const int label : labels) {
        out << label << '\n';
    }
    finish_output(out, path);
}

}  // namespace tda
