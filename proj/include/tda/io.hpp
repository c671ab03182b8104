#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "tda/barcode.hpp"
#include "tda/distance_matrix.hpp"
#include "tda/signal.hpp"

namespace tda {

// Formats a double with 17 significant digits so that reading the text back
// reproduces the exact bit pattern.
std::string format_float(double value);

// Parses a double, rejecting trailing garbage and non-finite spellings.
double parse_float(const std::string& text, const std::string& context);

// ---- barcode files ------------------------------------------------------
// One bar per line as "birth,death". Lines starting with '#' and blank lines
// are ignored. Written files are sorted the same way canonicalize() sorts.
Barcode read_barcode(const std::filesystem::path& path);
void write_barcode(const std::filesystem::path& path, const Barcode& barcode);

// ---- distance matrix files ----------------------------------------------
// First line holds the point count n; the next n lines each hold n
// comma-separated entries.
DistanceMatrix read_distance_matrix(const std::filesystem::path& path);
void write_distance_matrix(const std::filesystem::path& path, const DistanceMatrix& matrix);

// ---- planar point cloud files -------------------------------------------
// One point per line as "x,y"; '#' comments and blank lines are ignored.
std::vector<std::array<double, 2>> read_point_cloud(const std::filesystem::path& path);
void write_point_cloud(const std::filesystem::path& path,
                       const std::vector<std::array<double, 2>>& points);

// ---- 1-D signal files ----------------------------------------------------
// One amplitude per line, with an optional "sample_rate=<float>" header line.
Signal read_signal(const std::filesystem::path& path);
void write_signal(const std::filesystem::path& path, const Signal& signal);

// ---- spectrum files --------------------------------------------------------
// Single CSV line of descending eigenvalues, 17 significant digits.
void write_spectrum(const std::filesystem::path& path, const std::vector<double>& values);

// ---- label files ----------------------------------------------------------
// One integer label per line.
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<int>& labels);

}  // namespace tda
