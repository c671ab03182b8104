#pragma once

// Shared helpers for the test executables: seeded random barcodes and point
// clouds with controllable size ranges, plus a minimal WAV fixture writer.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "tda/barcode.hpp"
#include "tda/persistence.hpp"
#include "tda/rng.hpp"

namespace tda_test {

// Shorthand for building a barcode from (birth, death) pairs; picks the pair
// overload of canonicalize, which nested brace lists cannot do on their own.
inline tda::Barcode bars(const std::vector<std::pair<double, double>>& raw) {
    return tda::canonicalize(raw);
}

// Random barcode with a uniform bar count in [min_bars, max_bars], births
// uniform in [0, 10) and lengths uniform in [0.05, 5); the length floor keeps
// every generated bar clear of the degeneracy cutoff.
inline tda::Barcode random_barcode(tda::SplitRng& rng, std::size_t min_bars,
                                   std::size_t max_bars) {
    const std::size_t span = max_bars - min_bars + 1;
    const std::size_t count = min_bars + static_cast<std::size_t>(rng.next_u64() % span);
    std::vector<tda::Interval> bars;
    bars.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double birth = rng.uniform(0.0, 10.0);
        bars.push_back({birth, birth + rng.uniform(0.05, 5.0)});
    }
    return tda::canonicalize(std::move(bars));
}

// Uniform random planar cloud in [0, extent)^2.
inline tda::PointCloud random_cloud(tda::SplitRng& rng, std::size_t n, double extent = 10.0) {
    tda::PointCloud points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        points.push_back({rng.uniform(0.0, extent), rng.uniform(0.0, extent)});
    }
    return points;
}

// Fresh directory under the system temp root for a test family's fixtures.
inline std::filesystem::path test_temp_dir(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::create_directories(dir);
    return dir;
}

// Minimal RIFF/WAVE writer: a single fmt + data chunk with the given header
// fields and interleaved 16-bit frames. Deliberately writes whatever header
// it is told to, so tests can produce unsupported encodings.
inline void write_wav_file(const std::filesystem::path& path, std::uint16_t format,
                           std::uint16_t channels, std::uint32_t rate, std::uint16_t bits,
                           const std::vector<std::int16_t>& frames) {
    std::string body;
    auto u32 = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) body.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    auto u16 = [&](std::uint16_t v) {
        body.push_back(static_cast<char>(v & 0xff));
        body.push_back(static_cast<char>((v >> 8) & 0xff));
    };
    body += "WAVE";
    body += "fmt ";
    u32(16);
    u16(format);
    u16(channels);
    u32(rate);
    u32(rate * channels * bits / 8);
    u16(static_cast<std::uint16_t>(channels * bits / 8));
    u16(bits);
    body += "data";
    u32(static_cast<std::uint32_t>(frames.size() * 2));
    for (const std::int16_t s : frames) u16(static_cast<std::uint16_t>(s));

    std::ofstream out(path, std::ios::binary);
    out << "RIFF";
    const std::uint32_t size = static_cast<std::uint32_t>(body.size());
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((size >> (8 * i)) & 0xff));
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

}  // namespace tda_test
