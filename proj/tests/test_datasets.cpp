#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <stdexcept>

#include "doctest.h"
#include "tda/datasets.hpp"
#include "tda/rng.hpp"
#include "test_support.hpp"

using tda::PointCloud;
using tda::Signal;
namespace fs = std::filesystem;

namespace {

double max_point_gap(const PointCloud& a, const PointCloud& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double gap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        gap = std::max(gap, std::fabs(a[i][0] - b[i][0]));
        gap = std::max(gap, std::fabs(a[i][1] - b[i][1]));
    }
    return gap;
}

fs::path temp_file(const std::string& name) {
    return tda_test::test_temp_dir("tda_dataset_tests") / name;
}

fs::path write_wav(const std::string& name, std::uint16_t format, std::uint16_t channels,
                   std::uint32_t rate, std::uint16_t bits,
                   const std::vector<std::int16_t>& frames) {
    const fs::path path = temp_file(name);
    tda_test::write_wav_file(path, format, channels, rate, bits, frames);
    return path;
}

}  // namespace

TEST_CASE("sample_ellipse with zero noise lands exactly on the ellipse") {
    tda::SplitRng rng(1);
    const tda::EllipseSpec spec{2.0, -1.0, 5.0, 3.0, 64};
    const PointCloud points = tda::sample_ellipse(spec, 0.0, rng);
    REQUIRE(points.size() == 64);
    for (const auto& p : points) {
        const double u = (p[0] - spec.center_x) / spec.semi_major;
        const double v = (p[1] - spec.center_y) / spec.semi_minor;
        CHECK(std::fabs(u * u + v * v - 1.0) <= 1e-12);
    }
}

TEST_CASE("sample_ellipse is a pure function of the generator state") {
    const tda::EllipseSpec spec{0.0, 0.0, 4.0, 2.0, 32};
    tda::SplitRng a(9);
    tda::SplitRng b(9);
    CHECK(max_point_gap(tda::sample_ellipse(spec, 0.5, a), tda::sample_ellipse(spec, 0.5, b)) ==
          0.0);
    tda::SplitRng c(10);
    CHECK(max_point_gap(tda::sample_ellipse(spec, 0.5, a), tda::sample_ellipse(spec, 0.5, c)) >
          0.0);
}

TEST_CASE("random_conformal draws within the documented ranges") {
    tda::SplitRng rng(3);
    for (int i = 0; i < 300; ++i) {
        const tda::ConformalTransform t = tda::random_conformal(rng);
        CHECK(t.rotation >= 0.0);
        CHECK(t.rotation < 2.0 * 3.14159265358979324);
        CHECK(t.scale >= 0.1);
        CHECK(t.scale < 10.0);
        CHECK(t.translate_x >= 0.0);
        CHECK(t.translate_x < 1.0);
        CHECK(t.translate_y >= 0.0);
        CHECK(t.translate_y < 1.0);
    }
}

TEST_CASE("apply_conformal and composed agree with sequential application") {
    tda::SplitRng rng(4);
    const PointCloud cloud{{1.0, 2.0}, {-3.0, 0.5}, {0.0, 0.0}};
    CHECK(max_point_gap(tda::apply_conformal(cloud, tda::ConformalTransform{}), cloud) == 0.0);

    const tda::ConformalTransform inner = tda::random_conformal(rng);
    const tda::ConformalTransform outer = tda::random_conformal(rng);
    const PointCloud sequential = tda::apply_conformal(tda::apply_conformal(cloud, inner), outer);
    const PointCloud fused = tda::apply_conformal(cloud, tda::composed(outer, inner));
    CHECK(max_point_gap(sequential, fused) <= 1e-9);
}

TEST_CASE("ellipse_class_layout pins the two class geometries") {
    const auto class0 = tda::ellipse_class_layout(0);
    REQUIRE(class0.size() == 2);
    CHECK(class0[0].semi_major == 50.0);
    CHECK(class0[0].semi_minor == 30.0);
    CHECK(class0[0].n_points == 120);
    CHECK(class0[1].semi_major == 40.0);
    CHECK(class0[1].semi_minor == 20.0);
    CHECK(class0[1].n_points == 120);

    const auto class1 = tda::ellipse_class_layout(1);
    REQUIRE(class1.size() == 3);
    CHECK(class1[0].center_y == 80.0);
    CHECK(class1[0].n_points == 40);
    CHECK(class1[1].n_points == 100);
    CHECK(class1[2].n_points == 100);

    std::size_t total0 = 0;
    std::size_t total1 = 0;
    for (const auto& s : class0) total0 += s.n_points;
    for (const auto& s : class1) total1 += s.n_points;
    CHECK(total0 == 240);
    CHECK(total1 == 240);

    CHECK_THROWS_AS(tda::ellipse_class_layout(2), std::invalid_argument);
}

TEST_CASE("synth_dataset layout, labels, and determinism") {
    const tda::LabeledClouds data = tda::synth_dataset(3, false, 11);
    REQUIRE(data.clouds.size() == 6);
    REQUIRE(data.labels.size() == 6);
    REQUIRE(data.transforms.size() == 6);
    for (int i = 0; i < 3; ++i) CHECK(data.labels[i] == 0);
    for (int i = 3; i < 6; ++i) CHECK(data.labels[i] == 1);
    for (const PointCloud& cloud : data.clouds) CHECK(cloud.size() == 240);
    for (const auto& t : data.transforms) {
        CHECK(t.rotation == 0.0);
        CHECK(t.scale == 1.0);
        CHECK(t.translate_x == 0.0);
        CHECK(t.translate_y == 0.0);
    }

    const tda::LabeledClouds again = tda::synth_dataset(3, false, 11);
    for (std::size_t i = 0; i < 6; ++i) CHECK(max_point_gap(data.clouds[i], again.clouds[i]) == 0.0);

    CHECK_THROWS_AS(tda::synth_dataset(0, false, 11), std::invalid_argument);
}

TEST_CASE("synth_dataset samples are keyed by class and index, not per_class") {
    const tda::LabeledClouds small = tda::synth_dataset(2, false, 21);
    const tda::LabeledClouds large = tda::synth_dataset(4, false, 21);
    // class 0, index 0/1 sit at the same positions.
    CHECK(max_point_gap(small.clouds[0], large.clouds[0]) == 0.0);
    CHECK(max_point_gap(small.clouds[1], large.clouds[1]) == 0.0);
    // class 1 starts at per_class, wherever that is.
    CHECK(max_point_gap(small.clouds[2], large.clouds[4]) == 0.0);
    CHECK(max_point_gap(small.clouds[3], large.clouds[5]) == 0.0);
}

TEST_CASE("transformed datasets are the recorded conformal image of the plain ones") {
    const tda::LabeledClouds plain = tda::synth_dataset(2, false, 31);
    const tda::LabeledClouds moved = tda::synth_dataset(2, true, 31);
    REQUIRE(moved.transforms.size() == 4);
    bool any_nontrivial = false;
    for (std::size_t i = 0; i < moved.clouds.size(); ++i) {
        const PointCloud expected = tda::apply_conformal(plain.clouds[i], moved.transforms[i]);
        CHECK(max_point_gap(moved.clouds[i], expected) <= 1e-9);
        if (moved.transforms[i].scale != 1.0) any_nontrivial = true;
    }
    CHECK(any_nontrivial);
}

TEST_CASE("subsample keeps a spread subset in the original order") {
    tda::SplitRng fill(6);
    PointCloud cloud;
    for (int i = 0; i < 50; ++i) cloud.push_back({fill.uniform(0.0, 1.0), fill.uniform(0.0, 1.0)});
    for (int i = 0; i < 50; ++i) {
        cloud.push_back({100.0 + fill.uniform(0.0, 1.0), 100.0 + fill.uniform(0.0, 1.0)});
    }

    tda::SplitRng rng = tda::SplitRng::substream(7, {tda::kStreamSubsample, 0});
    const PointCloud kept = tda::subsample(cloud, 10, rng);
    REQUIRE(kept.size() == 10);

    // Every kept point is an original point, and the kept sequence respects
    // the original order.
    std::size_t cursor = 0;
    int low_cluster = 0;
    for (const auto& p : kept) {
        while (cursor < cloud.size() &&
               (cloud[cursor][0] != p[0] || cloud[cursor][1] != p[1])) {
            ++cursor;
        }
        REQUIRE(cursor < cloud.size());
        ++cursor;
        if (p[0] < 50.0) ++low_cluster;
    }
    // Farthest-point selection must cover both clusters.
    CHECK(low_cluster >= 2);
    CHECK(low_cluster <= 8);

    tda::SplitRng rng_again = tda::SplitRng::substream(7, {tda::kStreamSubsample, 0});
    CHECK(max_point_gap(kept, tda::subsample(cloud, 10, rng_again)) == 0.0);
}

TEST_CASE("subsample trivial targets") {
    const PointCloud cloud{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    tda::SplitRng rng(8);
    CHECK(tda::subsample(cloud, 3, rng).size() == 3);
    CHECK(tda::subsample(cloud, 7, rng).size() == 3);
    CHECK(tda::subsample(cloud, 0, rng).empty());
}

TEST_CASE("subsample commutes with similarity transforms of the cloud") {
    tda::SplitRng fill(61);
    PointCloud cloud;
    for (int i = 0; i < 80; ++i) {
        cloud.push_back({fill.uniform(0.0, 10.0), fill.uniform(0.0, 10.0)});
    }
    const tda::ConformalTransform t{1.1, 3.0, 40.0, -7.0};
    const PointCloud moved = tda::apply_conformal(cloud, t);

    tda::SplitRng rng_a = tda::SplitRng::substream(5, {tda::kStreamSubsample, 3});
    tda::SplitRng rng_b = tda::SplitRng::substream(5, {tda::kStreamSubsample, 3});
    const PointCloud sub_then_move =
        tda::apply_conformal(tda::subsample(cloud, 12, rng_a), t);
    const PointCloud move_then_sub = tda::subsample(moved, 12, rng_b);
    CHECK(max_point_gap(sub_then_move, move_then_sub) <= 1e-9);
}

TEST_CASE("load_wav decodes mono 16-bit PCM") {
    const fs::path path =
        write_wav("mono.wav", 1, 1, 8000, 16, {0, 16384, -16384, 32767, -32768});
    const Signal signal = tda::load_wav(path);
    CHECK(signal.sample_rate == 8000.0);
    REQUIRE(signal.samples.size() == 5);
    CHECK(signal.samples[0] == 0.0);
    CHECK(signal.samples[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(signal.samples[2] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(signal.samples[3] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-12));
    CHECK(signal.samples[4] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("load_wav downmixes stereo by averaging") {
    const fs::path path = write_wav("stereo.wav", 1, 2, 44100, 16, {16384, -16384, 8192, 8192});
    const Signal signal = tda::load_wav(path);
    CHECK(signal.sample_rate == 44100.0);
    REQUIRE(signal.samples.size() == 2);
    CHECK(signal.samples[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(signal.samples[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("load_wav rejects what it cannot decode, naming the reason") {
    CHECK_THROWS_WITH_AS(tda::load_wav(write_wav("float.wav", 3, 1, 8000, 16, {0})),
                         doctest::Contains("format tag 3"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(tda::load_wav(write_wav("wide.wav", 1, 1, 8000, 8, {0})),
                         doctest::Contains("8 bits"), std::invalid_argument);
    CHECK_THROWS_AS(tda::load_wav(temp_file("missing.wav")), std::invalid_argument);

    const fs::path garbage = temp_file("garbage.wav");
    std::ofstream out(garbage, std::ios::binary);
    out << "not a riff file";
    out.close();
    CHECK_THROWS_WITH_AS(tda::load_wav(garbage), doctest::Contains("RIFF"),
                         std::invalid_argument);
}

TEST_CASE("slice_waves cuts inside the window with durations in range") {
    Signal signal;
    signal.sample_rate = 1000.0;
    for (int i = 0; i < 2000; ++i) signal.samples.push_back(static_cast<double>(i));

    tda::SplitRng rng(12);
    const auto slices = tda::slice_waves(signal, {0.5, 1.5}, {0.05, 0.1}, 25, rng);
    REQUIRE(slices.size() == 25);
    for (const Signal& slice : slices) {
        CHECK(slice.sample_rate == 1000.0);
        CHECK(slice.samples.size() >= 49);
        CHECK(slice.samples.size() <= 100);
        // Samples are the original ramp, so the first value reveals the cut
        // position: inside the window, whole slice included.
        CHECK(slice.samples.front() >= 500.0);
        CHECK(slice.samples.front() + static_cast<double>(slice.samples.size()) <= 1501.0);
        // Contiguous run of the source.
        CHECK(slice.samples.back() ==
              slice.samples.front() + static_cast<double>(slice.samples.size()) - 1.0);
    }
}

TEST_CASE("slice_waves validates its geometry") {
    Signal signal;
    signal.sample_rate = 100.0;
    signal.samples.assign(200, 0.0);  // 2 seconds
    tda::SplitRng rng(13);
    CHECK_THROWS_WITH_AS(tda::slice_waves(signal, {0.0, 3.0}, {0.1, 0.2}, 1, rng),
                         doctest::Contains("extent"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(tda::slice_waves(signal, {0.5, 1.0}, {0.6, 0.7}, 1, rng),
                         doctest::Contains("duration"), std::invalid_argument);
    Signal no_rate;
    no_rate.samples.assign(100, 0.0);
    CHECK_THROWS_WITH_AS(tda::slice_waves(no_rate, {0.0, 0.5}, {0.1, 0.2}, 1, rng),
                         doctest::Contains("sample rate"), std::invalid_argument);
}

TEST_CASE("synthetic waveform families have the documented shapes") {
    tda::SplitRng rng_a(14);
    const Signal sine = tda::synth_wave(tda::WaveKind::drifting_sine, rng_a);
    CHECK(sine.sample_rate == 8000.0);
    CHECK(sine.samples.size() == 120000);  // 15 seconds

    tda::SplitRng rng_b(14);
    const Signal mix = tda::synth_wave(tda::WaveKind::harmonic_mix, rng_b);
    CHECK(mix.sample_rate == 8000.0);
    CHECK(mix.samples.size() == 8000);  // 1 second

    const auto window_sine = tda::wave_window(tda::WaveKind::drifting_sine);
    const auto window_mix = tda::wave_window(tda::WaveKind::harmonic_mix);
    CHECK(window_sine.second <= 15.0);
    CHECK(window_mix.second <= 1.0);
    CHECK(window_sine.first < window_sine.second);
    CHECK(window_mix.first < window_mix.second);
}

TEST_CASE("synth_wave_dataset labels each family and is deterministic") {
    const tda::LabeledSignals data = tda::synth_wave_dataset(4, 15);
    REQUIRE(data.slices.size() == 8);
    REQUIRE(data.labels.size() == 8);
    for (int i = 0; i < 4; ++i) CHECK(data.labels[i] == 0);
    for (int i = 4; i < 8; ++i) CHECK(data.labels[i] == 1);
    for (const Signal& slice : data.slices) CHECK_FALSE(slice.samples.empty());

    const tda::LabeledSignals again = tda::synth_wave_dataset(4, 15);
    for (std::size_t i = 0; i < 8; ++i) CHECK(data.slices[i].samples == again.slices[i].samples);
}

TEST_CASE("slice_wave_dataset slices two user signals with their own windows") {
    Signal first;
    first.sample_rate = 1000.0;
    for (int i = 0; i < 1000; ++i) {
        first.samples.push_back(std::sin(0.2 * static_cast<double>(i)));
    }
    Signal second;
    second.sample_rate = 500.0;
    for (int i = 0; i < 400; ++i) {
        second.samples.push_back(std::cos(0.3 * static_cast<double>(i)));
    }
    const tda::LabeledSignals data =
        tda::slice_wave_dataset(first, {0.0, 1.0}, second, {0.0, 0.8}, 3, 16);
    REQUIRE(data.slices.size() == 6);
    for (int i = 0; i < 3; ++i) {
        CHECK(data.labels[i] == 0);
        CHECK(data.slices[i].sample_rate == 1000.0);
    }
    for (int i = 3; i < 6; ++i) {
        CHECK(data.labels[i] == 1);
        CHECK(data.slices[i].sample_rate == 500.0);
    }
}
