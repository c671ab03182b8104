#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "tda/persistence.hpp"
#include "tda/rng.hpp"
#include "tda/signal.hpp"

namespace tda {

// Substream purpose tags. Every random draw in the toolkit flows through
// SplitRng::substream(seed, {tag, indices...}), which makes generation a
// pure function of (seed, indices) and therefore schedule-independent.
inline constexpr std::uint64_t kStreamSample = 1;
inline constexpr std::uint64_t kStreamTransform = 2;
inline constexpr std::uint64_t kStreamTrial = 3;
inline constexpr std::uint64_t kStreamSubsample = 4;
inline constexpr std::uint64_t kStreamSlice = 5;
inline constexpr std::uint64_t kStreamWave = 6;

// Axis-aligned ellipse to sample points from.
struct EllipseSpec {
    double center_x = 0.0;
    double center_y = 0.0;
    double semi_major = 1.0;
    double semi_minor = 1.0;
    std::size_t n_points = 1;
};

// Rotation + uniform scaling + translation of the plane. The default value
// is the identity.
struct ConformalTransform {
    double rotation = 0.0;  // radians
    double scale = 1.0;
    double translate_x = 0.0;
    double translate_y = 0.0;
};

// first-applied composition: returns the transform equal to applying
// `inner` and then `outer`.
ConformalTransform composed(const ConformalTransform& outer, const ConformalTransform& inner);

// n_points draws of (cx + a cos t + gx, cy + b sin t + gy) with t uniform
// in [0, 2pi) and gx, gy independent mean-zero Gaussians of the given
// standard deviation. The angle is drawn before the two noise values.
PointCloud sample_ellipse(const EllipseSpec& spec, double noise_sigma, SplitRng& rng);

// rotation ~ U[0, 2pi), scale ~ U[0.1, 10), each translation coordinate
// ~ U[0, 1), drawn in that order.
ConformalTransform random_conformal(SplitRng& rng);

PointCloud apply_conformal(const PointCloud& points, const ConformalTransform& transform);

// The two synthetic point-cloud classes: class 0 overlays two concentric
// ellipses (120 points each); class 1 overlays the same two ellipses (100
// points each) plus a smaller one centered at (0, 80) with 40 points. Both
// give 240 points per sample.
std::vector<EllipseSpec> ellipse_class_layout(int cls);

inline constexpr double kEllipseNoiseSigma = 0.5;

struct LabeledClouds {
    std::vector<PointCloud> clouds;
    std::vector<int> labels;  // class ids in {0, 1}
    std::vector<ConformalTransform> transforms;  // identity when untransformed
    std::uint64_t seed = 0;
};

// per_class samples of each class, ordered class 0 first. Each sample is
// generated from its own substream of (seed, class, index); when
// `transformed`, an independent random conformal map is applied after the
// noise.
LabeledClouds synth_dataset(std::size_t per_class, bool transformed, std::uint64_t seed,
                            double noise_sigma = kEllipseNoiseSigma);

// Deterministic farthest-point (maxmin) subsample: a random seed point,
// then greedily the point farthest from everything chosen so far. Returns
// all points when target >= size. Selected points keep their original
// relative order.
PointCloud subsample(const PointCloud& points, std::size_t target, SplitRng& rng);

// 16-bit PCM WAV decoded to amplitudes in [-1, 1]; multi-channel input is
// downmixed by averaging. Rejects other encodings naming the format tag.
Signal load_wav(const std::filesystem::path& path);

// n_slices random sub-signals with start times uniform in the window and
// durations uniform in duration_range (duration drawn first), truncated to
// sample boundaries. Requires a positive sample rate and a window inside
// the signal extent.
std::vector<Signal> slice_waves(const Signal& signal, std::pair<double, double> time_window,
                                std::pair<double, double> duration_range, std::size_t n_slices,
                                SplitRng& rng);

// Synthetic waveform families used when no recordings are supplied: a
// single decaying sine with slowly drifting frequency, and a decaying
// sine with a strong second harmonic.
enum class WaveKind {
    drifting_sine,
    harmonic_mix,
};

Signal synth_wave(WaveKind kind, SplitRng& rng);

// Slicing window (seconds) appropriate for each family: the drifting sine
// is generated long and sliced late in its decay, the harmonic mix is
// short and sliced early.
std::pair<double, double> wave_window(WaveKind kind);

inline constexpr std::pair<double, double> kSliceDurationRange{0.02, 0.05};

struct LabeledSignals {
    std::vector<Signal> slices;
    std::vector<int> labels;  // class ids in {0, 1}
    std::uint64_t seed = 0;
};

// per_class slices of each waveform family (class 0 = drifting sine,
// class 1 = harmonic mix), freshly synthesized from (seed, family).
LabeledSignals synth_wave_dataset(std::size_t per_class, std::uint64_t seed);

// Same slicing protocol applied to two user-supplied signals; windows are
// given per signal.
LabeledSignals slice_wave_dataset(const Signal& class0, std::pair<double, double> window0,
                                  const Signal& class1, std::pair<double, double> window1,
                                  std::size_t per_class, std::uint64_t seed);

}  // namespace tda
