#include "tda/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tda {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_ellipse(const EllipseSpec& spec) {
    if (!(spec.semi_major >= spec.semi_minor) || !(spec.semi_minor > 0.0)) {
        throw std::invalid_argument("ellipse spec: need semi_major >= semi_minor > 0");
    }
    if (spec.n_points < 1) {
        throw std::invalid_argument("ellipse spec: need at least one point");
    }
}

}  // namespace

ConformalTransform composed(const ConformalTransform& outer, const ConformalTransform& inner) {
    // outer(inner(x)) = s_o R_o (s_i R_i x + t_i) + t_o
    //                 = (s_o s_i) R_{o+i} x + (s_o R_o t_i + t_o)
    const double c = std::cos(outer.rotation);
    const double s = std::sin(outer.rotation);
    ConformalTransform result;
    result.rotation = outer.rotation + inner.rotation;
    result.scale = outer.scale * inner.scale;
    result.translate_x = outer.scale * (c * inner.translate_x - s * inner.translate_y) +
                         outer.translate_x;
    result.translate_y = outer.scale * (s * inner.translate_x + c * inner.translate_y) +
                         outer.translate_y;
    return result;
}

PointCloud sample_ellipse(const EllipseSpec& spec, double noise_sigma, SplitRng& rng) {
    require_ellipse(spec);
    if (noise_sigma < 0.0) {
        throw std::invalid_argument("sample_ellipse: noise_sigma must be non-negative");
    }
    PointCloud points;
    points.reserve(spec.n_points);
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        const double theta = rng.uniform(0.0, kTwoPi);
        const double gx = noise_sigma > 0.0 ? rng.gaussian(noise_sigma) : 0.0;
        const double gy = noise_sigma > 0.0 ? rng.gaussian(noise_sigma) : 0.0;
        points.push_back({spec.center_x + spec.semi_major * std::cos(theta) + gx,
                          spec.center_y + spec.semi_minor * std::sin(theta) + gy});
    }
    return points;
}

ConformalTransform random_conformal(SplitRng& rng) {
    ConformalTransform t;
    t.rotation = rng.uniform(0.0, kTwoPi);
    t.scale = rng.uniform(0.1, 10.0);
    t.translate_x = rng.uniform(0.0, 1.0);
    t.translate_y = rng.uniform(0.0, 1.0);
    return t;
}

PointCloud apply_conformal(const PointCloud& points, const ConformalTransform& transform) {
    const double c = std::cos(transform.rotation);
    const double s = std::sin(transform.rotation);
    PointCloud result;
    result.reserve(points.size());
    for (const auto& p : points) {
        result.push_back({transform.scale * (c * p[0] - s * p[1]) + transform.translate_x,
                          transform.scale * (s * p[0] + c * p[1]) + transform.translate_y});
    }
    return result;
}

std::vector<EllipseSpec> ellipse_class_layout(int cls) {
    switch (cls) {
        case 0:
            return {{0.0, 0.0, 50.0, 30.0, 120}, {0.0, 0.0, 40.0, 20.0, 120}};
        case 1:
            return {{0.0, 80.0, 35.0, 25.0, 40},
                    {0.0, 0.0, 50.0, 30.0, 100},
                    {0.0, 0.0, 40.0, 20.0, 100}};
        default:
            throw std::invalid_argument("ellipse_class_layout: class must be 0 or 1, got " +
                                        std::to_string(cls));
    }
}

LabeledClouds synth_dataset(std::size_t per_class, bool transformed, std::uint64_t seed,
                            double noise_sigma) {
    if (per_class < 1) {
        throw std::invalid_argument("synth_dataset: per_class must be at least 1");
    }
    LabeledClouds out;
    out.seed = seed;
    out.clouds.reserve(2 * per_class);
    out.labels.reserve(2 * per_class);
    out.transforms.reserve(2 * per_class);
    for (int cls = 0; cls < 2; ++cls) {
        const std::vector<EllipseSpec> layout = ellipse_class_layout(cls);
        for (std::size_t index = 0; index < per_class; ++index) {
            SplitRng sample_rng = SplitRng::substream(
                seed, {kStreamSample, static_cast<std::uint64_t>(cls), index});
            PointCloud cloud;
            for (const EllipseSpec& spec : layout) {
                const PointCloud part = sample_ellipse(spec, noise_sigma, sample_rng);
                cloud.insert(cloud.end(), part.begin(), part.end());
            }
            ConformalTransform transform;  // identity
            if (transformed) {
                SplitRng transform_rng = SplitRng::substream(
                    seed, {kStreamTransform, static_cast<std::uint64_t>(cls), index});
                transform = random_conformal(transform_rng);
                cloud = apply_conformal(cloud, transform);
            }
            out.clouds.push_back(std::move(cloud));
            out.labels.push_back(cls);
            out.transforms.push_back(transform);
        }
    }
    return out;
}

PointCloud subsample(const PointCloud& points, std::size_t target, SplitRng& rng) {
    const std::size_t n = points.size();
    if (target >= n) return points;
    if (target == 0) return {};
    // Farthest-point (maxmin) subsampling: a random seed point, then greedily
    // the point farthest from everything chosen so far. Spreads the kept
    // points evenly, so geometric features survive much sparser budgets than
    // under uniform random draws. Equivariant under similarity transforms of
    // the input, which keeps subsampled clouds comparable across transformed
    // and untransformed runs.
    std::vector<std::size_t> chosen;
    chosen.reserve(target);
    std::vector<double> min_sq(n, std::numeric_limits<double>::infinity());
    std::size_t current = static_cast<std::size_t>(rng.next_u64() % n);
    chosen.push_back(current);
    for (std::size_t round = 1; round < target; ++round) {
        std::size_t best = 0;
        double best_sq = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = points[i][0] - points[current][0];
            const double dy = points[i][1] - points[current][1];
            min_sq[i] = std::min(min_sq[i], dx * dx + dy * dy);
            if (min_sq[i] > best_sq) {
                best_sq = min_sq[i];
                best = i;
            }
        }
        current = best;
        chosen.push_back(current);
    }
    std::sort(chosen.begin(), chosen.end());
    PointCloud result;
    result.reserve(target);
    for (const std::size_t idx : chosen) result.push_back(points[idx]);
    return result;
}

Signal load_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open file for reading: " + path.string());
    }

    auto read_bytes = [&](char* dst, std::size_t count, const char* what) {
        in.read(dst, static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count) {
            throw std::invalid_argument(path.string() + ": truncated WAV file while reading " +
                                        std::string(what));
        }
    };
    auto read_u32 = [&](const char* what) {
        unsigned char b[4];
        read_bytes(reinterpret_cast<char*>(b), 4, what);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    };
    auto read_u16 = [&](const char* what) {
        unsigned char b[2];
        read_bytes(reinterpret_cast<char*>(b), 2, what);
        return static_cast<std::uint16_t>(static_cast<std::uint16_t>(b[0]) |
                                          (static_cast<std::uint16_t>(b[1]) << 8));
    };

    char tag[4];
    read_bytes(tag, 4, "RIFF header");
    if (std::memcmp(tag, "RIFF", 4) != 0) {
        throw std::invalid_argument(path.string() + ": not a RIFF file");
    }
    read_u32("RIFF size");
    read_bytes(tag, 4, "WAVE header");
    if (std::memcmp(tag, "WAVE", 4) != 0) {
        throw std::invalid_argument(path.string() + ": not a WAVE file");
    }

    bool have_fmt = false;
    std::uint16_t channels = 0;
    std::uint16_t bits = 0;
    std::uint32_t rate = 0;
    std::vector<char> data;
    bool have_data = false;
    while (!have_data || !have_fmt) {
        if (in.peek() == std::char_traits<char>::eof()) break;
        read_bytes(tag, 4, "chunk id");
        const std::uint32_t chunk_size = read_u32("chunk size");
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            if (chunk_size < 16) {
                throw std::invalid_argument(path.string() + ": malformed fmt chunk");
            }
            const std::uint16_t format = read_u16("audio format");
            channels = read_u16("channel count");
            rate = read_u32("sample rate");
            read_u32("byte rate");
            read_u16("block align");
            bits = read_u16("bits per sample");
            if (format != 1) {
                throw std::invalid_argument(path.string() + ": unsupported WAV encoding (format tag " +
                                            std::to_string(format) + "; only PCM format tag 1)");
            }
            if (bits != 16) {
                throw std::invalid_argument(path.string() + ": unsupported sample width (" +
                                            std::to_string(bits) + " bits; only 16-bit PCM)");
            }
            if (channels == 0 || rate == 0) {
                throw std::invalid_argument(path.string() + ": malformed fmt chunk");
            }
            if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            data.resize(chunk_size);
            read_bytes(data.data(), chunk_size, "data chunk");
            if (chunk_size % 2 != 0) in.seekg(1, std::ios::cur);
            have_data = true;
        } else {
            // Skip unknown chunks (chunks are word-aligned).
            in.seekg(chunk_size + (chunk_size % 2), std::ios::cur);
            if (!in) {
                throw std::invalid_argument(path.string() + ": truncated WAV chunk");
            }
        }
    }
    if (!have_fmt) throw std::invalid_argument(path.string() + ": missing fmt chunk");
    if (!have_data) throw std::invalid_argument(path.string() + ": missing data chunk");

    const std::size_t frame_bytes = static_cast<std::size_t>(channels) * 2;
    const std::size_t frames = data.size() / frame_bytes;
    Signal signal;
    signal.sample_rate = static_cast<double>(rate);
    signal.samples.reserve(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        double sum = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
            const std::size_t off = f * frame_bytes + c * 2;
            const std::int16_t raw = static_cast<std::int16_t>(
                static_cast<std::uint16_t>(static_cast<unsigned char>(data[off])) |
                (static_cast<std::uint16_t>(static_cast<unsigned char>(data[off + 1])) << 8));
            sum += static_cast<double>(raw) / 32768.0;
        }
        signal.samples.push_back(sum / static_cast<double>(channels));
    }
    return signal;
}

std::vector<Signal> slice_waves(const Signal& signal, std::pair<double, double> time_window,
                                std::pair<double, double> duration_range, std::size_t n_slices,
                                SplitRng& rng) {
    if (!(signal.sample_rate > 0.0)) {
        throw std::invalid_argument("slice_waves: signal needs a positive sample rate");
    }
    const auto [window_lo, window_hi] = time_window;
    const auto [dur_lo, dur_hi] = duration_range;
    const double extent = static_cast<double>(signal.samples.size()) / signal.sample_rate;
    if (!(0.0 <= window_lo) || !(window_lo < window_hi) || window_hi > extent + 1e-12) {
        throw std::invalid_argument("slice_waves: time window [" + std::to_string(window_lo) +
                                    ", " + std::to_string(window_hi) +
                                    ") outside the signal extent of " + std::to_string(extent) +
                                    " s");
    }
    if (!(0.0 < dur_lo) || !(dur_lo <= dur_hi) || dur_hi > window_hi - window_lo) {
        throw std::invalid_argument("slice_waves: duration range does not fit the window");
    }

    std::vector<Signal> slices;
    slices.reserve(n_slices);
    for (std::size_t k = 0; k < n_slices; ++k) {
        const double duration = rng.uniform(dur_lo, dur_hi);
        const double start = rng.uniform(window_lo, window_hi - duration);
        const std::size_t first = static_cast<std::size_t>(std::floor(start * signal.sample_rate));
        const std::size_t count =
            static_cast<std::size_t>(std::floor(duration * signal.sample_rate));
        Signal slice;
        slice.sample_rate = signal.sample_rate;
        slice.samples.assign(signal.samples.begin() + static_cast<std::ptrdiff_t>(first),
                             signal.samples.begin() + static_cast<std::ptrdiff_t>(first + count));
        slices.push_back(std::move(slice));
    }
    return slices;
}

Signal synth_wave(WaveKind kind, SplitRng& rng) {
    constexpr double kRate = 8000.0;
    Signal signal;
    signal.sample_rate = kRate;
    if (kind == WaveKind::drifting_sine) {
        // Slowly decaying sine whose frequency wobbles by 2%; sliced far
        // into the decay, so slice amplitudes spread over a wide range.
        // The fundamental is high enough that every slice holds dozens of
        // periods: the two boundary-cut partial oscillations then barely
        // perturb the normalized spectrum of the slice.
        const double f0 = rng.uniform(900.0, 1000.0);
        const double a0 = rng.uniform(0.5, 1.0);
        double phase = rng.uniform(0.0, kTwoPi);
        const std::size_t count = static_cast<std::size_t>(15.0 * kRate);
        signal.samples.reserve(count);
        for (std::size_t n = 0; n < count; ++n) {
            const double t = static_cast<double>(n) / kRate;
            const double f = f0 * (1.0 + 0.02 * std::sin(kTwoPi * 0.3 * t));
            phase += kTwoPi * f / kRate;
            signal.samples.push_back(a0 * std::exp(-t / 6.0) * std::sin(phase));
        }
    } else {
        // Fast-decaying sine plus a strong second harmonic. With v(θ) =
        // sin θ + 0.9 cos 2θ every period has two local minima of very
        // different depths (-1.9 and +0.1), so each period contributes one
        // long and one short component bar. That two-population bar-length
        // profile is a stable fingerprint the single-dip pure sine lacks.
        const double f0 = rng.uniform(400.0, 480.0);
        const double a0 = rng.uniform(0.5, 1.0);
        const double phase0 = rng.uniform(0.0, kTwoPi);
        const std::size_t count = static_cast<std::size_t>(1.0 * kRate);
        signal.samples.reserve(count);
        for (std::size_t n = 0; n < count; ++n) {
            const double t = static_cast<double>(n) / kRate;
            const double theta = kTwoPi * f0 * t + phase0;
            const double value = std::sin(theta) + 0.9 * std::cos(2.0 * theta);
            signal.samples.push_back(a0 * std::exp(-t / 0.35) * value);
        }
    }
    return signal;
}

std::pair<double, double> wave_window(WaveKind kind) {
    return kind == WaveKind::drifting_sine ? std::pair{3.0, 15.0} : std::pair{0.2, 1.0};
}

LabeledSignals synth_wave_dataset(std::size_t per_class, std::uint64_t seed) {
    if (per_class < 1) {
        throw std::invalid_argument("synth_wave_dataset: per_class must be at least 1");
    }
    LabeledSignals out;
    out.seed = seed;
    for (int family = 0; family < 2; ++family) {
        const WaveKind kind = family == 0 ? WaveKind::drifting_sine : WaveKind::harmonic_mix;
        SplitRng wave_rng =
            SplitRng::substream(seed, {kStreamWave, static_cast<std::uint64_t>(family)});
        const Signal wave = synth_wave(kind, wave_rng);
        SplitRng slice_rng =
            SplitRng::substream(seed, {kStreamSlice, static_cast<std::uint64_t>(family)});
        std::vector<Signal> slices =
            slice_waves(wave, wave_window(kind), kSliceDurationRange, per_class, slice_rng);
        for (Signal& slice : slices) {
            out.slices.push_back(std::move(slice));
            out.labels.push_back(family);
        }
    }
    return out;
}

LabeledSignals slice_wave_dataset(const Signal& class0, std::pair<double, double> window0,
                                  const Signal& class1, std::pair<double, double> window1,
                                  std::size_t per_class, std::uint64_t seed) {
    if (per_class < 1) {
        throw std::invalid_argument("slice_wave_dataset: per_class must be at least 1");
    }
    LabeledSignals out;
    out.seed = seed;
    const Signal* signals[2] = {&class0, &class1};
    const std::pair<double, double> windows[2] = {window0, window1};
    for (int family = 0; family < 2; ++family) {
        SplitRng slice_rng =
            SplitRng::substream(seed, {kStreamSlice, static_cast<std::uint64_t>(family)});
        std::vector<Signal> slices = slice_waves(*signals[family], windows[family],
                                                 kSliceDurationRange, per_class, slice_rng);
        for (Signal& slice : slices) {
            out.slices.push_back(std::move(slice));
            out.labels.push_back(family);
        }
    }
    return out;
}

}  // namespace tda
