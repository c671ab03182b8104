#pragma once

#include <vector>

namespace tda {

// Sampled 1-D amplitude sequence. The sample rate is metadata used for
// time-based slicing; 0 means "unknown".
struct Signal {
    std::vector<double> samples;
    double sample_rate = 0.0;
};

}  // namespace tda
