#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace rcsim {

/// A video frame: pixels in [0,1] (binary {0,1} before distortion).
using Frame = Eigen::MatrixXd;

/// Per-frame distortion applied by the simulated transmission channel:
///   out = tanh(nonlinearity_gain * (g_t * frame + b_t)) + eps
/// with scalars g_t ~ 1 + N(0, gain_jitter), b_t ~ N(0, offset_jitter)
/// redrawn every frame and per-pixel eps ~ N(0, pixel_noise).
struct DistortionParams {
    double gain_jitter = 0.2;
    double offset_jitter = 0.2;
    double pixel_noise = 0.1;
    double nonlinearity_gain = 1.5;

    void validate() const;
};

struct GlyphVideoSpec {
    std::vector<Frame> glyphs;  // binary h-by-w frames, all the same shape
    long frames_per_glyph = 8;
    long total_frames = 64;
    DistortionParams distortion;
    std::uint64_t seed = 0;

    void validate() const;
};

struct GlyphVideo {
    std::vector<Frame> clean;      // ground truth, binary
    std::vector<Frame> distorted;  // channel output
    std::vector<int> glyph_index;  // which glyph each frame shows
};

/// Built-in 8x8 bitmap for one of "I", "7", "L", "T", "O", "X".
Frame builtin_glyph(const std::string& name);
std::vector<std::string> builtin_glyph_names();

/// Plain-text bitmap format: one row per line, characters '0'/'1', all rows
/// equally long. Blank lines and lines starting with '#' are skipped.
Frame load_glyph(const std::string& path);
void save_glyph(const std::string& path, const Frame& frame);

/// Row-major flatten / unflatten between frames and reservoir vectors.
Eigen::VectorXd flatten_frame(const Frame& frame);
Frame unflatten_frame(const Eigen::VectorXd& v, long rows, long cols);

/// Distort one frame. Deterministic per (t, seed): the generator state is
/// derived from both, so frames can be produced in any order.
Frame distort_frame(const Frame& frame, long t, const DistortionParams& d, std::uint64_t seed);

/// Assemble a glyph video: a random glyph sequence (each held for
/// frames_per_glyph consecutive frames, consecutive glyphs distinct when
/// more than one is available) plus its distorted counterpart.
GlyphVideo make_video(const GlyphVideoSpec& spec);

}  // namespace rcsim
