#include "rcsim/glyphs.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rcsim/random.hpp"

namespace rcsim {

void DistortionParams::validate() const {
    if (gain_jitter < 0.0 || offset_jitter < 0.0 || pixel_noise < 0.0 || nonlinearity_gain < 0.0)
        throw std::invalid_argument("distortion: parameters must be >= 0");
}

void GlyphVideoSpec::validate() const {
    if (glyphs.empty()) throw std::invalid_argument("video: glyph set is empty");
    if (frames_per_glyph < 1) throw std::invalid_argument("video: frames_per_glyph must be >= 1");
    if (total_frames < 1) throw std::invalid_argument("video: total_frames must be >= 1");
    const long rows = glyphs.front().rows();
    const long cols = glyphs.front().cols();
    if (rows < 1 || cols < 1) throw std::invalid_argument("video: glyphs must be non-empty");
    for (const Frame& g : glyphs) {
        if (g.rows() != rows || g.cols() != cols)
            throw std::invalid_argument("video: glyphs must share one shape");
        for (long r = 0; r < rows; ++r)
            for (long c = 0; c < cols; ++c)
                if (g(r, c) != 0.0 && g(r, c) != 1.0)
                    throw std::invalid_argument("video: glyph pixels must be 0 or 1");
    }
    distortion.validate();
}

namespace {

struct BitmapDef {
    const char* name;
    std::array<const char*, 8> rows;
};

// Hand-drawn 8x8 character set. Kept deliberately chunky so that a
// complemented frame disagrees on well over 5% of pixels.
constexpr std::array<BitmapDef, 6> kBitmaps{{
    {"I",
     {"01111110", "00011000", "00011000", "00011000", "00011000", "00011000", "00011000",
      "01111110"}},
    {"7",
     {"01111110", "01100110", "00000110", "00001100", "00011000", "00110000", "00110000",
      "00110000"}},
    {"L",
     {"01100000", "01100000", "01100000", "01100000", "01100000", "01100000", "01111110",
      "01111110"}},
    {"T",
     {"01111110", "01111110", "00011000", "00011000", "00011000", "00011000", "00011000",
      "00011000"}},
    {"O",
     {"00111100", "01100110", "01100110", "01100110", "01100110", "01100110", "01100110",
      "00111100"}},
    {"X",
     {"01100110", "01100110", "00111100", "00011000", "00111100", "01100110", "01100110",
      "01100110"}},
}};

Frame frame_from_rows(const std::array<const char*, 8>& rows) {
    Frame f(8, 8);
    for (long r = 0; r < 8; ++r)
        for (long c = 0; c < 8; ++c) f(r, c) = rows[static_cast<std::size_t>(r)][c] == '1' ? 1.0 : 0.0;
    return f;
}

}  // namespace

Frame builtin_glyph(const std::string& name) {
    for (const BitmapDef& def : kBitmaps)
        if (name == def.name) return frame_from_rows(def.rows);
    throw std::invalid_argument("glyph: no builtin named '" + name + "'");
}

std::vector<std::string> builtin_glyph_names() {
    std::vector<std::string> names;
    names.reserve(kBitmaps.size());
    for (const BitmapDef& def : kBitmaps) names.emplace_back(def.name);
    return names;
}

Frame load_glyph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("glyph: cannot open '" + path + "'");
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        for (char ch : line)
            if (ch != '0' && ch != '1')
                throw std::runtime_error("glyph: '" + path + "' contains characters other than 0/1");
        if (!rows.empty() && line.size() != rows.front().size())
            throw std::runtime_error("glyph: '" + path + "' has rows of unequal length");
        rows.push_back(line);
    }
    if (rows.empty()) throw std::runtime_error("glyph: '" + path + "' holds no bitmap rows");
    Frame f(static_cast<long>(rows.size()), static_cast<long>(rows.front().size()));
    for (long r = 0; r < f.rows(); ++r)
        for (long c = 0; c < f.cols(); ++c)
            f(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '1' ? 1.0 : 0.0;
    return f;
}

void save_glyph(const std::string& path, const Frame& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("glyph: cannot write '" + path + "'");
    for (long r = 0; r < frame.rows(); ++r) {
        for (long c = 0; c < frame.cols(); ++c) {
            const double v = frame(r, c);
            if (v != 0.0 && v != 1.0)
                throw std::invalid_argument("glyph: only binary frames can be saved");
            out.put(v == 1.0 ? '1' : '0');
        }
        out.put('\n');
    }
}

Eigen::VectorXd flatten_frame(const Frame& frame) {
    Eigen::VectorXd v(frame.size());
    long k = 0;
    for (long r = 0; r < frame.rows(); ++r)
        for (long c = 0; c < frame.cols(); ++c) v(k++) = frame(r, c);
    return v;
}

Frame unflatten_frame(const Eigen::VectorXd& v, long rows, long cols) {
    if (v.size() != rows * cols)
        throw std::invalid_argument("glyph: vector length does not match frame shape");
    Frame f(rows, cols);
    long k = 0;
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c) f(r, c) = v(k++);
    return f;
}

Frame distort_frame(const Frame& frame, long t, const DistortionParams& d, std::uint64_t seed) {
    d.validate();
    if ((frame.array() < 0.0).any() || (frame.array() > 1.0).any())
        throw std::invalid_argument("distort: frame pixels must lie in [0,1]");
    RandomStream rng(derive_seed(seed, "frame", static_cast<std::uint64_t>(t)));
    const double g = 1.0 + d.gain_jitter * rng.normal();
    const double b = d.offset_jitter * rng.normal();
    Frame out(frame.rows(), frame.cols());
    for (long r = 0; r < frame.rows(); ++r)
        for (long c = 0; c < frame.cols(); ++c)
            out(r, c) = std::tanh(d.nonlinearity_gain * (g * frame(r, c) + b)) +
                        d.pixel_noise * rng.normal();
    return out;
}

GlyphVideo make_video(const GlyphVideoSpec& spec) {
    spec.validate();
    GlyphVideo video;
    video.clean.reserve(static_cast<std::size_t>(spec.total_frames));
    video.distorted.reserve(static_cast<std::size_t>(spec.total_frames));
    video.glyph_index.reserve(static_cast<std::size_t>(spec.total_frames));

    RandomStream seq_rng(derive_seed(spec.seed, "sequence"));
    const int n_glyphs = static_cast<int>(spec.glyphs.size());
    const std::uint64_t dist_seed = derive_seed(spec.seed, "distortion");

    int current = seq_rng.uniform_int(0, n_glyphs - 1);
    for (long t = 0; t < spec.total_frames; ++t) {
        if (t > 0 && t % spec.frames_per_glyph == 0 && n_glyphs > 1) {
            // Pick a different glyph so every boundary is a visible change.
            const int step = seq_rng.uniform_int(1, n_glyphs - 1);
            current = (current + step) % n_glyphs;
        }
        video.glyph_index.push_back(current);
        video.clean.push_back(spec.glyphs[static_cast<std::size_t>(current)]);
        video.distorted.push_back(
            distort_frame(video.clean.back(), t, spec.distortion, dist_seed));
    }
    return video;
}

}  // namespace rcsim
