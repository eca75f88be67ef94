#pragma once

#include <optional>
#include <string>

#include "cfk/complex.hpp"

namespace cfk {

inline constexpr int kFormatVersion = 1;

// Canonical ComplexFile JSON: keys name, format_version, generators, arrows;
// generators sorted by id, arrows by (from, to, upower); two-space indent and
// a trailing newline.
std::string serialize(const Complex& c);
// Throws ParseError on malformed text or schema mismatch and InvalidComplex on
// structural faults (dangling ids, repeated arrows).
Complex parse(const std::string& text);

// Throw IoError when the file cannot be read or written.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Complex load_complex(const std::string& path);

struct RenderWindow {
    int imin = 0, imax = 0;
    int jmin = 0, jmax = 0;
};

inline constexpr int kMaxRenderSide = 64;

// Without a window, one copy of each generator is drawn, placed by walking the
// arrows from the lowest-index generator of each component at i = 0.  With a
// window, every lattice copy inside it is drawn.  Co-located copies are offset
// along the diagonal by multiples of 0.12 in id order.  Throws
// WindowTooLarge for windows wider or taller than 64 lattice units.
std::string render_svg(const Complex& c, const std::optional<RenderWindow>& window = std::nullopt);

}  // namespace cfk
