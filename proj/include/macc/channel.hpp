#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace macc {

/// Default cap on alphabet sizes; dense tensors grow with the product of all
/// four, so large axes must be requested explicitly.
inline constexpr int kDefaultAlphabetCap = 64;

// Finite-alphabet two-sender channel p(y, y1 | x1, x2) stored as a dense
// tensor indexed [x1][x2][y][y1].  Immutable after construction.  The
// constructor enforces structure (shape, alphabet cap); probabilistic
// validity is checked separately by validate_channel so that authoring
// errors can be reported slice by slice.
class MaccChannel {
public:
    MaccChannel(int nx1, int nx2, int ny, int ny1, std::vector<double> p,
                int max_alphabet = kDefaultAlphabetCap);

    int nx1() const { return nx1_; }
    int nx2() const { return nx2_; }
    int ny() const { return ny_; }
    int ny1() const { return ny1_; }

    double at(int x1, int x2, int y, int y1) const {
        return p_[static_cast<std::size_t>(((x1 * nx2_ + x2) * ny_ + y) * ny1_ + y1)];
    }

    /// Contiguous p(., .|x1, x2) slice of length ny*ny1, y-major.
    std::span<const double> slice(int x1, int x2) const {
        const auto off = static_cast<std::size_t>((x1 * nx2_ + x2) * ny_ * ny1_);
        return {p_.data() + off, static_cast<std::size_t>(ny_) * ny1_};
    }

    std::span<const double> tensor() const { return p_; }

private:
    int nx1_ = 0, nx2_ = 0, ny_ = 0, ny1_ = 0;
    std::vector<double> p_;
};

struct ChannelViolation {
    int x1 = 0;
    int x2 = 0;
    double deficit = 0.0;  // 1 - slice mass; 0 for negativity findings
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ChannelViolation> violations;
};

/// Checks every (x1, x2) slice for nonnegativity and unit mass.
ValidationReport validate_channel(const MaccChannel& ch);

/// The half-duplex example channel: X1 in {null,0,1} (index 0 = null),
/// X2 in {0,1}, Y in {0,1}, Y1 in {null,0,1}.  When user 1 transmits,
/// y = x1 xor x2 and y1 is null; when user 1 listens, y = x2 and y1 = y.
MaccChannel build_halfduplex_channel();

struct OutputAxes {
    bool y = false;
    bool y1 = false;
};

/// Sums out the dropped output axes; dropped axes keep size 1 so the result
/// is again a valid MaccChannel.  Throws std::invalid_argument on an empty
/// keep set.
MaccChannel marginalize(const MaccChannel& ch, OutputAxes keep);

}  // namespace macc
