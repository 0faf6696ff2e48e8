#include "macc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "macc/pmf.hpp"

namespace macc {

MaccChannel::MaccChannel(int nx1, int nx2, int ny, int ny1, std::vector<double> p, int max_alphabet)
    : nx1_(nx1), nx2_(nx2), ny_(ny), ny1_(ny1), p_(std::move(p)) {
    if (nx1 < 1 || nx2 < 1 || ny < 1 || ny1 < 1)
        throw std::invalid_argument("channel alphabet sizes must be positive");
    for (int s : {nx1, nx2, ny, ny1}) {
        if (s > max_alphabet)
            throw std::invalid_argument("alphabet size " + std::to_string(s) +
                                        " exceeds cap " + std::to_string(max_alphabet));
    }
    const auto want = static_cast<std::size_t>(nx1) * nx2 * ny * ny1;
    if (p_.size() != want)
        throw std::invalid_argument("channel tensor has " + std::to_string(p_.size()) +
                                    " entries, expected " + std::to_string(want));
}

ValidationReport validate_channel(const MaccChannel& ch) {
    ValidationReport report;
    for (int a = 0; a < ch.nx1(); ++a) {
        for (int b = 0; b < ch.nx2(); ++b) {
            double sum = 0.0;
            bool negative = false;
            for (double v : ch.slice(a, b)) {
                if (v < 0.0) negative = true;
                sum += v;
            }
            if (negative) {
                report.violations.push_back(
                    {a, b, 0.0,
                     "negative entry in slice (x1=" + std::to_string(a) + ", x2=" + std::to_string(b) + ")"});
            }
            const double deficit = 1.0 - sum;
            if (std::abs(deficit) > kMassTolerance) {
                report.violations.push_back(
                    {a, b, deficit,
                     "slice (x1=" + std::to_string(a) + ", x2=" + std::to_string(b) + ") sums to " +
                         std::to_string(sum)});
            }
        }
    }
    report.ok = report.violations.empty();
    return report;
}

MaccChannel build_halfduplex_channel() {
    // x1: 0 = null, 1 = symbol 0, 2 = symbol 1; y1: 0 = null, 1 = symbol 0, 2 = symbol 1
    const int nx1 = 3, nx2 = 2, ny = 2, ny1 = 3;
    std::vector<double> p(static_cast<std::size_t>(nx1) * nx2 * ny * ny1, 0.0);
    auto cell = [&](int a, int b, int y, int y1) -> double& {
        return p[static_cast<std::size_t>(((a * nx2 + b) * ny + y) * ny1 + y1)];
    };
    for (int x2 = 0; x2 < 2; ++x2) {
        cell(0, x2, x2, 1 + x2) = 1.0;  // listening: y = x2, y1 = y
        for (int bit = 0; bit < 2; ++bit) {
            cell(1 + bit, x2, bit ^ x2, 0) = 1.0;  // transmitting: y = x1 xor x2, y1 = null
        }
    }
    return MaccChannel(nx1, nx2, ny, ny1, std::move(p));
}

MaccChannel marginalize(const MaccChannel& ch, OutputAxes keep) {
    if (!keep.y && !keep.y1) throw std::invalid_argument("marginalize: keep set must not be empty");
    const int ny = keep.y ? ch.ny() : 1;
    const int ny1 = keep.y1 ? ch.ny1() : 1;
    std::vector<double> p(static_cast<std::size_t>(ch.nx1()) * ch.nx2() * ny * ny1, 0.0);
    for (int a = 0; a < ch.nx1(); ++a) {
        for (int b = 0; b < ch.nx2(); ++b) {
            for (int y = 0; y < ch.ny(); ++y) {
                for (int y1 = 0; y1 < ch.ny1(); ++y1) {
                    const int yo = keep.y ? y : 0;
                    const int y1o = keep.y1 ? y1 : 0;
                    p[static_cast<std::size_t>(((a * ch.nx2() + b) * ny + yo) * ny1 + y1o)] +=
                        ch.at(a, b, y, y1);
                }
            }
        }
    }
    return MaccChannel(ch.nx1(), ch.nx2(), ny, ny1, std::move(p));
}

}  // namespace macc
