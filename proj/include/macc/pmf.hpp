#pragma once

#include <span>
#include <vector>

namespace macc {

/// Absolute tolerance for unit-mass and stochasticity checks.
inline constexpr double kMassTolerance = 1e-12;

/// Probability mass function over a finite alphabet.  Entries must be
/// nonnegative and sum to 1 within kMassTolerance; violations throw
/// std::invalid_argument at construction.
class Pmf {
public:
    Pmf() = default;
    explicit Pmf(std::vector<double> probs);

    static Pmf uniform(int n);
    static Pmf point_mass(int n, int at);

    int size() const { return static_cast<int>(probs_.size()); }
    double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
    std::span<const double> probs() const { return probs_; }

private:
    std::vector<double> probs_;
};

/// One Pmf per conditioning value; all rows share a column count.
class CondPmf {
public:
    CondPmf() = default;
    explicit CondPmf(std::vector<std::vector<double>> rows);

    static CondPmf identity(int n);
    static CondPmf uniform(int rows, int cols);

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return rows_.empty() ? 0 : rows_.front().size(); }
    const Pmf& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

private:
    std::vector<Pmf> rows_;
};

}  // namespace macc
