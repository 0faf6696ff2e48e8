#include "macc/pmf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace macc {

namespace {

void check_mass(const std::vector<double>& probs) {
    if (probs.empty()) throw std::invalid_argument("pmf must not be empty");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        if (!(p >= 0.0)) {
            throw std::invalid_argument("pmf entry " + std::to_string(i) + " is negative (" +
                                        std::to_string(p) + ")");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kMassTolerance) {
        throw std::invalid_argument("pmf mass is " + std::to_string(sum) +
                                    ", expected 1 within 1e-12");
    }
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) { check_mass(probs_); }

Pmf Pmf::uniform(int n) {
    return Pmf(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

Pmf Pmf::point_mass(int n, int at) {
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    p.at(static_cast<std::size_t>(at)) = 1.0;
    return Pmf(std::move(p));
}

CondPmf::CondPmf(std::vector<std::vector<double>> rows) {
    if (rows.empty()) throw std::invalid_argument("conditional pmf must have at least one row");
    const std::size_t cols = rows.front().size();
    rows_.reserve(rows.size());
    for (auto& r : rows) {
        if (r.size() != cols) throw std::invalid_argument("conditional pmf rows are ragged");
        rows_.emplace_back(std::move(r));
    }
}

CondPmf CondPmf::identity(int n) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    return CondPmf(std::move(rows));
}

CondPmf CondPmf::uniform(int rows, int cols) {
    return CondPmf(std::vector<std::vector<double>>(
        static_cast<std::size_t>(rows), std::vector<double>(static_cast<std::size_t>(cols), 1.0 / cols)));
}

}  // namespace macc
