#include "macc/joint.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "macc/errors.hpp"
#include "macc/info.hpp"

namespace macc {

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::U: return "U";
        case Axis::V: return "V";
        case Axis::X1: return "X1";
        case Axis::X2: return "X2";
        case Axis::Y: return "Y";
        case Axis::Y1: return "Y1";
    }
    return "?";
}

JointPmf::JointPmf(std::vector<Axis> axes, std::vector<int> sizes, std::vector<double> mass)
    : axes_(std::move(axes)), sizes_(std::move(sizes)), mass_(std::move(mass)) {
    if (axes_.size() != sizes_.size()) throw std::invalid_argument("joint: axes/sizes mismatch");
    std::size_t cells = 1;
    for (int s : sizes_) {
        if (s < 1) throw std::invalid_argument("joint: axis size must be positive");
        cells *= static_cast<std::size_t>(s);
    }
    if (mass_.size() != cells) throw std::invalid_argument("joint: mass size does not match axes");
}

bool JointPmf::has_axis(Axis a) const {
    return std::find(axes_.begin(), axes_.end(), a) != axes_.end();
}

int JointPmf::size_of(Axis a) const {
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (axes_[i] == a) return sizes_[i];
    throw std::invalid_argument(std::string("joint has no axis ") + axis_name(a));
}

double JointPmf::total_mass() const {
    double sum = 0.0, c = 0.0;
    for (double v : mass_) {  // Kahan
        const double t = v - c;
        const double s = sum + t;
        c = (s - sum) - t;
        sum = s;
    }
    return sum;
}

JointPmf JointPmf::marginal(std::span<const Axis> keep) const {
    std::vector<bool> keep_mask(axes_.size(), false);
    for (Axis a : keep) {
        bool found = false;
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            if (axes_[i] == a) {
                keep_mask[i] = true;
                found = true;
            }
        }
        if (!found)
            throw std::invalid_argument(std::string("marginal: joint has no axis ") + axis_name(a));
    }
    std::vector<Axis> out_axes;
    std::vector<int> out_sizes;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (keep_mask[i]) {
            out_axes.push_back(axes_[i]);
            out_sizes.push_back(sizes_[i]);
        }
    }
    std::size_t out_cells = 1;
    for (int s : out_sizes) out_cells *= static_cast<std::size_t>(s);
    std::vector<double> out(out_cells, 0.0);

    const std::size_t rank = axes_.size();
    std::vector<int> idx(rank, 0);
    for (std::size_t flat = 0; flat < mass_.size(); ++flat) {
        std::size_t o = 0;
        for (std::size_t i = 0; i < rank; ++i)
            if (keep_mask[i]) o = o * static_cast<std::size_t>(sizes_[i]) + static_cast<std::size_t>(idx[i]);
        out[o] += mass_[flat];
        for (std::size_t i = rank; i-- > 0;) {  // odometer
            if (++idx[i] < sizes_[i]) break;
            idx[i] = 0;
        }
    }
    return JointPmf(std::move(out_axes), std::move(out_sizes), std::move(out));
}

JointPmf JointPmf::marginal(std::initializer_list<Axis> keep) const {
    return marginal(std::span<const Axis>(keep.begin(), keep.size()));
}

AuxInputPolicy embed_product_policy(const ProductInputPolicy& policy) {
    AuxInputPolicy aux;
    aux.pU = Pmf({1.0});
    aux.pVgivenU = CondPmf({std::vector<double>(policy.pX2.probs().begin(), policy.pX2.probs().end())});
    aux.pX1givenU = CondPmf({std::vector<double>(policy.pX1.probs().begin(), policy.pX1.probs().end())});
    aux.pX2givenV = CondPmf::identity(policy.pX2.size());
    return aux;
}

namespace {

void guard_cells(std::int64_t cells) {
    if (cells > kJointCellGuard)
        throw GuardError("joint would have " + std::to_string(cells) + " cells; guard is " +
                         std::to_string(kJointCellGuard));
}

}  // namespace

JointPmf build_joint(const MaccChannel& ch, const ProductInputPolicy& policy) {
    if (policy.pX1.size() != ch.nx1())
        throw std::invalid_argument("pX1 has " + std::to_string(policy.pX1.size()) +
                                    " symbols, channel expects " + std::to_string(ch.nx1()));
    if (policy.pX2.size() != ch.nx2())
        throw std::invalid_argument("pX2 has " + std::to_string(policy.pX2.size()) +
                                    " symbols, channel expects " + std::to_string(ch.nx2()));
    const std::int64_t cells =
        std::int64_t{ch.nx1()} * ch.nx2() * ch.ny() * ch.ny1();
    guard_cells(cells);
    std::vector<double> mass(static_cast<std::size_t>(cells));
    std::size_t k = 0;
    for (int a = 0; a < ch.nx1(); ++a)
        for (int b = 0; b < ch.nx2(); ++b) {
            const double pin = policy.pX1[a] * policy.pX2[b];
            for (int y = 0; y < ch.ny(); ++y)
                for (int y1 = 0; y1 < ch.ny1(); ++y1) mass[k++] = pin * ch.at(a, b, y, y1);
        }
    return JointPmf({Axis::X1, Axis::X2, Axis::Y, Axis::Y1},
                    {ch.nx1(), ch.nx2(), ch.ny(), ch.ny1()}, std::move(mass));
}

JointPmf build_joint(const MaccChannel& ch, const AuxInputPolicy& policy) {
    const int nu = policy.card_u();
    const int nv = policy.card_v();
    if (policy.pVgivenU.rows() != nu)
        throw std::invalid_argument("pVgivenU has " + std::to_string(policy.pVgivenU.rows()) +
                                    " rows, expected |U| = " + std::to_string(nu));
    if (policy.pX1givenU.rows() != nu)
        throw std::invalid_argument("pX1givenU has " + std::to_string(policy.pX1givenU.rows()) +
                                    " rows, expected |U| = " + std::to_string(nu));
    if (policy.pX2givenV.rows() != nv)
        throw std::invalid_argument("pX2givenV has " + std::to_string(policy.pX2givenV.rows()) +
                                    " rows, expected |V| = " + std::to_string(nv));
    if (policy.pX1givenU.cols() != ch.nx1())
        throw std::invalid_argument("pX1givenU has " + std::to_string(policy.pX1givenU.cols()) +
                                    " columns, channel expects " + std::to_string(ch.nx1()));
    if (policy.pX2givenV.cols() != ch.nx2())
        throw std::invalid_argument("pX2givenV has " + std::to_string(policy.pX2givenV.cols()) +
                                    " columns, channel expects " + std::to_string(ch.nx2()));
    const std::int64_t cells =
        std::int64_t{nu} * nv * ch.nx1() * ch.nx2() * ch.ny() * ch.ny1();
    guard_cells(cells);
    std::vector<double> mass(static_cast<std::size_t>(cells));
    std::size_t k = 0;
    for (int u = 0; u < nu; ++u)
        for (int v = 0; v < nv; ++v) {
            const double puv = policy.pU[u] * policy.pVgivenU.row(u)[v];
            for (int a = 0; a < ch.nx1(); ++a)
                for (int b = 0; b < ch.nx2(); ++b) {
                    const double pin = puv * policy.pX1givenU.row(u)[a] * policy.pX2givenV.row(v)[b];
                    for (int y = 0; y < ch.ny(); ++y)
                        for (int y1 = 0; y1 < ch.ny1(); ++y1) mass[k++] = pin * ch.at(a, b, y, y1);
                }
        }
    return JointPmf({Axis::U, Axis::V, Axis::X1, Axis::X2, Axis::Y, Axis::Y1},
                    {nu, nv, ch.nx1(), ch.nx2(), ch.ny(), ch.ny1()}, std::move(mass));
}

MarkovResiduals markov_residuals(const JointPmf& joint) {
    MarkovResiduals r;
    r.u_x2_given_v = mutual_information_raw(joint, {Axis::U}, {Axis::X2}, {Axis::V});
    r.uv_outputs_given_inputs = mutual_information_raw(joint, {Axis::U, Axis::V},
                                                       {Axis::Y, Axis::Y1}, {Axis::X1, Axis::X2});
    return r;
}

}  // namespace macc
