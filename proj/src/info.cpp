#include "macc/info.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "macc/errors.hpp"

namespace macc {

namespace {

double entropy_of_mass(std::span<const double> mass) {
    double sum = 0.0, comp = 0.0;
    for (double p : mass) {
        if (p <= 0.0) continue;  // 0 log 0 = 0
        const double term = -p * std::log2(p);
        const double t = term - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    return sum;
}

// Union of axis sets in the joint's canonical order; throws on overlap
// between the named operands.
std::vector<Axis> ordered_union(const JointPmf& j, std::span<const Axis> a,
                                std::span<const Axis> b, std::span<const Axis> c) {
    std::vector<Axis> out;
    for (Axis ax : j.axes()) {
        const bool in_a = std::find(a.begin(), a.end(), ax) != a.end();
        const bool in_b = std::find(b.begin(), b.end(), ax) != b.end();
        const bool in_c = std::find(c.begin(), c.end(), ax) != c.end();
        if (in_a || in_b || in_c) out.push_back(ax);
    }
    return out;
}

void check_disjoint(std::span<const Axis> a, std::span<const Axis> b, const char* names) {
    for (Axis x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            throw std::invalid_argument(std::string("mutual_information: overlapping axis sets (") +
                                        names + " share " + axis_name(x) + ")");
}

double entropy_of_axes(const JointPmf& j, std::span<const Axis> axes) {
    if (axes.empty()) return 0.0;
    return entropy_of_mass(j.marginal(axes).mass());
}

}  // namespace

double entropy(const JointPmf& j, std::span<const Axis> axes) {
    if (axes.empty()) throw std::invalid_argument("entropy: axis set must not be empty");
    for (Axis a : axes)
        if (!j.has_axis(a))
            throw std::invalid_argument(std::string("entropy: joint has no axis ") + axis_name(a));
    return entropy_of_axes(j, axes);
}

double entropy(const JointPmf& j, std::initializer_list<Axis> axes) {
    return entropy(j, std::span<const Axis>(axes.begin(), axes.size()));
}

double mutual_information_raw(const JointPmf& j, std::initializer_list<Axis> a,
                              std::initializer_list<Axis> b, std::initializer_list<Axis> given) {
    const std::span<const Axis> sa(a.begin(), a.size());
    const std::span<const Axis> sb(b.begin(), b.size());
    const std::span<const Axis> sc(given.begin(), given.size());
    if (sa.empty() || sb.empty())
        throw std::invalid_argument("mutual_information: a and b must be nonempty");
    check_disjoint(sa, sb, "a, b");
    check_disjoint(sa, sc, "a, given");
    check_disjoint(sb, sc, "b, given");
    for (Axis x : sa)
        if (!j.has_axis(x))
            throw std::invalid_argument(std::string("mutual_information: joint has no axis ") + axis_name(x));
    for (Axis x : sb)
        if (!j.has_axis(x))
            throw std::invalid_argument(std::string("mutual_information: joint has no axis ") + axis_name(x));
    for (Axis x : sc)
        if (!j.has_axis(x))
            throw std::invalid_argument(std::string("mutual_information: joint has no axis ") + axis_name(x));

    // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C); entropy differences keep
    // zero-mass cells from ever entering a log ratio.
    const auto ac = ordered_union(j, sa, {}, sc);
    const auto bc = ordered_union(j, sb, {}, sc);
    const auto abc = ordered_union(j, sa, sb, sc);
    const auto c = ordered_union(j, {}, {}, sc);
    return entropy_of_axes(j, ac) + entropy_of_axes(j, bc) - entropy_of_axes(j, abc) -
           entropy_of_axes(j, c);
}

double mutual_information(const JointPmf& j, std::initializer_list<Axis> a,
                          std::initializer_list<Axis> b, std::initializer_list<Axis> given) {
    const double raw = mutual_information_raw(j, a, b, given);
    if (raw < -kNegativeInfoTolerance)
        throw InternalError("mutual information " + std::to_string(raw) +
                            " below -1e-10; joint is inconsistent");
    return raw > 0.0 ? raw : 0.0;
}

}  // namespace macc
