#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "macc/channel.hpp"
#include "macc/pmf.hpp"

namespace macc {

enum class Axis : int { U = 0, V = 1, X1 = 2, X2 = 3, Y = 4, Y1 = 5 };

const char* axis_name(Axis a);

/// Dense joint distribution over named axes.  Cell count is guarded at 1e8.
inline constexpr std::int64_t kJointCellGuard = 100'000'000;

class JointPmf {
public:
    JointPmf() = default;
    JointPmf(std::vector<Axis> axes, std::vector<int> sizes, std::vector<double> mass);

    const std::vector<Axis>& axes() const { return axes_; }
    const std::vector<int>& sizes() const { return sizes_; }
    std::span<const double> mass() const { return mass_; }

    bool has_axis(Axis a) const;
    int size_of(Axis a) const;
    double total_mass() const;

    /// Marginal onto the given axes, kept in this joint's axis order.
    JointPmf marginal(std::span<const Axis> keep) const;
    JointPmf marginal(std::initializer_list<Axis> keep) const;

private:
    std::vector<Axis> axes_;
    std::vector<int> sizes_;
    std::vector<double> mass_;
};

/// Independent per-user inputs p(x1)p(x2).
struct ProductInputPolicy {
    Pmf pX1;
    Pmf pX2;
};

// Factored input law p(u) p(v|u) p(x1|u) p(x2|v); the auxiliaries satisfy
// the chain U -> V -> (X1, X2) -> (Y, Y1) by construction.
struct AuxInputPolicy {
    Pmf pU;
    CondPmf pVgivenU;
    CondPmf pX1givenU;
    CondPmf pX2givenV;

    int card_u() const { return pU.size(); }
    int card_v() const { return pVgivenU.cols(); }
};

/// The embedding behind the product-input inner bound: singleton U, V = X2.
AuxInputPolicy embed_product_policy(const ProductInputPolicy& policy);

/// Four-axis joint [X1, X2, Y, Y1].
JointPmf build_joint(const MaccChannel& ch, const ProductInputPolicy& policy);

/// Six-axis joint [U, V, X1, X2, Y, Y1] from the factored law.
JointPmf build_joint(const MaccChannel& ch, const AuxInputPolicy& policy);

struct MarkovResiduals {
    double u_x2_given_v = 0.0;          // I(U; X2 | V)
    double uv_outputs_given_inputs = 0.0;  // I(U,V; Y,Y1 | X1,X2)
};

/// Residual conditional informations that must vanish under the factored law.
MarkovResiduals markov_residuals(const JointPmf& joint);

}  // namespace macc
