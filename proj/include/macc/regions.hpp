#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "macc/joint.hpp"

namespace macc {

enum class BoundKind { outer_thm1, inner_thm2, inner_cor1, halfduplex, gaussian };

const char* bound_kind_name(BoundKind k);

// One evaluated instance of a bound family: R1 <= c1, R2 <= c2,
// R1 + R2 <= c12, in bits per channel use.  c2 and c12 are stored raw
// (the secrecy deficit can push them negative); clamping happens only
// when geometry is built.
struct RateTriple {
    double c1 = 0.0;
    double c2 = 0.0;
    double c12 = 0.0;
    BoundKind kind = BoundKind::inner_cor1;

    double c2_clamped() const { return c2 > 0.0 ? c2 : 0.0; }
    double c12_clamped() const { return c12 > 0.0 ? c12 : 0.0; }
};

struct RatePoint {
    double r1 = 0.0;
    double r2 = 0.0;
};

/// Convex region in the nonnegative quadrant, vertices counterclockwise
/// starting at (0,0).  Degenerate regions are a segment or a single point.
struct RatePolygon {
    std::vector<RatePoint> vertices;

    bool contains(RatePoint p, double tol = 1e-9) const;
};

/// Convex hull (monotone chain) of arbitrary points; input is sorted
/// internally so the result is independent of ordering.
RatePolygon convex_hull(std::vector<RatePoint> points);

struct HalfDuplexParams {
    double p_one = 0.0;    // P[X1 = 1]
    double d_listen = 0.0; // D = P[X1 = null]
    double q = 0.5;        // P[X2 = 1]

    void validate() const;
};

struct GaussianMaccParams {
    double p1 = 0.0;
    double p2 = 0.0;
    double n0 = 1.0;  // receiver noise variance
    double n1 = 1.0;  // eavesdropper noise variance

    void validate() const;
};

/// h(p) in bits.
double binary_entropy(double p);

/// 0.5 * log2(1 + x), the Gaussian capacity function in bits.
double gaussian_capacity(double x);

RateTriple corollary1_triple(const MaccChannel& ch, const ProductInputPolicy& policy);
RateTriple theorem2_triple(const MaccChannel& ch, const AuxInputPolicy& policy);
RateTriple theorem1_triple(const MaccChannel& ch, const AuxInputPolicy& policy);

/// Closed-form half-duplex triple; must match corollary1_triple on the
/// explicit tensor with the induced product policy.
RateTriple halfduplex_triple(const HalfDuplexParams& params);

/// The product policy induced by half-duplex parameters (pX1 = (D, 1-P-D, P)).
ProductInputPolicy halfduplex_input_policy(const HalfDuplexParams& params);

RateTriple gaussian_triple(const GaussianMaccParams& params);

/// Intersection of the clamped half-planes with the nonnegative quadrant.
RatePolygon triple_to_polygon(const RateTriple& t);

struct SearchConfig {
    double grid_step = 0.1;
    int aux_card_u = 1;
    int aux_card_v = 1;
    int random_samples = 0;
    std::uint64_t seed = 1;
};

struct SupportPoint {
    std::optional<ProductInputPolicy> product;
    std::optional<AuxInputPolicy> aux;
    RateTriple triple;
};

struct SearchResult {
    RatePolygon hull;
    std::vector<SupportPoint> support;
    std::vector<std::string> warnings;
};

// Enumerates product policies on a simplex grid (plus seeded random auxiliary
// policies when aux cardinalities exceed 1), evaluates the matching inner
// bound for each, and returns the convex hull of the union of the induced
// polygons.  Deterministic for a fixed config.
SearchResult search_inner_region(const MaccChannel& ch, const SearchConfig& cfg);

}  // namespace macc
