#include "macc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "macc/errors.hpp"
#include "macc/info.hpp"
#include "macc/rng.hpp"

namespace macc {

const char* bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::outer_thm1: return "outer_thm1";
        case BoundKind::inner_thm2: return "inner_thm2";
        case BoundKind::inner_cor1: return "inner_cor1";
        case BoundKind::halfduplex: return "halfduplex";
        case BoundKind::gaussian: return "gaussian";
    }
    return "?";
}

double binary_entropy(double p) {
    double h = 0.0;
    for (double q : {p, 1.0 - p})
        if (q > 0.0) h -= q * std::log2(q);
    return h;
}

double gaussian_capacity(double x) { return 0.5 * std::log2(1.0 + x); }

void HalfDuplexParams::validate() const {
    if (p_one < 0.0 || d_listen < 0.0 || p_one + d_listen > 1.0 + 1e-12)
        throw std::invalid_argument("half-duplex params need P >= 0, D >= 0, P + D <= 1");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("half-duplex params need 0 <= q <= 1");
}

void GaussianMaccParams::validate() const {
    if (n0 <= 0.0 || n1 <= 0.0)
        throw std::invalid_argument("gaussian params need positive noise variances");
    if (p1 < 0.0 || p2 < 0.0) throw std::invalid_argument("gaussian params need nonnegative powers");
}

namespace {

void require_markov(const JointPmf& joint) {
    const MarkovResiduals r = markov_residuals(joint);
    if (r.u_x2_given_v > 1e-10 || r.uv_outputs_given_inputs > 1e-10)
        throw InternalError("joint violates the factored-law Markov structure: I(U;X2|V) = " +
                            std::to_string(r.u_x2_given_v) + ", I(UV;YY1|X1X2) = " +
                            std::to_string(r.uv_outputs_given_inputs));
}

}  // namespace

RateTriple corollary1_triple(const MaccChannel& ch, const ProductInputPolicy& policy) {
    const JointPmf j = build_joint(ch, policy);
    const double leak = mutual_information(j, {Axis::X2}, {Axis::Y1}, {Axis::X1});
    RateTriple t;
    t.c1 = mutual_information(j, {Axis::X1}, {Axis::Y}, {Axis::X2});
    t.c2 = mutual_information(j, {Axis::X2}, {Axis::Y}, {Axis::X1}) - leak;
    t.c12 = mutual_information(j, {Axis::X1, Axis::X2}, {Axis::Y}) - leak;
    t.kind = BoundKind::inner_cor1;
    return t;
}

RateTriple theorem2_triple(const MaccChannel& ch, const AuxInputPolicy& policy) {
    const JointPmf j = build_joint(ch, policy);
    require_markov(j);
    const double leak = mutual_information(j, {Axis::V}, {Axis::Y1}, {Axis::U, Axis::X1});
    RateTriple t;
    t.c1 = mutual_information(j, {Axis::X1}, {Axis::Y}, {Axis::U, Axis::V});
    t.c2 = mutual_information(j, {Axis::V}, {Axis::Y}, {Axis::U, Axis::X1}) - leak;
    t.c12 = mutual_information(j, {Axis::X1, Axis::V}, {Axis::Y}, {Axis::U}) - leak;
    t.kind = BoundKind::inner_thm2;
    return t;
}

RateTriple theorem1_triple(const MaccChannel& ch, const AuxInputPolicy& policy) {
    const JointPmf j = build_joint(ch, policy);
    require_markov(j);
    const double leak = mutual_information(j, {Axis::V}, {Axis::Y1}, {Axis::U, Axis::X1});
    RateTriple t;
    t.c1 = mutual_information(j, {Axis::X1}, {Axis::Y}, {Axis::X2});
    t.c2 = mutual_information(j, {Axis::V}, {Axis::Y}, {Axis::U, Axis::X1}) - leak;
    // note: the sum bound conditions on nothing, unlike the inner bound's U
    t.c12 = mutual_information(j, {Axis::X1, Axis::V}, {Axis::Y}) - leak;
    t.kind = BoundKind::outer_thm1;
    return t;
}

ProductInputPolicy halfduplex_input_policy(const HalfDuplexParams& params) {
    params.validate();
    const double p0 = std::max(0.0, 1.0 - params.p_one - params.d_listen);
    return {Pmf({params.d_listen, p0, params.p_one}), Pmf({1.0 - params.q, params.q})};
}

RateTriple halfduplex_triple(const HalfDuplexParams& params) {
    params.validate();
    const double hq = binary_entropy(params.q);
    // P[Y=1] = q * (1-P) + (1-q) * P  (the null and 0 symbols both pass x2)
    const double py1 = params.q * (1.0 - params.p_one) + (1.0 - params.q) * params.p_one;
    RateTriple t;
    t.c1 = binary_entropy(params.p_one);
    t.c2 = hq * (1.0 - params.d_listen);
    t.c12 = binary_entropy(py1) - hq * params.d_listen;
    t.kind = BoundKind::halfduplex;
    return t;
}

RateTriple gaussian_triple(const GaussianMaccParams& params) {
    params.validate();
    RateTriple t;
    t.c1 = gaussian_capacity(params.p1 / params.n0);
    t.c2 = gaussian_capacity(params.p2 / params.n0) - gaussian_capacity(params.p2 / params.n1);
    t.c12 = gaussian_capacity((params.p1 + params.p2) / params.n0) -
            gaussian_capacity(params.p2 / params.n1);
    t.kind = BoundKind::gaussian;
    return t;
}

namespace {

constexpr double kGeomEps = 1e-12;

double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

bool points_equal(const RatePoint& a, const RatePoint& b) {
    return std::abs(a.r1 - b.r1) <= kGeomEps && std::abs(a.r2 - b.r2) <= kGeomEps;
}

}  // namespace

RatePolygon convex_hull(std::vector<RatePoint> points) {
    std::sort(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) {
        return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
    });
    points.erase(std::unique(points.begin(), points.end(), points_equal), points.end());
    if (points.size() <= 2) return {points};

    std::vector<RatePoint> hull;
    hull.reserve(points.size() + 1);
    for (const RatePoint& p : points) {  // lower
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= kGeomEps)
            hull.pop_back();
        hull.push_back(p);
    }
    const std::size_t lower = hull.size() + 1;
    for (std::size_t i = points.size() - 1; i-- > 0;) {  // upper
        const RatePoint& p = points[i];
        while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), p) <= kGeomEps)
            hull.pop_back();
        hull.push_back(p);
    }
    hull.pop_back();  // closes at the first vertex
    return {hull};
}

bool RatePolygon::contains(RatePoint p, double tol) const {
    if (vertices.empty()) return false;
    if (vertices.size() == 1)
        return std::abs(p.r1 - vertices[0].r1) <= tol && std::abs(p.r2 - vertices[0].r2) <= tol;
    if (vertices.size() == 2) {
        const RatePoint &a = vertices[0], &b = vertices[1];
        if (std::abs(cross(a, b, p)) > tol) return false;
        const double lo1 = std::min(a.r1, b.r1), hi1 = std::max(a.r1, b.r1);
        const double lo2 = std::min(a.r2, b.r2), hi2 = std::max(a.r2, b.r2);
        return p.r1 >= lo1 - tol && p.r1 <= hi1 + tol && p.r2 >= lo2 - tol && p.r2 <= hi2 + tol;
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const RatePoint& a = vertices[i];
        const RatePoint& b = vertices[(i + 1) % vertices.size()];
        if (cross(a, b, p) < -tol) return false;
    }
    return true;
}

RatePolygon triple_to_polygon(const RateTriple& t) {
    const double c1 = std::max(t.c1, 0.0);
    const double c2 = t.c2_clamped();
    const double c12 = t.c12_clamped();
    // pairwise intersections of x=0, y=0, x=c1, y=c2, x+y=c12
    const RatePoint candidates[] = {
        {0.0, 0.0},      {0.0, c2},        {0.0, c12},      {c1, 0.0},
        {c1, c2},        {c1, c12 - c1},   {c12, 0.0},      {c12 - c2, c2},
    };
    std::vector<RatePoint> feasible;
    for (const RatePoint& p : candidates) {
        if (p.r1 < -kGeomEps || p.r2 < -kGeomEps) continue;
        if (p.r1 > c1 + kGeomEps || p.r2 > c2 + kGeomEps) continue;
        if (p.r1 + p.r2 > c12 + kGeomEps) continue;
        feasible.push_back({std::max(p.r1, 0.0), std::max(p.r2, 0.0)});
    }
    return convex_hull(std::move(feasible));
}

namespace {

// Unit-step count for the simplex grid; non-divisors round down to the
// nearest unit fraction with a warning.
int grid_steps(double step, std::vector<std::string>& warnings) {
    if (step > 1.0) step = 1.0;
    const double inv = 1.0 / step;
    const double rounded = std::round(inv);
    if (std::abs(inv - rounded) <= 1e-9 * inv) return static_cast<int>(rounded);
    const int k = static_cast<int>(std::ceil(inv));
    warnings.push_back("grid step " + std::to_string(step) + " does not divide 1; using 1/" +
                       std::to_string(k));
    return k;
}

void enumerate_simplex(int dim, int remaining, int total, std::vector<int>& counts,
                       std::vector<Pmf>& out) {
    if (dim == 1) {
        counts.push_back(remaining);
        std::vector<double> p(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i)
            p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
        out.emplace_back(std::move(p));
        counts.pop_back();
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        counts.push_back(c);
        enumerate_simplex(dim - 1, remaining - c, total, counts, out);
        counts.pop_back();
    }
}

std::vector<Pmf> simplex_grid(int dim, int k) {
    std::vector<Pmf> out;
    std::vector<int> counts;
    enumerate_simplex(dim, k, k, counts, out);
    return out;
}

std::vector<double> dirichlet_row(SplitMix64& rng, int dim) {
    std::vector<double> row(static_cast<std::size_t>(dim));
    double sum = 0.0;
    for (auto& v : row) {
        v = -std::log1p(-rng.next_unit());  // Exp(1); uniform Dirichlet after normalizing
        sum += v;
    }
    for (auto& v : row) v /= sum;
    return row;
}

AuxInputPolicy sample_aux_policy(SplitMix64& rng, int card_u, int card_v, int nx1, int nx2) {
    AuxInputPolicy pol;
    pol.pU = Pmf(dirichlet_row(rng, card_u));
    std::vector<std::vector<double>> v_rows, x1_rows, x2_rows;
    for (int u = 0; u < card_u; ++u) v_rows.push_back(dirichlet_row(rng, card_v));
    for (int u = 0; u < card_u; ++u) x1_rows.push_back(dirichlet_row(rng, nx1));
    for (int v = 0; v < card_v; ++v) x2_rows.push_back(dirichlet_row(rng, nx2));
    pol.pVgivenU = CondPmf(std::move(v_rows));
    pol.pX1givenU = CondPmf(std::move(x1_rows));
    pol.pX2givenV = CondPmf(std::move(x2_rows));
    return pol;
}

constexpr std::int64_t kPolicyCountGuard = 5'000'000;

}  // namespace

SearchResult search_inner_region(const MaccChannel& ch, const SearchConfig& cfg) {
    if (cfg.grid_step <= 0.0) throw std::invalid_argument("grid step must be positive");
    if (cfg.aux_card_u < 1 || cfg.aux_card_v < 1)
        throw std::invalid_argument("auxiliary cardinalities must be >= 1");
    if (cfg.random_samples < 0) throw std::invalid_argument("random sample count must be >= 0");
    const std::int64_t cells = std::int64_t{cfg.aux_card_u} * cfg.aux_card_v * ch.nx1() *
                               ch.nx2() * ch.ny() * ch.ny1();
    if (cells > kJointCellGuard)
        throw GuardError("auxiliary search joint would have " + std::to_string(cells) +
                         " cells; guard is " + std::to_string(kJointCellGuard));

    SearchResult result;
    const int k = grid_steps(cfg.grid_step, result.warnings);
    const auto grid1 = simplex_grid(ch.nx1(), k);
    const auto grid2 = simplex_grid(ch.nx2(), k);
    const std::int64_t policies =
        static_cast<std::int64_t>(grid1.size()) * static_cast<std::int64_t>(grid2.size());
    if (policies > kPolicyCountGuard)
        throw GuardError("grid would enumerate " + std::to_string(policies) +
                         " product policies; guard is " + std::to_string(kPolicyCountGuard));

    for (const Pmf& p1 : grid1)
        for (const Pmf& p2 : grid2) {
            ProductInputPolicy pol{p1, p2};
            SupportPoint sp;
            sp.triple = corollary1_triple(ch, pol);
            sp.product = std::move(pol);
            result.support.push_back(std::move(sp));
        }

    if (cfg.aux_card_u * cfg.aux_card_v > 1) {
        for (int s = 0; s < cfg.random_samples; ++s) {
            SplitMix64 rng(stream_seed(cfg.seed, rng_domain::kAuxSearch, static_cast<std::uint64_t>(s)));
            AuxInputPolicy pol =
                sample_aux_policy(rng, cfg.aux_card_u, cfg.aux_card_v, ch.nx1(), ch.nx2());
            SupportPoint sp;
            sp.triple = theorem2_triple(ch, pol);
            sp.aux = std::move(pol);
            result.support.push_back(std::move(sp));
        }
    }

    std::vector<RatePoint> points;
    for (const SupportPoint& sp : result.support)
        for (const RatePoint& v : triple_to_polygon(sp.triple).vertices) points.push_back(v);
    result.hull = convex_hull(std::move(points));
    return result;
}

}  // namespace macc
