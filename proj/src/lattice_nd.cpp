#include "umbra/lattice_nd.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace umbra {

LatticeSpecND LatticeSpecND::symbolic(int dim) {
    LatticeSpecND spec;
    spec.dim = dim;
    for (int i = 0; i < dim; ++i) spec.spacing.push_back(SpacingScalar::symbol(i));
    return spec;
}

LatticeSpecND LatticeSpecND::with_numeric(std::vector<Rat> spacings) {
    LatticeSpecND spec;
    spec.dim = static_cast<int>(spacings.size());
    for (const Rat& a : spacings) {
        if (a <= 0) throw std::invalid_argument("LatticeSpecND: spacings must be positive");
        spec.spacing.push_back(SpacingScalar(a));
    }
    spec.numeric = std::move(spacings);
    return spec;
}

NdVariant nd_variant_from_string(const std::string& name) {
    if (name == "forward-basic" || name == "forward") return NdVariant::forward_basic;
    if (name == "central-symmetric" || name == "central") return NdVariant::central_symmetric;
    throw std::invalid_argument("unknown lattice variant '" + name + "'");
}

std::string to_string(NdVariant v) {
    return v == NdVariant::forward_basic ? "forward-basic" : "central-symmetric";
}

NdOps build_nd_ops(const LatticeSpecND& spec, NdVariant variant) {
    NdOps ops;
    ops.dim = spec.dim;
    ops.variant = variant;
    for (int i = 0; i < spec.dim; ++i) {
        const SpacingScalar& a = spec.spacing[static_cast<size_t>(i)];
        ops.shift.push_back(shift_op(a, spec.dim, i));
        if (variant == NdVariant::forward_basic) {
            ops.q.push_back(make_delta(DeltaKind::forward, a, spec.dim, i));
            // xhat_i = x_i S_i^{-1}
            ops.xhat.push_back(NormalOrderedOp::coordinate(spec.dim, i) *
                               NormalOrderedOp::from_series(shift_op(-a, spec.dim, i)));
        } else {
            ops.q.push_back(make_delta(DeltaKind::central, a, spec.dim, i));
            ops.xhat.push_back(symmetric_xhat(ops.q.back(), i));
        }
    }
    return ops;
}

std::array<NormalOrderedOp, 3> angular_momentum(const NdOps& ops) {
    if (ops.dim != 3) throw std::invalid_argument("angular_momentum: dimension must be 3");
    const SpacingScalar minus_i(GaussRat(Rat(0), Rat(-1)));
    const auto component = [&](int i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        NormalOrderedOp sum = ops.xhat[static_cast<size_t>(j)] *
                                  NormalOrderedOp::from_series(ops.q[static_cast<size_t>(k)]) -
                              ops.xhat[static_cast<size_t>(k)] *
                                  NormalOrderedOp::from_series(ops.q[static_cast<size_t>(j)]);
        return sum.scaled(minus_i);
    };
    return {component(0), component(1), component(2)};
}

LaurentPoly radial_invariant(const NdOps& ops) {
    LaurentPoly one = LaurentPoly::constant(ops.dim, SpacingScalar(1));
    LaurentPoly out(ops.dim);
    for (const auto& xh : ops.xhat) out += (xh * xh).apply(one);
    return out;
}

namespace {

Rat sphere_value(const std::vector<long>& m, const std::vector<Rat>& a, NdVariant variant) {
    Rat v(0);
    for (size_t i = 0; i < m.size(); ++i) {
        const Rat x = Rat(m[i]) * a[i];
        if (variant == NdVariant::forward_basic)
            v += x * (x - a[i]);
        else
            v += x * x - a[i] * a[i] / 2;
    }
    return v;
}

}  // namespace

std::vector<std::vector<long>> lattice_sphere(const LatticeSpecND& spec, const Rat& c,
                                              NdVariant variant, long box_radius) {
    if (!spec.numeric)
        throw std::invalid_argument("lattice_sphere: numeric spacings required");
    const auto& a = *spec.numeric;
    std::vector<std::vector<long>> points;
    std::vector<long> m(static_cast<size_t>(spec.dim), -box_radius);
    while (true) {
        if (sphere_value(m, a, variant) == c) points.push_back(m);
        size_t i = 0;
        while (i < m.size()) {
            if (m[i] < box_radius) {
                ++m[i];
                break;
            }
            m[i] = -box_radius;
            ++i;
        }
        if (i == m.size()) break;
    }
    std::sort(points.begin(), points.end());
    return points;
}

SphereSymmetryReport sphere_symmetries_check(const std::vector<std::vector<long>>& points,
                                             const LatticeSpecND& spec, NdVariant variant) {
    if (!spec.numeric)
        throw std::invalid_argument("sphere_symmetries_check: numeric spacings required");
    const auto& a = *spec.numeric;
    if (!std::all_of(a.begin(), a.end(), [&](const Rat& v) { return v == a.front(); }))
        throw std::invalid_argument("sphere_symmetries_check: equal spacings required");

    SphereSymmetryReport rep;
    std::set<std::vector<long>> set(points.begin(), points.end());
    const auto contains = [&](const std::vector<long>& p) { return set.count(p) > 0; };
    const auto reflect = [&](long v) {
        return variant == NdVariant::forward_basic ? 1 - v : -v;
    };

    rep.closed_under_swaps = true;
    rep.closed_under_reflections = true;
    for (const auto& p : set) {
        for (size_t i = 0; i < p.size(); ++i) {
            for (size_t j = i + 1; j < p.size(); ++j) {
                auto q = p;
                std::swap(q[i], q[j]);
                if (!contains(q)) rep.closed_under_swaps = false;
            }
            auto q = p;
            q[i] = reflect(q[i]);
            if (!contains(q)) rep.closed_under_reflections = false;
        }
    }

    // Orbits under the group generated by swaps and reflections.
    std::set<std::vector<long>> seen;
    for (const auto& p : set) {
        if (seen.count(p)) continue;
        std::vector<std::vector<long>> frontier{p};
        std::set<std::vector<long>> orbit{p};
        while (!frontier.empty()) {
            const auto cur = frontier.back();
            frontier.pop_back();
            std::vector<std::vector<long>> nexts;
            for (size_t i = 0; i < cur.size(); ++i) {
                for (size_t j = i + 1; j < cur.size(); ++j) {
                    auto q = cur;
                    std::swap(q[i], q[j]);
                    nexts.push_back(std::move(q));
                }
                auto q = cur;
                q[i] = reflect(q[i]);
                nexts.push_back(std::move(q));
            }
            for (auto& q : nexts)
                if (contains(q) && orbit.insert(q).second) frontier.push_back(std::move(q));
        }
        rep.orbit_sizes.push_back(static_cast<int>(orbit.size()));
        seen.insert(orbit.begin(), orbit.end());
        ++rep.orbit_count;
    }
    return rep;
}

DoublingReport doubling_count(const LatticeSpecND& spec, bool include_time) {
    if (!spec.numeric)
        throw std::invalid_argument("doubling_count: numeric spacings required");
    DoublingReport rep;
    const int axes = spec.dim + (include_time ? 1 : 0);
    rep.count = 1L << axes;  // two dispersion zeros per discretized axis
    for (const Rat& a : *spec.numeric)
        rep.zeros_per_axis.push_back({0.0, M_PI / rat_double(a)});
    if (include_time) rep.zeros_per_axis.push_back({0.0, M_PI});
    return rep;
}

}  // namespace umbra
