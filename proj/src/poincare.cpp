#include "umbra/poincare.hpp"

#include <stdexcept>

namespace umbra {

GMat4 gmat_zero() {
    GMat4 m;
    for (auto& row : m) row.fill(GaussRat(0));
    return m;
}

GMat4 gmat_identity() {
    GMat4 m = gmat_zero();
    for (int i = 0; i < 4; ++i) m[i][i] = GaussRat(1);
    return m;
}

GMat4 gmat_mul(const GMat4& a, const GMat4& b) {
    GMat4 out = gmat_zero();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

GMat4 gmat_add(const GMat4& a, const GMat4& b) {
    GMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[i][j] + b[i][j];
    return out;
}

GMat4 gmat_scale(const GMat4& a, const GaussRat& c) {
    GMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[i][j] * c;
    return out;
}

GMat4 gmat_conj_transpose(const GMat4& a) {
    GMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[j][i].conj();
    return out;
}

GMat4 gmat_inverse(const GMat4& a) {
    GMat4 m = a;
    GMat4 inv = gmat_identity();
    for (int col = 0; col < 4; ++col) {
        int pivot = -1;
        for (int r = col; r < 4; ++r)
            if (!m[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot == -1) throw std::domain_error("gmat_inverse: singular matrix");
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        const GaussRat s = m[col][col].inverse();
        for (int j = 0; j < 4; ++j) {
            m[col][j] *= s;
            inv[col][j] *= s;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            const GaussRat f = m[r][col];
            for (int j = 0; j < 4; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

GammaSet GammaSet::dirac_basis() {
    const GaussRat I = GaussRat::i();
    GammaSet g;
    for (auto& mat : g.gamma) mat = gmat_zero();
    // g^0 = diag(1, 1, -1, -1)
    g.gamma[0][0][0] = 1;
    g.gamma[0][1][1] = 1;
    g.gamma[0][2][2] = -1;
    g.gamma[0][3][3] = -1;
    // g^k = [[0, sigma_k], [-sigma_k, 0]]
    g.gamma[1][0][3] = 1;
    g.gamma[1][1][2] = 1;
    g.gamma[1][2][1] = -1;
    g.gamma[1][3][0] = -1;
    g.gamma[2][0][3] = -I;
    g.gamma[2][1][2] = I;
    g.gamma[2][2][1] = I;
    g.gamma[2][3][0] = -I;
    g.gamma[3][0][2] = 1;
    g.gamma[3][1][3] = -1;
    g.gamma[3][2][0] = -1;
    g.gamma[3][3][1] = 1;
    return g;
}

GammaSet GammaSet::conjugated(const GMat4& seed) const {
    // Cayley transform: U = (I - A)(I + A)^{-1} is unitary when A^dag = -A.
    const GMat4 a_dag = gmat_conj_transpose(seed);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (a_dag[i][j] != -seed[i][j])
                throw std::invalid_argument("GammaSet::conjugated: seed must be anti-Hermitian");
    const GMat4 id = gmat_identity();
    const GMat4 u =
        gmat_mul(gmat_add(id, gmat_scale(seed, GaussRat(-1))), gmat_inverse(gmat_add(id, seed)));
    const GMat4 u_dag = gmat_conj_transpose(u);
    GammaSet out;
    for (int mu = 0; mu < 4; ++mu) out.gamma[mu] = gmat_mul(gmat_mul(u, gamma[mu]), u_dag);
    return out;
}

bool GammaSet::valid() const {
    const std::array<int, 4> eta{1, -1, -1, -1};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            GMat4 anti = gmat_add(gmat_mul(gamma[mu], gamma[nu]), gmat_mul(gamma[nu], gamma[mu]));
            GMat4 want = gmat_scale(gmat_identity(), GaussRat(mu == nu ? 2 * eta[mu] : 0));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    if (anti[i][j] != want[i][j]) return false;
        }
    return true;
}

namespace {

constexpr int kDim = 4;       // three spatial axes + continuous time
constexpr int kTimeAxis = 3;

const SpacingScalar kMinusI(GaussRat(Rat(0), Rat(-1)));
const SpacingScalar kPlusI(GaussRat(Rat(0), Rat(1)));

std::vector<ShiftInvariantOp> spacetime_deltas(NdVariant variant) {
    std::vector<ShiftInvariantOp> q;
    for (int i = 0; i < 3; ++i) {
        const DeltaKind kind =
            variant == NdVariant::forward_basic ? DeltaKind::forward : DeltaKind::central;
        q.push_back(make_delta(kind, SpacingScalar::symbol(i), kDim, i));
    }
    q.push_back(ShiftInvariantOp::d_op(kDim, kTimeAxis));
    return q;
}

std::vector<NormalOrderedOp> spacetime_xhats(NdVariant variant,
                                             const std::vector<ShiftInvariantOp>& q) {
    std::vector<NormalOrderedOp> xh;
    for (int i = 0; i < 3; ++i) {
        if (variant == NdVariant::forward_basic)
            xh.push_back(NormalOrderedOp::coordinate(kDim, i) *
                         NormalOrderedOp::from_series(shift_op(-SpacingScalar::symbol(i), kDim, i)));
        else
            xh.push_back(symmetric_xhat(q[static_cast<size_t>(i)], i));
    }
    xh.push_back(NormalOrderedOp::coordinate(kDim, kTimeAxis));  // y_0 untouched
    return xh;
}

}  // namespace

PoincareRep poincare_rep(NdVariant variant, const Rat& kappa, int boost_sign) {
    if (boost_sign != 1 && boost_sign != -1)
        throw std::invalid_argument("poincare_rep: boost_sign must be +1 or -1");
    PoincareRep rep;
    rep.kappa = kappa;
    rep.boost_sign = boost_sign;
    rep.variant = variant;
    rep.q = spacetime_deltas(variant);
    rep.xhat = spacetime_xhats(variant, rep.q);

    for (int mu = 0; mu < 4; ++mu)
        rep.p[static_cast<size_t>(mu)] =
            NormalOrderedOp::from_series(rep.q[static_cast<size_t>(mu)]).scaled(kMinusI);

    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        rep.m[static_cast<size_t>(i)] =
            rep.xhat[static_cast<size_t>(j)] * rep.p[static_cast<size_t>(k)] -
            rep.xhat[static_cast<size_t>(k)] * rep.p[static_cast<size_t>(j)];
        rep.l[static_cast<size_t>(i)] =
            rep.xhat[kTimeAxis] * rep.p[static_cast<size_t>(i)] +
            (rep.xhat[static_cast<size_t>(i)] * rep.p[kTimeAxis])
                .scaled(SpacingScalar(Rat(boost_sign) * kappa));
    }

    NormalOrderedOp c = NormalOrderedOp::from_series(
        -(rep.q[kTimeAxis] * rep.q[kTimeAxis]));
    for (int k = 0; k < 3; ++k)
        c += NormalOrderedOp::from_series(rep.q[static_cast<size_t>(k)] *
                                          rep.q[static_cast<size_t>(k)]);
    rep.casimir = c;
    return rep;
}

namespace {

/// Structural equality to the series order plus agreement on every
/// monomial of total degree <= degree.
bool operators_agree(const NormalOrderedOp& a, const NormalOrderedOp& b, int degree,
                     int series_order) {
    if (!a.equal_to_order(b, series_order)) return false;
    const int dim = a.dim();
    for (const auto& mono : multi_indices_up_to(dim, degree)) {
        LaurentPoly p = LaurentPoly::constant(dim, SpacingScalar(1));
        for (size_t i = 0; i < mono.size(); ++i)
            if (mono[i] > 0) p *= LaurentPoly::coordinate(dim, static_cast<int>(i), mono[i]);
        if (a.apply(p) != b.apply(p)) return false;
    }
    return true;
}

}  // namespace

PoincareReport verify_poincare(const PoincareRep& rep, int degree, int series_order) {
    PoincareReport out;
    const SpacingScalar ik(GaussRat(Rat(0), rep.kappa));

    const NormalOrderedOp m12 = commutator(rep.m[0], rep.m[1]);
    if (operators_agree(m12, rep.m[2].scaled(kPlusI), degree, series_order))
        out.rotation_sign = 1;
    else if (operators_agree(m12, rep.m[2].scaled(kMinusI), degree, series_order))
        out.rotation_sign = -1;
    const SpacingScalar sign_i =
        out.rotation_sign >= 0 ? kPlusI : kMinusI;  // convention found empirically

    const auto check = [&](std::string name, const NormalOrderedOp& got,
                           const NormalOrderedOp& want) {
        out.relations.push_back({std::move(name), operators_agree(got, want, degree, series_order)});
    };

    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const auto si = std::to_string(i + 1), sj = std::to_string(j + 1), sk = std::to_string(k + 1);
        check("[M" + si + ",M" + sj + "] = i eps M" + sk, commutator(rep.m[i], rep.m[j]),
              rep.m[k].scaled(sign_i));
        check("[M" + si + ",P" + sj + "] = i eps P" + sk, commutator(rep.m[i], rep.p[j]),
              rep.p[k].scaled(sign_i));
        check("[M" + si + ",L" + sj + "] = i eps L" + sk, commutator(rep.m[i], rep.l[j]),
              rep.l[k].scaled(sign_i));
        check("[M" + si + ",P0] = 0", commutator(rep.m[i], rep.p[3]), NormalOrderedOp::zero(kDim));
        const Rat kappa_b = Rat(rep.boost_sign) * rep.kappa;
        check("[L" + si + ",L" + sj + "] = -i kappa' eps M" + sk, commutator(rep.l[i], rep.l[j]),
              rep.m[k].scaled(-(sign_i * SpacingScalar(kappa_b))));
        check("[L" + si + ",P" + si + "] = i kappa' P0", commutator(rep.l[i], rep.p[i]),
              rep.p[3].scaled(sign_i * SpacingScalar(kappa_b)));
        check("[L" + si + ",P" + sj + "] = 0 (i != j)", commutator(rep.l[i], rep.p[j]),
              NormalOrderedOp::zero(kDim));
        check("[L" + si + ",P0] = i P" + si, commutator(rep.l[i], rep.p[3]),
              rep.p[i].scaled(sign_i));
    }
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
            check("[P" + std::to_string(mu) + ",P" + std::to_string(nu) + "] = 0",
                  commutator(rep.p[mu], rep.p[nu]), NormalOrderedOp::zero(kDim));

    out.closed = out.rotation_sign != 0;
    for (const auto& r : out.relations) out.closed = out.closed && r.holds;

    out.casimir_central = true;
    const auto central = [&](const NormalOrderedOp& g) {
        return operators_agree(commutator(rep.casimir, g), NormalOrderedOp::zero(kDim), degree,
                               series_order);
    };
    for (const auto& g : rep.p) out.casimir_central = out.casimir_central && central(g);
    for (const auto& g : rep.m) out.casimir_central = out.casimir_central && central(g);
    for (const auto& g : rep.l) out.casimir_central = out.casimir_central && central(g);
    return out;
}

So3Report verify_so3(const NdOps& ops, int degree, int series_order) {
    So3Report out;
    const auto L = angular_momentum(ops);
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const NormalOrderedOp lhs = commutator(L[static_cast<size_t>(i)], L[static_cast<size_t>(j)]);
        const bool ok =
            operators_agree(lhs, L[static_cast<size_t>(k)].scaled(kPlusI), degree, series_order);
        out.relations.push_back({"[L" + std::to_string(i + 1) + ",L" + std::to_string(j + 1) +
                                     "] = i L" + std::to_string(k + 1),
                                 ok});
    }
    out.closed = true;
    for (const auto& r : out.relations) out.closed = out.closed && r.holds;
    out.annihilates_radial_invariant = true;
    const LaurentPoly inv = radial_invariant(ops);
    for (const auto& Li : L)
        if (!Li.apply(inv).is_zero()) out.annihilates_radial_invariant = false;
    return out;
}

bool dirac_factorization_check(const GammaSet& gammas, NdVariant variant, const Rat& mass,
                               int series_order) {
    if (!gammas.valid())
        throw std::invalid_argument("dirac_factorization_check: invalid gamma algebra");
    const auto q = spacetime_deltas(variant);

    // i g^0 d_t + i g^k Q_k -/+ m as a 4x4 matrix of operators.
    const auto dirac_op = [&](const Rat& m_sign) {
        std::array<std::array<NormalOrderedOp, 4>, 4> d{};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                NormalOrderedOp entry(kDim);
                for (int mu = 0; mu < 4; ++mu) {
                    const GaussRat& g = gammas.gamma[static_cast<size_t>(mu)][r][c];
                    if (g.is_zero()) continue;
                    const int axis = (mu == 0) ? kTimeAxis : mu - 1;
                    entry += NormalOrderedOp::from_series(q[static_cast<size_t>(axis)])
                                 .scaled(SpacingScalar(GaussRat::i() * g));
                }
                if (r == c && !m_sign.is_zero())
                    entry += NormalOrderedOp::constant(kDim, SpacingScalar(m_sign));
                d[static_cast<size_t>(r)][static_cast<size_t>(c)] = entry;
            }
        return d;
    };

    const auto minus = dirac_op(-mass);
    const auto plus = dirac_op(mass);

    NormalOrderedOp target = NormalOrderedOp::from_series(-(q[kTimeAxis] * q[kTimeAxis]));
    for (int k = 0; k < 3; ++k)
        target += NormalOrderedOp::from_series(q[static_cast<size_t>(k)] * q[static_cast<size_t>(k)]);
    target -= NormalOrderedOp::constant(kDim, SpacingScalar(mass * mass));

    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            NormalOrderedOp entry(kDim);
            for (int s = 0; s < 4; ++s)
                entry += minus[static_cast<size_t>(r)][static_cast<size_t>(s)] *
                         plus[static_cast<size_t>(s)][static_cast<size_t>(c)];
            const NormalOrderedOp want = (r == c) ? target : NormalOrderedOp::zero(kDim);
            if (!entry.equal_to_order(want, series_order)) return false;
        }
    return true;
}

}  // namespace umbra
