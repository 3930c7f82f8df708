// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line each. Exit status is the number of failed criteria.

#include "umbra/evolve.hpp"
#include "umbra/extension.hpp"
#include "umbra/hermite.hpp"
#include "umbra/modular.hpp"
#include "umbra/newton.hpp"
#include "umbra/oscillator.hpp"
#include "umbra/poincare.hpp"
#include "umbra/stirling.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace umbra;

namespace {

int g_failures = 0;

void criterion(int idx, const std::string& what, bool ok, const std::string& detail = "") {
    ++g_failures;  // provisional; removed again on success
    if (ok) --g_failures;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << std::setw(2) << idx << "] " << what;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
}

LaurentPoly xpow(int k) { return LaurentPoly::coordinate(1, 0, k); }
LaurentPoly amono(int apow, Rat c = Rat(1)) {
    return LaurentPoly::constant(1, SpacingScalar::monomial(GaussRat(std::move(c)), 0, apow));
}
const LaurentPoly kOne = LaurentPoly::constant(1, SpacingScalar(1));

const std::array<DeltaKind, 5> kKinds{DeltaKind::derivative, DeltaKind::forward,
                                      DeltaKind::backward, DeltaKind::central, DeltaKind::laguerre};

std::mt19937_64 rng(190995);

Rat random_rat() {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 5);
    return Rat(num(rng), den(rng));
}

LaurentPoly random_univariate(int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    LaurentPoly p(1);
    for (int k = deg(rng); k >= 0; --k) p += xpow(k) * SpacingScalar(random_rat());
    return p;
}

// --------------------------------------------------------------- criteria

void c01_exact_ccr() {
    bool ok = true;
    const auto id = NormalOrderedOp::identity(1);
    for (const auto kind : kKinds) {
        const auto q = make_delta(kind);
        const auto qn = NormalOrderedOp::from_series(q);
        for (const bool symmetric : {false, true}) {
            const auto xh = symmetric ? symmetric_xhat(q) : basic_xhat(q);
            const auto comm = commutator(qn, xh);
            ok = ok && comm.equal_to_order(id, 12);
            for (int deg = 0; deg <= 10; ++deg) ok = ok && comm.apply(xpow(deg)) == xpow(deg);
        }
    }
    criterion(1, "exact CCR [Q, xhat] = 1 for five deltas, both recipes, degree <= 10", ok,
              "zero tolerance");
}

void c02_basic_closed_forms() {
    bool ok = true;
    const auto deriv = basic_sequence(make_delta(DeltaKind::derivative));
    for (unsigned k = 0; k <= 8; ++k) ok = ok && deriv.poly(k) == xpow(static_cast<int>(k));

    const auto fwd = basic_sequence(make_delta(DeltaKind::forward));
    for (unsigned k = 0; k <= 8; ++k) ok = ok && fwd.poly(k) == falling_factorial(k);

    const auto cen = basic_sequence(make_delta(DeltaKind::central));
    for (int k = 0; k <= 8; ++k) {
        LaurentPoly want = kOne;
        if (k >= 1) {
            want = xpow(1);
            for (int n = 1; n <= k - 1; ++n) want *= xpow(1) + amono(1, Rat(k - 2 * n));
        }
        ok = ok && cen.poly(static_cast<unsigned>(k)) == want;
    }

    const auto lag = basic_sequence(make_delta(DeltaKind::laguerre));
    const auto w = ShiftInvariantOp::from_coeffs(
        1, 0, {SpacingScalar(-1), SpacingScalar(2), SpacingScalar(-1)});
    const auto mult = NormalOrderedOp::coordinate(1, 0) * NormalOrderedOp::from_series(w);
    LaurentPoly p = kOne;
    for (unsigned k = 0; k <= 8; ++k) {
        ok = ok && lag.poly(k) == p;
        p = mult.apply(p);
    }
    criterion(2, "basic-sequence closed forms (powers, factorials, central product, laguerre)", ok,
              "exact, k <= 8");
}

void c03_binomial_and_sheffer() {
    bool ok = true;
    const std::vector<int> ax{0}, ay{1};
    for (const auto kind : kKinds) {
        const auto seq = basic_sequence(make_delta(kind));
        for (unsigned k = 0; k <= 8; ++k) {
            const LaurentPoly sum2 = LaurentPoly::coordinate(2, 0) + LaurentPoly::coordinate(2, 1);
            const LaurentPoly lhs = seq.poly(k).embedded(2, ax).substituted(0, sum2);
            LaurentPoly rhs(2);
            for (unsigned l = 0; l <= k; ++l)
                rhs += seq.poly(l).embedded(2, ax) * seq.poly(k - l).embedded(2, ay) *
                       SpacingScalar(binomial(k, l));
            ok = ok && lhs == rhs;
        }
    }
    for (const auto kind : kKinds) {
        const auto q = make_delta(kind);
        const auto s = sheffer_sequence(q);
        const auto b = basic_sequence(q);
        for (unsigned k = 1; k <= 8; ++k)
            ok = ok && q.apply(s.poly(k)) == s.poly(k - 1) * SpacingScalar(Rat(k));
        for (unsigned n = 0; n <= 8; ++n) {
            try {
                sheffer_expand(s, b, n);  // asserts the identity internally
            } catch (const std::exception&) {
                ok = false;
            }
        }
    }
    criterion(3, "binomial type and sheffer relations (defining + expansion)", ok, "exact, k <= 8");
}

void c04_star_product() {
    bool ok = true;
    const auto fwd = basic_sequence(make_delta(DeltaKind::forward));
    const auto cen = basic_sequence(make_delta(DeltaKind::central));
    for (int trial = 0; trial < 12; ++trial) {
        const LaurentPoly p = random_univariate(6), q = random_univariate(6),
                          r = random_univariate(6);
        ok = ok && star_product(p, kOne, fwd) == p;
        ok = ok && star_product(p, q, fwd) == star_product(q, p, fwd);
        ok = ok && star_product(star_product(p, q, cen), r, cen) ==
                       star_product(p, star_product(q, r, cen), cen);
        const auto qop = make_delta(DeltaKind::forward);
        ok = ok && qop.apply(star_product(p, q, fwd)) ==
                       star_product(qop.apply(p), q, fwd) + star_product(p, qop.apply(q), fwd);
    }
    for (unsigned k = 0; k <= 5; ++k)
        for (unsigned l = 0; l <= 5; ++l) {
            ok = ok && star_product(fwd.poly(k), fwd.poly(l), fwd) == fwd.poly(k + l);
            ok = ok && star_product(cen.poly(k), cen.poly(l), cen) == cen.poly(k + l);
        }
    criterion(4, "star product: unit, associative, commutative, q_k * q_l, leibniz", ok,
              "exact, random degree <= 6");
}

void c05_newton_exp() {
    bool ok = true;
    for (const auto& [k, a] : std::vector<std::pair<Rat, Rat>>{{Rat(1, 2), Rat(1)},
                                                               {Rat(-2, 3), Rat(1)},
                                                               {Rat(3, 2), Rat(1, 2)}}) {
        const auto series = NewtonSeries::umbral_exp(k, a, 40);
        for (long n = 0; n <= 20; ++n) {
            const auto rep = eval_newton(series, Rat(n) * a, 30);
            Rat want(1);
            for (long j = 0; j < n; ++j) want *= Rat(1) + k * a;
            ok = ok && rep.value == want && rep.verdict == NewtonVerdict::terminating;
        }
    }
    const auto big = NewtonSeries::umbral_exp(Rat(2), Rat(1), 60);
    const auto off = eval_newton(big, Rat(1, 2), 50, 1e6);
    ok = ok && off.verdict == NewtonVerdict::diverging && off.max_growth > 1e6;
    criterion(5, "newton map of exp: lattice values (1+ka)^n exact, off-lattice divergence", ok,
              "n <= 20 exact; growth threshold 1e6 by term 50");
}

void c06_ho_forward() {
    const auto rep = ho_forward_solution(30, Rat(1));
    const bool ok = rep.difference_eq_exact && rep.extension_a.difference_eq_exact &&
                    rep.extension_b.difference_eq_exact && rep.extensions_agree_nonneg &&
                    rep.extensions_differ_negative && rep.diverging_at_half;
    criterion(6, "forward-difference oscillator: terminating series exact, 2-parameter extension",
              ok, "rational arithmetic, n <= 30");
}

void c07_lie_checks() {
    const auto so3 = verify_so3(build_nd_ops(LatticeSpecND::symbolic(3), NdVariant::forward_basic),
                                5, 7);
    bool ok = so3.closed && so3.annihilates_radial_invariant;

    const auto rep = poincare_rep(NdVariant::central_symmetric, Rat(1));
    const auto preport = verify_poincare(rep, 4, 6);
    ok = ok && preport.closed && preport.casimir_central;

    ok = ok && dirac_factorization_check(GammaSet::dirac_basis(), NdVariant::central_symmetric,
                                         Rat(1), 6);

    const auto spec3 = LatticeSpecND::with_numeric({Rat(1), Rat(1), Rat(1)});
    ok = ok && doubling_count(spec3, false).count == 8;
    ok = ok && doubling_count(spec3, true).count == 16;
    criterion(7, "lie checks: so(3) deg<=5, poincare+casimir deg<=4, dirac factorization, doubling",
              ok, "exact; doubling 8 and 16");
}

void c08_lattice_spheres() {
    const auto spec = LatticeSpecND::with_numeric({Rat(1), Rat(1), Rat(1)});
    const auto p0 = lattice_sphere(spec, Rat(0), NdVariant::forward_basic, 4);
    const auto p2 = lattice_sphere(spec, Rat(2), NdVariant::forward_basic, 4);
    const auto p1 = lattice_sphere(spec, Rat(1), NdVariant::forward_basic, 4);
    bool ok = p0.size() == 8 && p2.size() == 24 && p1.empty();
    const auto s0 = sphere_symmetries_check(p0, spec, NdVariant::forward_basic);
    const auto s2 = sphere_symmetries_check(p2, spec, NdVariant::forward_basic);
    ok = ok && s0.closed_under_swaps && s0.closed_under_reflections;
    ok = ok && s2.closed_under_swaps && s2.closed_under_reflections;
    criterion(8, "lattice spheres a=(1,1,1): |c=0|=8, |c=2|=24, |c=1|=0 with symmetry closure", ok);
}

void c09_qp_inverse() {
    bool ok = true;
    double worst = 0;
    for (int N = 2; N <= 64; ++N) {
        if (qp_invertible(N)) {
            ok = ok && qp_inverse_exact_identity(N);
            const PeriodicLattice lat{N, 1.0, false};
            const auto mats = build_matrices(LatticeDesc(lat));
            const double err = (qp_inverse_closed_form(lat) * mats.Qp -
                                Eigen::MatrixXd::Identity(N, N))
                                   .cwiseAbs()
                                   .maxCoeff();
            worst = std::max(worst, err);
            ok = ok && err < 1e-12;
        } else {
            const auto mats = build_matrices(LatticeDesc(PeriodicLattice{N, 1.0, false}));
            Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
            for (int j = 0; j < N; j += 2) v(j) = (j % 4 == 0) ? 1.0 : -1.0;
            ok = ok && (mats.Qp * v).cwiseAbs().maxCoeff() == 0.0;  // exact null vector
        }
    }
    std::ostringstream d;
    d << "max error " << std::scientific << std::setprecision(2) << worst
      << "; singular N=2m (m even) certified by exact null vector";
    criterion(9, "periodic Q'^-1 closed forms for all valid N <= 64, exact + dense", ok, d.str());
}

void c10_dispersion() {
    const auto rep = dispersion_check(PeriodicLattice{101, 1.0, false});
    bool ok = rep.max_abs_error < 1e-12 && rep.bound_respected;
    const TruncatedLattice lat{201, 1.0};
    const auto ef = momentum_eigenfunction(1.0 / std::sqrt(2.0), LatticeDesc(lat));
    ok = ok && ef.residual < 1e-12;
    const auto ef0 = momentum_eigenfunction(0.0, LatticeDesc(lat));
    ok = ok && ef0.residual < 1e-12;
    std::ostringstream d;
    d << "spectrum err " << std::scientific << std::setprecision(2) << rep.max_abs_error
      << ", eigenfunction residual " << ef.residual;
    criterion(10, "dispersion on N=101: spectrum sin(a k)/a to 1e-12, bound 1/a, arcsin modes",
              ok, d.str());
}

void c11_xhat_spectrum() {
    const TruncatedLattice lat{401, 1.0};
    bool ok = true;
    std::ostringstream d;
    try {
        const auto rep = xhat_eigenfunctions(ExtensionParams{0.5, 0.25}, lat, -2, 2);
        ok = rep.max_residual < 1e-6 && rep.max_tail_fraction < 5e-3;
        for (const auto& p : rep.pairs) {
            const double alpha = p.branch == 1 ? 0.5 : 0.25;
            ok = ok && std::abs(p.eigenvalue - (alpha + p.n) * M_PI * lat.a) < 1e-12;
        }
        // same-branch spacing pi a within 1e-6
        for (const auto& p : rep.pairs)
            for (const auto& q : rep.pairs)
                if (p.branch == q.branch && q.n == p.n + 1)
                    ok = ok && std::abs((q.eigenvalue - p.eigenvalue) - M_PI * lat.a) < 1e-6;
        d << "max residual " << std::scientific << std::setprecision(2) << rep.max_residual
          << ", max tail " << rep.max_tail_fraction << ", dense 2nd gap "
          << std::fixed << std::setprecision(6) << rep.dense_second_gap_median;
    } catch (const std::exception& e) {
        ok = false;
        d << e.what();
    }
    criterion(11, "xhat extension spectrum: pi*a ladders, residual < 1e-6, decaying tails", ok,
              d.str());
}

void c12_spectrum_doubling() {
    bool ok = true;
    std::ostringstream d;
    try {
        const auto rep = oscillator_spectrum(PeriodicLattice{454, 1.0 / 15.0, true}, 5);
        ok = rep.paired && rep.max_pair_splitting < 1e-6 && rep.max_mean_vs_oracle < 1e-3;
        for (int n = 0; n <= 3; ++n)
            ok = ok && std::abs(rep.oracle[static_cast<size_t>(n)] - (n + 0.5)) < 1e-3;
        d << "splitting " << std::scientific << std::setprecision(2) << rep.max_pair_splitting
          << ", mean vs oracle " << rep.max_mean_vs_oracle;
    } catch (const std::exception& e) {
        ok = false;
        d << e.what();
    }
    criterion(12, "spectrum doubling: lowest 5 pairs, splitting < 1e-6, means vs p-space oracle",
              ok, d.str());
}

void c13_ground_state() {
    bool ok = true;
    std::ostringstream d;
    try {
        const auto rep = ground_state_pspace(0.25, TruncatedLattice{801, 0.1}, 32);
        ok = rep.residual < 1e-8 && rep.boundary_violation < 1e-10;
        const double viol = creation_domain_violation(0.0, 0.5);
        ok = ok && viol > 1e-3 && rep.creation_violation > 0;
        d << "residual " << std::scientific << std::setprecision(2) << rep.residual
          << ", creation violation at a=0.5: " << std::fixed << std::setprecision(4) << viol;
    } catch (const std::exception& e) {
        ok = false;
        d << e.what();
    }
    criterion(13, "ground state: annihilation residual < 1e-8 (kappa = i pi a alpha), creation > 1e-3",
              ok, d.str());
}

void c14_finite_field() {
    bool ok = true;
    for (const std::int64_t p : {2, 3, 5, 7}) ok = ok && finite_field_rep(p).ccr_holds;
    const auto rep3 = finite_field_rep(3);
    ModMatrix x(3, 3), q(3, 3);
    x << 0, 0, 0, 0, 1, 0, 0, 0, 2;
    q << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    ok = ok && rep3.x == x && rep3.q == q;
    criterion(14, "finite field: [Q, xhat] = I mod p for p in {2,3,5,7}, p=3 matrices pinned", ok);
}

void c15_evolution() {
    bool ok = true;
    std::ostringstream d;
    try {
        const PeriodicLattice lat{54, 0.25, true};
        const auto h = LatticeMatrix::tag(
            oscillator_xhat_form(lat).cast<std::complex<double>>().eval(), LatticeDesc(lat), 1e-10);
        std::vector<double> ts;
        for (int i = 0; i <= 1000; ++i) ts.push_back(0.01 * i);
        const auto traj =
            evolve(h, WaveState{gaussian_packet(LatticeDesc(lat), 0.0, 1.0, 0.5), 0.0}, ts);
        ok = traj.max_norm_drift < 1e-10 && traj.max_energy_drift < 1e-8;

        // Operator-string identity: exact at the operator level (zero
        // tolerance), and as matrices the two assemblies agree to 1e-10
        // once the exact rank-2 seam (ring winding) terms are accounted.
        const auto qc = make_delta(DeltaKind::central);
        const auto xh = symmetric_xhat(qc);
        const auto w = invert_series(pincherle(qc));
        const auto x_noo = NormalOrderedOp::coordinate(1, 0);
        NormalOrderedOp rhs =
            NormalOrderedOp::from_series(w.pow(2)) *
            (x_noo * x_noo -
             NormalOrderedOp::constant(1, SpacingScalar::monomial(GaussRat(Rat(1, 2)), 0, 2)));
        rhs += (NormalOrderedOp::from_series(w.pow(3) * qc) * x_noo)
                   .scaled(SpacingScalar::monomial(GaussRat(2), 0, 2));
        rhs += NormalOrderedOp::from_series(w.pow(4) * qc.pow(2))
                   .scaled(SpacingScalar::monomial(GaussRat(Rat(5, 4)), 0, 4));
        ok = ok && (xh * xh).equal_to_order(rhs, 8);

        const auto agreement = string_agreement_report(lat);
        ok = ok && agreement.seam_explained && agreement.explained_residual < 1e-10;
        d << "norm drift " << std::scientific << std::setprecision(2) << traj.max_norm_drift
          << ", energy drift " << traj.max_energy_drift << "; string identity exact, seam residual "
          << agreement.explained_residual << " (raw matrix deviation "
          << agreement.matrix_deviation << ", reported)";
    } catch (const std::exception& e) {
        ok = false;
        d << e.what();
    }
    criterion(15, "evolution: norm 1e-10 / energy 1e-8 over 1000 steps; operator string identity",
              ok, d.str());
}

}  // namespace

int main() {
    std::cout << "acceptance criteria\n===================" << std::endl;
    c01_exact_ccr();
    c02_basic_closed_forms();
    c03_binomial_and_sheffer();
    c04_star_product();
    c05_newton_exp();
    c06_ho_forward();
    c07_lie_checks();
    c08_lattice_spheres();
    c09_qp_inverse();
    c10_dispersion();
    c11_xhat_spectrum();
    c12_spectrum_doubling();
    c13_ground_state();
    c14_finite_field();
    c15_evolution();
    std::cout << "===================\n"
              << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " failed")
              << std::endl;
    return g_failures;
}
