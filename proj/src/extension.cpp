#include "umbra/extension.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace umbra {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    static std::mutex mutex;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<double> x(static_cast<size_t>(n)), w(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            // Newton iteration from the Chebyshev estimate.
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = t;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double step = p1 / dp;
                t -= step;
                if (std::abs(step) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[static_cast<size_t>(i)] = t;
            w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        it = cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first;
    }
    nodes = it->second.first;
    weights = it->second.second;
}

namespace {

/// Appends panels covering [lo, hi], refining geometrically toward
/// singular endpoints.
void add_piece(std::vector<std::pair<double, double>>& panels, double lo, double hi,
               bool singular_lo, bool singular_hi, const QuadratureSpec& spec) {
    const double width = hi - lo;
    const int base = std::max(spec.base_panels, 2);
    const double h = width / base;
    double left = lo, right = hi;
    if (singular_lo) {
        // Panel widths halve toward the singular end: lo + h 2^{-L}, ..., lo + h.
        double prev = lo;
        for (int l = spec.refine_levels; l >= 0; --l) {
            const double edge = lo + h * std::ldexp(1.0, -l);
            panels.emplace_back(prev, edge);
            prev = edge;
        }
        left = lo + h;
    }
    if (singular_hi) right = hi - h;
    const int inner = base - (singular_lo ? 1 : 0) - (singular_hi ? 1 : 0);
    for (int p = 0; p < inner; ++p)
        panels.emplace_back(left + p * (right - left) / inner, left + (p + 1) * (right - left) / inner);
    if (singular_hi) {
        double prev = hi - h;
        for (int l = 1; l <= spec.refine_levels; ++l) {
            const double edge = hi - h * std::ldexp(1.0, -l);
            panels.emplace_back(prev, edge);
            prev = edge;
        }
        panels.emplace_back(prev, hi);
    }
}

}  // namespace

BranchNodes branch_nodes(int branch, double a, const QuadratureSpec& spec) {
    if (branch != 1 && branch != 2) throw std::invalid_argument("branch_nodes: branch must be 1 or 2");
    const double edge = M_PI / (2.0 * a);
    std::vector<std::pair<double, double>> panels;
    if (branch == 1) {
        add_piece(panels, -edge, edge, true, true, spec);
    } else {
        add_piece(panels, -2.0 * edge, -edge, false, true, spec);
        add_piece(panels, edge, 2.0 * edge, true, false, spec);
    }
    std::vector<double> gl_x, gl_w;
    gauss_legendre(spec.nodes_per_panel, gl_x, gl_w);
    BranchNodes out;
    for (const auto& [lo, hi] : panels) {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (size_t q = 0; q < gl_x.size(); ++q) {
            out.k.push_back(mid + half * gl_x[q]);
            out.w.push_back(half * gl_w[q]);
        }
    }
    return out;
}

namespace {

/// Samples the branch eigenfunctions on the sites:
///   f_{n,b}(x) = (1/2) sqrt(a/pi) int sqrt|cos(ak)|
///                exp[-i (alpha_b + n) pi sin(ak) + i k x] dk.
/// Returns the sites x modes matrix; modes are (branch, n) pairs flattened.
Eigen::MatrixXcd sample_modes(const TruncatedLattice& lat,
                              const std::vector<std::pair<int, int>>& modes,  // (branch, n)
                              double alpha1, double alpha2, const QuadratureSpec& spec) {
    const std::vector<double> sites = lat.sites();
    const auto n_sites = static_cast<Eigen::Index>(sites.size());
    const auto n_modes = static_cast<Eigen::Index>(modes.size());

    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(n_sites, n_modes);
    for (int branch = 1; branch <= 2; ++branch) {
        std::vector<Eigen::Index> cols;
        for (Eigen::Index m = 0; m < n_modes; ++m)
            if (modes[static_cast<size_t>(m)].first == branch) cols.push_back(m);
        if (cols.empty()) continue;
        const double alpha = branch == 1 ? alpha1 : alpha2;
        const BranchNodes bn = branch_nodes(branch, lat.a, spec);
        const auto n_nodes = static_cast<Eigen::Index>(bn.k.size());

        Eigen::MatrixXcd p(static_cast<Eigen::Index>(cols.size()), n_nodes);
        Eigen::MatrixXcd e(n_nodes, n_sites);
        for (Eigen::Index q = 0; q < n_nodes; ++q) {
            const double k = bn.k[static_cast<size_t>(q)];
            const double base = 0.5 * std::sqrt(lat.a / M_PI) * bn.w[static_cast<size_t>(q)] *
                                std::sqrt(std::abs(std::cos(lat.a * k)));
            const double s = std::sin(lat.a * k);
            for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(cols.size()); ++c) {
                const int n = modes[static_cast<size_t>(cols[static_cast<size_t>(c)])].second;
                p(c, q) = base * std::exp(-kI * ((alpha + n) * M_PI * s));
            }
            for (Eigen::Index j = 0; j < n_sites; ++j)
                e(q, j) = std::exp(kI * (k * sites[static_cast<size_t>(j)]));
        }
        const Eigen::MatrixXcd f = (p * e).transpose();  // sites x branch-modes
        for (size_t c = 0; c < cols.size(); ++c) total.col(cols[c]) = f.col(static_cast<Eigen::Index>(c));
    }
    return total;
}

/// Residual of (Q' X + (a^2/2) Q) f = mu Q'^2 f over interior rows,
/// normalized by max(1, |mu|) ||f||.
double local_form_residual(const Eigen::VectorXcd& f, double mu, const BuiltMatrices& mats,
                           double a) {
    const Eigen::VectorXcd lhs = mats.Qp * (mats.X * f) + (a * a / 2.0) * (mats.Qc * f);
    const Eigen::VectorXcd rhs = mu * (mats.Qp * (mats.Qp * f));
    const auto n = f.size();
    double acc = 0.0;
    for (Eigen::Index j = 2; j + 2 < n; ++j) acc += std::norm(lhs(j) - rhs(j));
    return std::sqrt(acc) / (std::max(1.0, std::abs(mu)) * f.norm());
}

}  // namespace

XhatSpectrumReport xhat_eigenfunctions(const ExtensionParams& params, const TruncatedLattice& lat,
                                       int n_lo, int n_hi, const QuadratureSpec& spec,
                                       double tail_tol, int dense_sites) {
    if (params.alpha1 < 0 || params.alpha1 >= 1 || params.alpha2 < 0 || params.alpha2 >= 1)
        throw std::invalid_argument("xhat_eigenfunctions: alpha must lie in [0,1)");
    if (lat.N % 2 == 0) throw std::invalid_argument("xhat_eigenfunctions: window N must be odd");

    std::vector<std::pair<int, int>> modes;
    for (int branch = 1; branch <= 2; ++branch)
        for (int n = n_lo; n <= n_hi; ++n) modes.emplace_back(branch, n);
    const Eigen::MatrixXcd f =
        sample_modes(lat, modes, params.alpha1, params.alpha2, spec);
    const BuiltMatrices mats = build_matrices(LatticeDesc(lat));

    XhatSpectrumReport rep;
    rep.spacing = M_PI * lat.a;
    for (size_t m = 0; m < modes.size(); ++m) {
        XhatEigenpair pair;
        pair.branch = modes[m].first;
        pair.n = modes[m].second;
        const double alpha = pair.branch == 1 ? params.alpha1 : params.alpha2;
        pair.eigenvalue = (alpha + pair.n) * M_PI * lat.a;
        pair.f = f.col(static_cast<Eigen::Index>(m));
        pair.residual = local_form_residual(pair.f, pair.eigenvalue, mats, lat.a);
        const double peak = pair.f.cwiseAbs().maxCoeff();
        pair.tail_fraction =
            std::max(std::abs(pair.f(0)), std::abs(pair.f(pair.f.size() - 1))) / peak;
        rep.max_residual = std::max(rep.max_residual, pair.residual);
        rep.max_tail_fraction = std::max(rep.max_tail_fraction, pair.tail_fraction);
        rep.pairs.push_back(std::move(pair));
    }
    if (rep.max_tail_fraction > tail_tol)
        throw std::domain_error("xhat_eigenfunctions: non-decaying tails, window too small");

    // Dense periodic evidence: second gaps of the sorted xhat spectrum.
    if (dense_sites >= 6) {
        int N = dense_sites;
        if (!(N % 2 == 0 && (N / 2) % 2 == 1)) N = 2 * (dense_sites / 4 * 2 + 1);
        PeriodicLattice plat{N, lat.a, true};
        const BuiltMatrices pm = build_matrices(LatticeDesc(plat));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(*pm.Xhat, Eigen::EigenvaluesOnly);
        rep.dense_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
        std::vector<double> gaps;
        for (int j = N / 4; j + 2 < 3 * N / 4; ++j)
            gaps.push_back(rep.dense_eigenvalues[static_cast<size_t>(j + 2)] -
                           rep.dense_eigenvalues[static_cast<size_t>(j)]);
        std::sort(gaps.begin(), gaps.end());
        rep.dense_second_gap_median = gaps.empty() ? 0.0 : gaps[gaps.size() / 2];
    }
    return rep;
}

XhatAlphaAction apply_xhat_alpha(double alpha, const TruncatedLattice& lat,
                                 const Eigen::VectorXcd& psi, int n_modes,
                                 const QuadratureSpec& spec) {
    std::vector<std::pair<int, int>> modes;
    Eigen::VectorXd mu(4 * n_modes + 2);
    Eigen::Index idx = 0;
    for (int branch = 1; branch <= 2; ++branch)
        for (int n = -n_modes; n <= n_modes; ++n) {
            modes.emplace_back(branch, n);
            mu(idx++) = (alpha + n) * M_PI * lat.a;
        }
    const Eigen::MatrixXcd f = sample_modes(lat, modes, alpha, alpha, spec);
    const Eigen::MatrixXcd gram = f.adjoint() * f;
    const Eigen::VectorXcd c = gram.ldlt().solve(f.adjoint() * psi);
    XhatAlphaAction out;
    out.fit_residual = (psi - f * c).norm() / psi.norm();
    out.result = f * mu.cast<std::complex<double>>().asDiagonal() * c;
    return out;
}

GroundStateReport ground_state_pspace(double alpha, const TruncatedLattice& lat, int n_modes,
                                      const QuadratureSpec& spec) {
    if (alpha < 0 || alpha >= 1)
        throw std::invalid_argument("ground_state_pspace: alpha must lie in [0,1)");
    GroundStateReport rep;
    const double a = lat.a;
    rep.kappa = kI * (M_PI * a * alpha);

    // psi(x) = (1/sqrt(2 pi)) int sqrt|cos(ak)| chi0(sin(ak)/a) e^{ikx} dk
    const std::vector<double> sites = lat.sites();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sites.size()));
    for (int branch = 1; branch <= 2; ++branch) {
        const BranchNodes bn = branch_nodes(branch, a, spec);
        for (size_t q = 0; q < bn.k.size(); ++q) {
            const double k = bn.k[q];
            const double p = std::sin(a * k) / a;
            const std::complex<double> chi = std::exp(rep.kappa * p - 0.5 * p * p);
            const std::complex<double> base = bn.w[q] / std::sqrt(2.0 * M_PI) *
                                              std::sqrt(std::abs(std::cos(a * k))) * chi;
            for (size_t j = 0; j < sites.size(); ++j)
                psi(static_cast<Eigen::Index>(j)) += base * std::exp(kI * (k * sites[j]));
        }
    }
    rep.psi = psi;
    if (psi.norm() == 0) throw std::domain_error("ground_state_pspace: zero state");

    const XhatAlphaAction xhat = apply_xhat_alpha(alpha, lat, psi, n_modes, spec);
    rep.fit_residual = xhat.fit_residual;
    const BuiltMatrices mats = build_matrices(LatticeDesc(lat));
    const Eigen::VectorXcd lhs = -kI * (mats.Qc * psi + xhat.result);
    double acc = 0.0;
    for (Eigen::Index j = 1; j + 1 < psi.size(); ++j)
        acc += std::norm(lhs(j) - rep.kappa * psi(j));
    rep.residual = std::sqrt(acc) / psi.norm();

    const std::complex<double> chi_hi = std::exp(rep.kappa / a - 0.5 / (a * a));
    const std::complex<double> chi_lo = std::exp(-rep.kappa / a - 0.5 / (a * a));
    const std::complex<double> phase = std::exp(2.0 * M_PI * kI * alpha);
    rep.boundary_violation = std::abs(chi_hi - phase * chi_lo);
    rep.creation_violation = creation_domain_violation(alpha, a);
    return rep;
}

double creation_domain_violation(double alpha, double a) {
    const std::complex<double> kappa = kI * (M_PI * a * alpha);
    const std::complex<double> phase = std::exp(2.0 * M_PI * kI * alpha);
    const double L = 1.0 / a;
    const std::complex<double> top = L * std::exp(kappa * L - 0.5 * L * L);
    const std::complex<double> bot = -L * std::exp(-kappa * L - 0.5 * L * L);
    // ||chi0||_{L^2[-1/a,1/a]} by Gauss-Legendre on p.
    std::vector<double> x, w;
    gauss_legendre(64, x, w);
    double norm2 = 0.0;
    for (size_t q = 0; q < x.size(); ++q) {
        const double p = L * x[q];
        norm2 += L * w[q] * std::exp(-p * p);  // |chi0|^2, kappa imaginary
    }
    return std::abs(top - phase * bot) / std::sqrt(norm2);
}

}  // namespace umbra
