#include "umbra/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace umbra {

std::vector<double> PeriodicLattice::sites() const {
    std::vector<double> x(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) x[static_cast<size_t>(j)] = (centered ? j - N / 2 : j) * a;
    return x;
}

std::vector<double> TruncatedLattice::sites() const {
    std::vector<double> x(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) x[static_cast<size_t>(j)] = (j - half()) * a;
    return x;
}

std::string lattice_label(const LatticeDesc& lat) {
    if (const auto* p = std::get_if<PeriodicLattice>(&lat))
        return "periodic(N=" + std::to_string(p->N) + ",a=" + std::to_string(p->a) + ")";
    const auto& t = std::get<TruncatedLattice>(lat);
    return "truncated(N=" + std::to_string(t.N) + ",a=" + std::to_string(t.a) + ")";
}

LatticeMatrix LatticeMatrix::tag(Eigen::MatrixXcd mat, const LatticeDesc& lat, double tol) {
    LatticeMatrix out;
    out.herm_deviation = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    out.hermitian = out.herm_deviation <= tol;
    out.m = std::move(mat);
    out.lattice = lattice_label(lat);
    return out;
}

bool qp_invertible(int N) {
    if (N % 2 == 1) return true;
    return (N / 2) % 2 == 1;
}

Eigen::MatrixXd shift_matrix(const LatticeDesc& lat) {
    if (const auto* p = std::get_if<PeriodicLattice>(&lat)) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p->N, p->N);
        for (int j = 0; j < p->N; ++j) s(j, (j + 1) % p->N) = 1.0;
        return s;
    }
    const auto& t = std::get<TruncatedLattice>(lat);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(t.N, t.N);
    for (int j = 0; j + 1 < t.N; ++j) s(j, j + 1) = 1.0;
    return s;
}

BuiltMatrices build_matrices(const LatticeDesc& lat) {
    BuiltMatrices out;
    const double a = std::holds_alternative<PeriodicLattice>(lat)
                         ? std::get<PeriodicLattice>(lat).a
                         : std::get<TruncatedLattice>(lat).a;
    if (a <= 0) throw std::invalid_argument("build_matrices: spacing must be positive");
    if (const auto* p = std::get_if<PeriodicLattice>(&lat); p && p->N < 2)
        throw std::invalid_argument("build_matrices: periodic lattice needs N >= 2");
    if (const auto* t = std::get_if<TruncatedLattice>(&lat); t && (t->N < 3 || t->N % 2 == 0))
        throw std::invalid_argument("build_matrices: window needs odd N >= 3");

    const Eigen::MatrixXd s = shift_matrix(lat);
    const Eigen::MatrixXd s_inv_like = s.transpose();  // S^{-1} periodic; adjoint window otherwise
    const auto n = s.rows();

    std::vector<double> sites = std::holds_alternative<PeriodicLattice>(lat)
                                    ? std::get<PeriodicLattice>(lat).sites()
                                    : std::get<TruncatedLattice>(lat).sites();
    out.X = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) out.X(j, j) = sites[static_cast<size_t>(j)];

    out.Qc = (s - s_inv_like) / (2.0 * a);
    out.Qp = (s + s_inv_like) / 2.0;
    out.qc_antisym_deviation = (out.Qc + out.Qc.transpose()).cwiseAbs().maxCoeff();
    out.shift_boundary_defect =
        (s * s.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();

    const bool invertible = std::holds_alternative<PeriodicLattice>(lat)
                                ? qp_invertible(std::get<PeriodicLattice>(lat).N)
                                : false;
    if (invertible) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(out.Qp);
        out.Qp_inv = lu.inverse();
        out.Xhat = ((out.X * *out.Qp_inv + *out.Qp_inv * out.X) / 2.0).eval();
        out.ccr_deviation = (out.Qc * *out.Xhat - *out.Xhat * out.Qc -
                             Eigen::MatrixXd::Identity(n, n))
                                .cwiseAbs()
                                .maxCoeff();
    } else if (std::holds_alternative<PeriodicLattice>(lat)) {
        out.xhat_error = "Q' singular (N=2m, m even)";
    } else {
        out.xhat_error = "Q' singular on the zero-padded window (odd N)";
    }
    return out;
}

Eigen::MatrixXd qp_inverse_closed_form(const PeriodicLattice& lat) {
    const int N = lat.N;
    if (!qp_invertible(N)) throw std::domain_error("Q' singular (N=2m, m even)");
    const std::vector<Rat> w = qp_inverse_weights(N);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, N);
    for (int shift = 0; shift < N; ++shift) {
        const double c = rat_double(w[static_cast<size_t>(shift)]);
        if (c == 0.0) continue;
        for (int j = 0; j < N; ++j) out(j, (j + shift) % N) += c;
    }
    return out;
}

std::vector<Rat> qp_inverse_weights(int N) {
    if (!qp_invertible(N)) throw std::domain_error("Q' singular (N=2m, m even)");
    std::vector<Rat> w(static_cast<size_t>(N), Rat(0));
    if (N % 2 == 0) {
        const int m = N / 2;  // m odd here
        for (int k = 0; k < m; ++k)
            w[static_cast<size_t>((2 * k + 1) % N)] += (k % 2 == 0) ? Rat(1) : Rat(-1);
    } else {
        const int h = (N - 1) / 2;
        for (int k = 0; k <= h; ++k) {
            const bool neg = (k + h) % 2 == 1;
            w[static_cast<size_t>((2 * k) % N)] += neg ? Rat(-1) : Rat(1);
        }
        for (int k = 0; k <= h - 1; ++k)
            w[static_cast<size_t>((2 * k + 1) % N)] += (k % 2 == 0) ? Rat(1) : Rat(-1);
    }
    return w;
}

bool qp_inverse_exact_identity(int N) {
    const std::vector<Rat> w = qp_inverse_weights(N);
    // Qp as circulant weights: 1/2 at shifts +1 and -1 (mod N).
    std::vector<Rat> qp(static_cast<size_t>(N), Rat(0));
    qp[1 % N] += Rat(1, 2);
    qp[static_cast<size_t>((N - 1) % N)] += Rat(1, 2);
    for (int r = 0; r < N; ++r) {
        Rat conv(0);
        for (int s = 0; s < N; ++s) {
            const int t = ((r - s) % N + N) % N;
            conv += qp[static_cast<size_t>(s)] * w[static_cast<size_t>(t)];
        }
        if (conv != (r == 0 ? Rat(1) : Rat(0))) return false;
    }
    return true;
}

DispersionReport dispersion_check(const PeriodicLattice& lat) {
    DispersionReport rep;
    const BuiltMatrices mats = build_matrices(LatticeDesc(lat));
    const Eigen::MatrixXcd p = std::complex<double>(0, -1) * mats.Qc.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p, Eigen::EigenvaluesOnly);
    rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + lat.N);

    for (int n = 0; n < lat.N; ++n)
        rep.expected.push_back(std::sin(2.0 * M_PI * n / lat.N) / lat.a);
    std::sort(rep.expected.begin(), rep.expected.end());

    rep.max_abs_error = 0.0;
    for (int j = 0; j < lat.N; ++j)
        rep.max_abs_error = std::max(
            rep.max_abs_error,
            std::abs(rep.eigenvalues[static_cast<size_t>(j)] - rep.expected[static_cast<size_t>(j)]));
    rep.spectral_radius =
        std::max(std::abs(rep.eigenvalues.front()), std::abs(rep.eigenvalues.back()));
    rep.bound = 1.0 / lat.a;
    rep.bound_respected = rep.spectral_radius <= rep.bound + 1e-12;
    return rep;
}

MomentumEigenfunction momentum_eigenfunction(double lambda, const LatticeDesc& lat) {
    const double a = std::holds_alternative<PeriodicLattice>(lat)
                         ? std::get<PeriodicLattice>(lat).a
                         : std::get<TruncatedLattice>(lat).a;
    if (std::abs(lambda * a) >= 1.0)
        throw std::domain_error("momentum_eigenfunction: |lambda a| must be < 1");
    const double theta = std::asin(lambda * a);

    const std::vector<double> sites = std::holds_alternative<PeriodicLattice>(lat)
                                          ? std::get<PeriodicLattice>(lat).sites()
                                          : std::get<TruncatedLattice>(lat).sites();
    const auto n = static_cast<Eigen::Index>(sites.size());
    MomentumEigenfunction out;
    out.f.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
        out.f(j) = std::exp(std::complex<double>(0, sites[static_cast<size_t>(j)] / a * theta));

    const BuiltMatrices mats = build_matrices(lat);
    const Eigen::VectorXcd r =
        std::complex<double>(0, -1) * (mats.Qc * out.f) - lambda * out.f;
    // Interior rows only: the window's first/last rows lack a neighbor.
    const bool window = std::holds_alternative<TruncatedLattice>(lat);
    double res = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (window && (j == 0 || j == n - 1)) continue;
        res = std::max(res, std::abs(r(j)));
    }
    out.residual = res;
    return out;
}

}  // namespace umbra
