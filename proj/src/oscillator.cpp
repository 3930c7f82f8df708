#include "umbra/oscillator.hpp"

#include <cmath>
#include <stdexcept>

namespace umbra {

std::vector<double> pspace_oscillator_oracle(double a, int levels, int grid_points) {
    const double L = 1.0 / a;
    const int M = grid_points;
    const double h = 2.0 * L / (M + 1);
    Eigen::VectorXd diag(M), sub(M - 1);
    for (int j = 0; j < M; ++j) {
        const double p = -L + (j + 1) * h;
        diag(j) = 1.0 / (h * h) + 0.5 * p * p;
    }
    sub.setConstant(-0.5 / (h * h));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (int j = 0; j < levels && j < M; ++j) out.push_back(es.eigenvalues()(j));
    return out;
}

OscillatorReport oscillator_spectrum(const PeriodicLattice& lat, int pairs_requested,
                                     double gap_factor) {
    if (!qp_invertible(lat.N) || lat.N % 2 != 0)
        throw std::domain_error("oscillator_spectrum: need N = 2m with m odd");
    PeriodicLattice centered = lat;
    centered.centered = true;
    const BuiltMatrices mats = build_matrices(LatticeDesc(centered));

    // H = (-Qc^2 + Xhat^2)/2 is real symmetric: Qc antisymmetric, Xhat symmetric.
    const Eigen::MatrixXd H = 0.5 * (-(mats.Qc * mats.Qc) + *mats.Xhat * *mats.Xhat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);

    OscillatorReport rep;
    const int keep = std::min(lat.N, 4 * pairs_requested + 8);
    for (int j = 0; j < keep; ++j) rep.eigenvalues.push_back(es.eigenvalues()(j));
    rep.pair_id.assign(rep.eigenvalues.size(), -1);

    // Pair adjacent levels when their gap is tiny against the local spacing.
    int pid = 0;
    for (size_t j = 0; j + 1 < rep.eigenvalues.size(); ++j) {
        if (rep.pair_id[j] != -1) continue;
        const double gap = rep.eigenvalues[j + 1] - rep.eigenvalues[j];
        const double above = (j + 2 < rep.eigenvalues.size())
                                 ? rep.eigenvalues[j + 2] - rep.eigenvalues[j + 1]
                                 : 1.0;
        const double local = std::max(above, 1e-30);
        if (gap < gap_factor * local) {
            rep.pair_id[j] = rep.pair_id[j + 1] = pid;
            OscillatorPair pr;
            pr.lower_index = static_cast<int>(j);
            pr.mean = 0.5 * (rep.eigenvalues[j] + rep.eigenvalues[j + 1]);
            pr.splitting = gap;
            rep.pairs.push_back(pr);
            ++pid;
        }
    }

    rep.oracle = pspace_oscillator_oracle(lat.a, pairs_requested + 2);
    rep.paired = static_cast<int>(rep.pairs.size()) >= pairs_requested;
    for (int j = 0; j < pairs_requested && j < static_cast<int>(rep.pairs.size()); ++j) {
        rep.max_pair_splitting = std::max(rep.max_pair_splitting, rep.pairs[static_cast<size_t>(j)].splitting);
        if (j < static_cast<int>(rep.oracle.size()))
            rep.max_mean_vs_oracle =
                std::max(rep.max_mean_vs_oracle,
                         std::abs(rep.pairs[static_cast<size_t>(j)].mean - rep.oracle[static_cast<size_t>(j)]));
    }
    return rep;
}

}  // namespace umbra
