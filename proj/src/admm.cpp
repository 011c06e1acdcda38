#include "isomdp/admm.hpp"

#include <cmath>
#include <vector>

#include <Eigen/SparseLU>

#include "isomdp/errors.hpp"

namespace isomdp {

class KktFactorization {
public:
    KktFactorization(const StandardFormLp& lp, double rho) {
        const int D = lp.cols();
        const int M = lp.rows();
        const int n = D + M;

        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(D) + 2 * lp.A.nonZeros());
        for (int i = 0; i < D; ++i) trip.emplace_back(i, i, rho);
        for (int col = 0; col < lp.A.outerSize(); ++col)
            for (Eigen::SparseMatrix<double>::InnerIterator it(lp.A, col); it; ++it) {
                trip.emplace_back(D + static_cast<int>(it.row()),
                                  static_cast<int>(it.col()), it.value());
                trip.emplace_back(static_cast<int>(it.col()),
                                  D + static_cast<int>(it.row()), it.value());
            }
        kkt_.resize(n, n);
        kkt_.setFromTriplets(trip.begin(), trip.end());
        kkt_.makeCompressed();

        solver_.compute(kkt_);
        if (solver_.info() != Eigen::Success)
            throw SingularSystem("KKT factorization failed; constraint matrix is "
                                 "rank-deficient");
    }

    /// Solves kkt * x = rhs with at most one step of iterative refinement.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        Eigen::VectorXd x = solver_.solve(rhs);
        Eigen::VectorXd r = rhs - kkt_ * x;
        if (r.lpNorm<Eigen::Infinity>() > 1e-10) x += solver_.solve(r);
        return x;
    }

private:
    Eigen::SparseMatrix<double> kkt_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver_;
};

AdmmState admm_setup(const StandardFormLp& lp, double rho) {
    if (!(rho > 0.0))
        throw ConfigError("ADMM penalty rho must be positive, got " +
                          std::to_string(rho));
    AdmmState st;
    st.rho = rho;
    st.alpha = Eigen::VectorXd::Zero(lp.cols());
    st.z = Eigen::VectorXd::Zero(lp.cols());
    st.eta = Eigen::VectorXd::Zero(lp.cols());
    st.kkt = std::make_shared<const KktFactorization>(lp, rho);
    return st;
}

void admm_step(AdmmState& state, const StandardFormLp& lp) {
    const int D = lp.cols();
    const int M = lp.rows();

    Eigen::VectorXd rhs(D + M);
    rhs.head(D) = state.rho * (state.z - state.eta) - lp.q;
    rhs.tail(M) = lp.b;

    const Eigen::VectorXd sol = state.kkt->solve(rhs);
    state.alpha = sol.head(D);
    state.z = (state.alpha + state.eta).cwiseMax(0.0);
    state.eta += state.alpha - state.z;
}

double primal_residual(const AdmmState& state) {
    return (state.alpha - state.z).lpNorm<Eigen::Infinity>();
}

double equality_residual(const AdmmState& state, const StandardFormLp& lp) {
    return (lp.A * state.alpha - lp.b).lpNorm<Eigen::Infinity>();
}

} // namespace isomdp
