#include "isomdp/lp.hpp"

#include <string>
#include <vector>

namespace isomdp {

int flat_index(int x, int u, int k, int X, int U, int N) {
    if (x < 1 || x > X || u < 1 || u > U || k < 0 || k > N)
        throw IndexOutOfRange("flat_index(" + std::to_string(x) + ", " +
                              std::to_string(u) + ", " + std::to_string(k) +
                              ") outside [1.." + std::to_string(X) + "]x[1.." +
                              std::to_string(U) + "]x[0.." + std::to_string(N) + "]");
    return k * X * U + (x - 1) * U + (u - 1);
}

StandardFormLp build_lp(const MdpModel& model) {
    model.validate();
    const int X = model.X, U = model.U, N = model.N;
    const int L = model.num_constraints();
    const int n_dec = X * U * (N + 1);
    const int D = n_dec + L;
    const int M = X + X * N + L;

    StandardFormLp lp;
    lp.X = X;
    lp.U = U;
    lp.N = N;
    lp.n_decision = n_dec;
    lp.n_slack = L;

    lp.q = Eigen::VectorXd::Zero(D);
    for (int k = 0; k < N; ++k)
        for (int x = 1; x <= X; ++x)
            for (int u = 1; u <= U; ++u)
                lp.q[flat_index(x, u, k, X, U, N)] = model.stage_cost(k, x - 1, u - 1);
    for (int x = 1; x <= X; ++x)
        for (int u = 1; u <= U; ++u)
            lp.q[flat_index(x, u, N, X, U, N)] = model.terminal_cost(x - 1);

    lp.b = Eigen::VectorXd::Zero(M);
    lp.b[model.x0 - 1] = 1.0;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(X) * U +
                 static_cast<std::size_t>(N) * X * U * (X + 1) +
                 static_cast<std::size_t>(L) * (n_dec + 1));

    // Initial-distribution rows: sum_u pi(x, u, 0) = 1{x = x0}.
    for (int x = 1; x <= X; ++x)
        for (int u = 1; u <= U; ++u)
            trip.emplace_back(x - 1, flat_index(x, u, 0, X, U, N), 1.0);

    // Flow rows for k = 1..N:
    // sum_u pi(j,u,k) - sum_i sum_u P_ij(u,k-1) pi(i,u,k-1) = 0.
    for (int k = 1; k <= N; ++k)
        for (int j = 1; j <= X; ++j) {
            const int row = X + (k - 1) * X + (j - 1);
            for (int u = 1; u <= U; ++u)
                trip.emplace_back(row, flat_index(j, u, k, X, U, N), 1.0);
            for (int i = 1; i <= X; ++i)
                for (int u = 1; u <= U; ++u) {
                    const double pij = model.transition(k - 1, u - 1, i - 1, j - 1);
                    if (pij != 0.0)
                        trip.emplace_back(row, flat_index(i, u, k - 1, X, U, N), -pij);
                }
        }

    // Average-type constraint rows: sum beta_l . pi + s_l = gamma_l.
    for (int l = 0; l < L; ++l) {
        const int row = X + X * N + l;
        const Constraint& cons = model.constraints[l];
        for (int k = 0; k <= N; ++k)
            for (int x = 1; x <= X; ++x)
                for (int u = 1; u <= U; ++u) {
                    const double beta =
                        cons.beta[(static_cast<std::size_t>(k) * X + (x - 1)) * U +
                                  (u - 1)];
                    if (beta != 0.0)
                        trip.emplace_back(row, flat_index(x, u, k, X, U, N), beta);
                }
        trip.emplace_back(row, n_dec + l, 1.0);
        lp.b[row] = cons.gamma;
    }

    lp.A.resize(M, D);
    lp.A.setFromTriplets(trip.begin(), trip.end());
    lp.A.makeCompressed();
    return lp;
}

Eigen::VectorXd vectorize(const OccupationMeasure& pi) {
    const int X = pi.X, U = pi.U, N = pi.N;
    Eigen::VectorXd alpha(static_cast<Eigen::Index>(X) * U * (N + 1));
    for (int k = 0; k <= N; ++k)
        for (int x = 1; x <= X; ++x)
            for (int u = 1; u <= U; ++u)
                alpha[flat_index(x, u, k, X, U, N)] = pi(k, x - 1, u - 1);
    return alpha;
}

OccupationMeasure devectorize(const Eigen::VectorXd& alpha, const MdpModel& model) {
    const int X = model.X, U = model.U, N = model.N;
    const int n_dec = X * U * (N + 1);
    if (alpha.size() < n_dec)
        throw DimensionMismatch("alpha has " + std::to_string(alpha.size()) +
                                " entries, expected at least " +
                                std::to_string(n_dec));
    OccupationMeasure pi = OccupationMeasure::zeros(X, U, N);
    for (int k = 0; k <= N; ++k)
        for (int x = 1; x <= X; ++x)
            for (int u = 1; u <= U; ++u)
                pi(k, x - 1, u - 1) = alpha[flat_index(x, u, k, X, U, N)];
    return pi;
}

} // namespace isomdp
