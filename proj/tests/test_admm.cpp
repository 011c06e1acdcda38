#include <doctest.h>

#include "isomdp/admm.hpp"
#include "isomdp/generator.hpp"

using namespace isomdp;

namespace {

StandardFormLp tiny_lp(int D, int M) {
    StandardFormLp lp;
    lp.n_decision = D;
    lp.n_slack = 0;
    lp.q = Eigen::VectorXd::Zero(D);
    lp.b = Eigen::VectorXd::Zero(M);
    lp.A.resize(M, D);
    return lp;
}

} // namespace

TEST_CASE("admm_setup") {
    SUBCASE("2x2 KKT system factors") {
        auto lp = tiny_lp(1, 1);
        lp.A.insert(0, 0) = 1.0;
        lp.A.makeCompressed();
        lp.b[0] = 1.0;
        auto st = admm_setup(lp, 1.0);
        CHECK(st.alpha.size() == 1);
        CHECK(st.alpha[0] == 0.0);
        CHECK(st.z[0] == 0.0);
        CHECK(st.eta[0] == 0.0);
    }
    SUBCASE("machine-replacement LP at rho = 30") {
        auto lp = build_lp(machine_replacement_model(0.3, 1.0, 0.5, 2));
        auto st = admm_setup(lp, 30.0);
        CHECK(st.alpha.isZero());
        CHECK(st.z.isZero());
        CHECK(st.eta.isZero());
        CHECK(st.rho == 30.0);
    }
    SUBCASE("duplicated row is singular") {
        auto lp = tiny_lp(1, 2);
        lp.A.insert(0, 0) = 1.0;
        lp.A.insert(1, 0) = 1.0;
        lp.A.makeCompressed();
        lp.b = Eigen::VectorXd::Ones(2);
        CHECK_THROWS_AS(admm_setup(lp, 1.0), SingularSystem);
    }
    SUBCASE("nonpositive rho rejected") {
        auto lp = tiny_lp(1, 1);
        lp.A.insert(0, 0) = 1.0;
        lp.A.makeCompressed();
        CHECK_THROWS_AS(admm_setup(lp, 0.0), ConfigError);
    }
}

TEST_CASE("admm_step") {
    SUBCASE("zero problem has a zero fixed point") {
        auto lp = tiny_lp(2, 1);
        lp.A.insert(0, 0) = 1.0;
        lp.A.insert(0, 1) = 1.0;
        lp.A.makeCompressed();
        auto st = admm_setup(lp, 2.0);
        for (int i = 0; i < 3; ++i) admm_step(st, lp);
        CHECK(st.alpha.isZero(1e-14));
        CHECK(st.z.isZero(1e-14));
        CHECK(st.eta.isZero(1e-14));
    }
    SUBCASE("min a s.t. a = 1 converges to 1") {
        auto lp = tiny_lp(1, 1);
        lp.A.insert(0, 0) = 1.0;
        lp.A.makeCompressed();
        lp.b[0] = 1.0;
        lp.q[0] = 1.0;
        auto st = admm_setup(lp, 1.0);

        // The equality block pins alpha = 1 from the first solve; by hand,
        // z = {alpha + eta}_+ = 1 and eta returns to 0 every iteration.
        admm_step(st, lp);
        CHECK(st.alpha[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(st.z[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(st.eta[0] == doctest::Approx(0.0).epsilon(1e-12));
        for (int i = 0; i < 2; ++i) admm_step(st, lp);
        CHECK(st.alpha[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(primal_residual(st) < 1e-12);
    }
    SUBCASE("equality feasibility and z >= 0 after every step") {
        auto m = machine_replacement_model(0.2, 1.5, 0.4, 3);
        auto lp = build_lp(m);
        for (double rho : {0.5, 5.0, 50.0}) {
            auto st = admm_setup(lp, rho);
            for (int i = 0; i < 200; ++i) {
                admm_step(st, lp);
                CHECK(equality_residual(st, lp) <= 1e-8);
                CHECK(st.z.minCoeff() >= 0.0);
            }
        }
    }
    SUBCASE("objective converges to the DP optimum") {
        auto m = machine_replacement_model(0.3, 1.0, 0.5, 2);
        const double jstar = dp_solve(m).optimal_cost;
        auto lp = build_lp(m);
        for (double rho : {1.0, 5.0, 30.0}) {
            auto st = admm_setup(lp, rho);
            for (int i = 0; i < 4000; ++i) admm_step(st, lp);
            CHECK(primal_residual(st) < 1e-6);
            CHECK(lp.q.dot(st.z) == doctest::Approx(jstar).epsilon(1e-4));
        }
    }
}

TEST_CASE("primal_residual") {
    auto lp = tiny_lp(2, 1);
    lp.A.insert(0, 0) = 1.0;
    lp.A.makeCompressed();
    auto st = admm_setup(lp, 1.0);

    st.alpha = Eigen::Vector2d(1.0, -0.5);
    st.z = Eigen::Vector2d(1.0, 0.0);
    CHECK(primal_residual(st) == 0.5);

    st.z = st.alpha;
    CHECK(primal_residual(st) == 0.0);
}

TEST_CASE("iterates are deterministic") {
    GeneratorSpec spec{.X = 3, .U = 2, .N = 4, .seed = 77};
    auto m = random_monotone_mdp(spec);
    auto lp = build_lp(m);

    auto run = [&] {
        auto st = admm_setup(lp, 10.0);
        std::vector<double> res;
        for (int i = 0; i < 50; ++i) {
            admm_step(st, lp);
            res.push_back(primal_residual(st));
        }
        return res;
    };
    CHECK(run() == run());
}
