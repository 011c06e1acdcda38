#include <doctest.h>

#include "isomdp/generator.hpp"
#include "isomdp/solver.hpp"
#include "oracles.hpp"

using namespace isomdp;

TEST_CASE("random_monotone_mdp") {
    SUBCASE("trivial dimensions pass vacuously") {
        GeneratorSpec spec{.X = 1, .U = 1, .N = 1, .seed = 0};
        auto m = random_monotone_mdp(spec);
        CHECK(check_monotone_assumptions(m).all_pass());
    }
    SUBCASE("paper-scale dimensions pass the checker") {
        GeneratorSpec spec{.X = 10, .U = 3, .N = 365, .seed = 42};
        auto m = random_monotone_mdp(spec);
        CHECK_NOTHROW(m.validate());
        CHECK(check_monotone_assumptions(m).all_pass());
    }
    SUBCASE("same seed reproduces the model bit for bit") {
        GeneratorSpec spec{.X = 6, .U = 3, .N = 8, .seed = 1234567};
        auto a = random_monotone_mdp(spec);
        auto b = random_monotone_mdp(spec);
        CHECK(a.P == b.P);
        CHECK(a.c == b.c);
        CHECK(a.cN == b.cN);
        CHECK(a.x0 == b.x0);
    }
    SUBCASE("different seeds differ") {
        GeneratorSpec s1{.X = 4, .U = 2, .N = 3, .seed = 1};
        GeneratorSpec s2{.X = 4, .U = 2, .N = 3, .seed = 2};
        CHECK(random_monotone_mdp(s1).c != random_monotone_mdp(s2).c);
    }
    SUBCASE("cost scale is respected") {
        GeneratorSpec spec{.X = 3, .U = 2, .N = 2, .seed = 5, .cost_scale = 10.0};
        auto m = random_monotone_mdp(spec);
        double max_cost = 0.0;
        for (double v : m.c) max_cost = std::max(max_cost, v);
        CHECK(max_cost > 2.0);  // far above the unit-scale range
        CHECK(max_cost <= 20.0);
    }
    SUBCASE("invalid specs are rejected") {
        CHECK_THROWS_AS(random_monotone_mdp(GeneratorSpec{.X = 0, .U = 1, .N = 1}),
                        ConfigError);
        CHECK_THROWS_AS(
            random_monotone_mdp(GeneratorSpec{.X = 1, .U = 1, .N = 1, .seed = 0,
                                              .cost_scale = -1.0}),
            ConfigError);
    }
}

TEST_CASE("generated models keep the DP policy monotone") {
    // Empirical Theorem-2 property across a spread of sizes.
    int count = 0;
    for (int X : {3, 5, 8})
        for (int U : {2, 3})
            for (int N : {2, 6}) {
                GeneratorSpec spec{.X = X, .U = U, .N = N,
                                   .seed = static_cast<std::uint64_t>(count + 100)};
                auto m = random_monotone_mdp(spec);
                REQUIRE(check_monotone_assumptions(m).all_pass());
                CHECK(is_monotone(dp_solve(m).policy, 0.0));
                ++count;
            }
}

TEST_CASE("machine_replacement_model") {
    SUBCASE("transition matrices match the repair dynamics") {
        auto m = machine_replacement_model(0.3, 1.0, 0.5, 2);
        // replace: both states move to working
        CHECK(m.transition(0, 0, 0, 0) == 0.0);
        CHECK(m.transition(0, 0, 0, 1) == 1.0);
        CHECK(m.transition(0, 0, 1, 0) == 0.0);
        CHECK(m.transition(0, 0, 1, 1) == 1.0);
        // continue: broken absorbs, working breaks with probability 0.3
        CHECK(m.transition(0, 1, 0, 0) == 1.0);
        CHECK(m.transition(0, 1, 1, 0) == doctest::Approx(0.3));
        CHECK(m.transition(0, 1, 1, 1) == doctest::Approx(0.7));
    }
    SUBCASE("costs match the repair example") {
        auto m = machine_replacement_model(0.3, 1.0, 0.5, 2);
        CHECK(m.stage_cost(0, 0, 0) == 1.0); // replace while broken
        CHECK(m.stage_cost(0, 1, 0) == 1.0); // replace while working
        CHECK(m.stage_cost(0, 0, 1) == 0.5); // continue while broken
        CHECK(m.stage_cost(0, 1, 1) == 0.0); // continue while working
        CHECK(m.cN == std::vector<double>{0.0, 0.0});
        CHECK(m.x0 == 2);
    }
    SUBCASE("never replacing is optimal when machines cannot break") {
        auto m = machine_replacement_model(0.0, 1.0, 2.0, 5);
        auto dp = dp_solve(m);
        CHECK(dp.optimal_cost == 0.0);
        for (int k = 0; k < 5; ++k) CHECK(dp.policy(k, 1, 1) == 1.0);
    }
    SUBCASE("structural conditions hold across the parameter grid") {
        for (double tb : {0.0, 0.25, 0.5, 0.75, 1.0})
            for (double R : {0.0, 0.5, 1.0, 1.5, 2.0})
                for (double g : {0.0, 0.5, 1.0, 1.5, 2.0})
                    CHECK(check_monotone_assumptions(
                              machine_replacement_model(tb, R, g, 3))
                              .all_pass());
    }
    SUBCASE("invalid probability is rejected") {
        CHECK_THROWS_AS(machine_replacement_model(1.5, 1.0, 0.5, 2),
                        InvalidProbability);
        CHECK_THROWS_AS(machine_replacement_model(0.5, -1.0, 0.5, 2),
                        InvalidProbability);
    }
}

TEST_CASE("expenditure_constraint") {
    GeneratorSpec spec{.X = 3, .U = 2, .N = 3, .seed = 8};
    auto m = random_monotone_mdp(spec);
    auto cons = expenditure_constraint(m, 17, 1.1);

    CHECK(cons.beta.size() == m.policy_size());
    for (double v : cons.beta) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }

    // The unconstrained DP policy stays feasible by construction.
    auto dp = dp_solve(m);
    MdpModel constrained = m;
    constrained.constraints.push_back(cons);
    const auto pe = oracle::enumerate_paths(constrained, dp.policy);
    CHECK(pe.expenditures[0] <= cons.gamma + 1e-12);
    CHECK(pe.expenditures[0] == doctest::Approx(cons.gamma / 1.1).epsilon(1e-9));

    SUBCASE("deterministic in the seed") {
        auto again = expenditure_constraint(m, 17, 1.1);
        CHECK(again.beta == cons.beta);
        CHECK(again.gamma == cons.gamma);
    }
}
