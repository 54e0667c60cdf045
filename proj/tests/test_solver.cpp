#include <array>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ttab/mip.hpp"

using namespace ttab::mip;

namespace {

template <typename F>
std::string thrown(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string tmpdir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("ttab_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

// 12-item knapsack: maximize value under a weight budget, as minimization.
Model knapsack_model() {
    const std::array<int, 12> value{10, 7, 3, 9, 4, 8, 2, 6, 5, 11, 1, 12};
    const std::array<int, 12> weight{6, 4, 2, 5, 3, 5, 1, 4, 3, 7, 1, 8};
    Model m("knap");
    std::vector<Term> terms;
    for (int i = 0; i < 12; ++i) {
        int v = m.add_binary("item" + std::to_string(i), -value[static_cast<size_t>(i)]);
        terms.push_back({v, static_cast<double>(weight[static_cast<size_t>(i)])});
    }
    m.add_constraint("budget", terms, Sense::Le, 20.0);
    return m;
}

double knapsack_brute_force() {
    const std::array<int, 12> value{10, 7, 3, 9, 4, 8, 2, 6, 5, 11, 1, 12};
    const std::array<int, 12> weight{6, 4, 2, 5, 3, 5, 1, 4, 3, 7, 1, 8};
    double best = 0.0;
    for (int mask = 0; mask < (1 << 12); ++mask) {
        int wsum = 0, vsum = 0;
        for (int i = 0; i < 12; ++i)
            if ((mask >> i) & 1) {
                wsum += weight[static_cast<size_t>(i)];
                vsum += value[static_cast<size_t>(i)];
            }
        if (wsum <= 20) best = std::min(best, static_cast<double>(-vsum));
    }
    return best;
}

}  // namespace

TEST_CASE("propagation alone solves a forced model") {
    Model m("forced");
    int x = m.add_binary("x", 1.0);
    int y = m.add_binary("y", 1.0);
    m.add_constraint("both", {{x, 1.0}, {y, 1.0}}, Sense::Ge, 2.0);
    auto r = solve_exact(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.has_solution);
    CHECK(r.objective == doctest::Approx(2.0));
    CHECK(r.values == std::vector<double>{1.0, 1.0});
    CHECK(r.assignment.at("x") == 1.0);
    CHECK(r.proof_gap == 0.0);
    CHECK(r.nodes <= 2);
}

TEST_CASE("contradictory rows are infeasible") {
    Model m("contra");
    int x = m.add_binary("x");
    int y = m.add_binary("y");
    m.add_constraint("lo", {{x, 1.0}, {y, 1.0}}, Sense::Le, 1.0);
    m.add_constraint("hi", {{x, 1.0}, {y, 1.0}}, Sense::Ge, 2.0);
    auto r = solve_exact(m);
    CHECK(r.status == Status::Infeasible);
    CHECK_FALSE(r.has_solution);
}

TEST_CASE("knapsack agrees with exhaustive search") {
    auto r = solve_exact(knapsack_model());
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == doctest::Approx(knapsack_brute_force()));
    auto ev = evaluate(knapsack_model(), r.values);
    CHECK(ev.feasible);
    CHECK(ev.objective == doctest::Approx(r.objective));
    for (size_t i = 1; i < r.incumbent_objectives.size(); ++i)
        CHECK(r.incumbent_objectives[i] < r.incumbent_objectives[i - 1]);
}

TEST_CASE("repeat solves are bit-identical") {
    auto a = solve_exact(knapsack_model());
    auto b = solve_exact(knapsack_model());
    CHECK(a.nodes == b.nodes);
    CHECK(a.objective == b.objective);
    CHECK(a.values == b.values);
    CHECK(a.incumbent_objectives == b.incumbent_objectives);
}

TEST_CASE("integer variables and equality rows") {
    Model m("ints");
    int x = m.add_integer("x", 0, 10, 3.0);
    int y = m.add_integer("y", 0, 10, 5.0);
    m.add_constraint("mix", {{x, 2.0}, {y, 3.0}}, Sense::Eq, 12.0);
    auto r = solve_exact(m);
    REQUIRE(r.status == Status::Optimal);
    // candidates: (0,4)->20, (3,2)->19, (6,0)->18
    CHECK(r.objective == doctest::Approx(18.0));
    CHECK(r.assignment.at("x") == 6.0);
    CHECK(r.assignment.at("y") == 0.0);
}

TEST_CASE("random small models agree with exhaustive search") {
    std::mt19937 rng(20240817u);
    auto ri = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    };
    int infeasible_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = ri(3, 8);
        int rows = ri(1, 5);
        Model m("r" + std::to_string(trial));
        for (int i = 0; i < n; ++i) m.add_binary("b" + std::to_string(i), ri(-5, 5));
        for (int c = 0; c < rows; ++c) {
            std::vector<Term> terms;
            for (int i = 0; i < n; ++i) {
                int a = ri(-3, 3);
                if (a != 0) terms.push_back({i, static_cast<double>(a)});
            }
            if (terms.empty()) terms.push_back({0, 1.0});
            Sense s = std::array<Sense, 3>{Sense::Le, Sense::Ge, Sense::Eq}[static_cast<size_t>(ri(0, 2))];
            m.add_constraint("c" + std::to_string(c), terms, s, ri(-2, 6));
        }
        bool any = false;
        double best = 0.0;
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<double> x(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = (mask >> i) & 1;
            auto ev = evaluate(m, x);
            if (ev.feasible && (!any || ev.objective < best - 1e-12)) {
                any = true;
                best = ev.objective;
            }
        }
        auto r = solve_exact(m);
        if (!any) {
            CHECK(r.status == Status::Infeasible);
            ++infeasible_seen;
        } else {
            REQUIRE(r.status == Status::Optimal);
            CHECK(r.objective == doctest::Approx(best));
            CHECK(evaluate(m, r.values).feasible);
        }
    }
    CHECK(infeasible_seen > 0);
    CHECK(infeasible_seen < 60);
}

TEST_CASE("node limit aborts with a limit status") {
    auto r = solve_exact(knapsack_model(), {0.0, 2});
    CHECK(r.status == Status::Limit);
    CHECK(r.message == "node limit reached");
    CHECK(r.nodes <= 3);
}

TEST_CASE("time limit aborts with a limit status") {
    // Weak-bound model: every subtree survives until seven zeros are fixed,
    // so the search passes the 512-node time checkpoint.
    Model m("slow");
    std::vector<Term> terms;
    for (int i = 0; i < 14; ++i) terms.push_back({m.add_binary("x" + std::to_string(i), -1.0), 1.0});
    m.add_constraint("half", terms, Sense::Le, 7.0);
    auto r = solve_exact(m, {1e-9, 0});
    CHECK(r.status == Status::Limit);
    CHECK(r.message == "time limit reached");
    CHECK(r.has_solution);
    CHECK(r.objective == doctest::Approx(-7.0));
    CHECK(r.proof_gap >= 0.0);
}

TEST_CASE("unsupported variables are rejected") {
    Model m("cont");
    m.add_var("c", VarKind::Continuous, 0.0, 1.0);
    CHECK(contains(thrown([&] { solve_exact(m); }), "continuous variable"));

    Model m2("inf");
    m2.add_integer("i", 0.0, std::numeric_limits<double>::infinity());
    CHECK(contains(thrown([&] { solve_exact(m2); }), "finite bounds"));
}

TEST_CASE("external solver adapter") {
    Model m("extm");
    int x = m.add_binary("x", 1.0);
    int y = m.add_binary("y", 2.0);
    m.add_constraint("cover", {{x, 1.0}, {y, 1.0}}, Sense::Ge, 1.0);

    SUBCASE("template must mention both files") {
        CHECK(contains(thrown([&] { solve_external(m, {"solver {lp}", "."}); }),
                       "needs {lp} and {sol}"));
    }
    SUBCASE("prepared optimal solution is verified and adopted") {
        auto dir = tmpdir("ext_ok");
        std::ofstream(dir + "/prep.sol") << "x 1\ny 0\n";
        auto r = solve_external(m, {"cat {lp} > /dev/null && cp " + dir + "/prep.sol {sol}", dir});
        CHECK(r.status == Status::Optimal);
        CHECK(r.has_solution);
        CHECK(r.objective == doctest::Approx(1.0));   // recomputed, not claimed
        CHECK(r.values == std::vector<double>{1.0, 0.0});
        CHECK(std::filesystem::exists(dir + "/extm.lp"));
        CHECK(r.message.empty());
    }
    SUBCASE("partial solutions default to zero with a note") {
        auto dir = tmpdir("ext_partial");
        std::ofstream(dir + "/prep.sol") << "x 1\n";
        auto r = solve_external(m, {"cat {lp} > /dev/null && cp " + dir + "/prep.sol {sol}", dir});
        CHECK(r.status == Status::Optimal);
        CHECK(contains(r.message, "missing"));
    }
    SUBCASE("nonzero exit is an error") {
        auto dir = tmpdir("ext_fail");
        CHECK(contains(thrown([&] { solve_external(m, {"false {lp} {sol}", dir}); }),
                       "external solver failed (exit 1)"));
    }
    SUBCASE("corrupt output is an error") {
        auto dir = tmpdir("ext_bad");
        CHECK(contains(
            thrown([&] {
                solve_external(m, {"cat {lp} > /dev/null && printf 'x banana\\n' > {sol}", dir});
            }),
            "non-numeric"));
    }
    SUBCASE("claimed solutions are verified against the model") {
        auto dir = tmpdir("ext_lie");
        std::ofstream(dir + "/prep.sol") << "x 0\ny 0\n";
        CHECK(contains(thrown([&] {
                  solve_external(m, {"cat {lp} > /dev/null && cp " + dir + "/prep.sol {sol}", dir});
              }),
                       "failed verification"));
    }
}
