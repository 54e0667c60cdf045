#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "ttab/mip.hpp"
#include "ttab/subgroup.hpp"

using namespace ttab;

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

const mip::Constraint* find_con(const mip::Model& m, const std::string& name) {
    for (int c = 0; c < m.num_constraints(); ++c)
        if (m.con(c).name == name) return &m.con(c);
    return nullptr;
}

// Minimum total overflow over every way of packing the groups, by exhaustion.
long long brute_force_overflow(const std::vector<int>& sizes, int sections, int cap) {
    long long best = -1;
    std::vector<int> pick(sizes.size(), 0);
    for (;;) {
        std::vector<long long> load(static_cast<size_t>(sections), 0);
        for (size_t i = 0; i < sizes.size(); ++i)
            load[static_cast<size_t>(pick[i])] += sizes[i];
        long long over = 0;
        for (long long l : load) over += std::max(0LL, l - cap);
        if (best < 0 || over < best) best = over;
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == sections) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return best;
}

}  // namespace

TEST_CASE("packing program shape") {
    auto inst = Instance::build(
        TimeGrid{}, {fix::room("R1", "ROOM", 30)}, {fix::prof("P1")},
        {fix::course("CA", 2), fix::course("CB", 2)},
        {fix::section("S1", "P1", "CA", 2, "ROOM", 12),
         fix::section("S2", "P1", "CA", 2, "ROOM", 12),
         fix::section("S3", "P1", "CB", 2, "ROOM", 25)},
        {fix::group("G1", 10, {"CA"}), fix::group("G2", 20, {"CA", "CB"})});
    IpaIndex ix;
    mip::Model m = build_ipa(inst, inst.groups, &ix);

    REQUIRE(m.num_vars() == 8);
    // larger groups first, then overflow variables in section order
    CHECK(m.var(0).name == "x[G2,S1]");
    CHECK(m.var(1).name == "x[G2,S2]");
    CHECK(m.var(2).name == "x[G2,S3]");
    CHECK(m.var(3).name == "x[G1,S1]");
    CHECK(m.var(4).name == "x[G1,S2]");
    CHECK(m.var(5).name == "t[S1]");
    CHECK(m.var(7).name == "t[S3]");
    CHECK(m.var(0).obj == 0.0);
    CHECK(m.var(5).obj == 1.0);
    CHECK(m.var(5).ub == 18.0);   // 10 + 20 eligible - 12 seats
    CHECK(m.var(7).ub == 0.0);    // 20 eligible - 25 seats
    CHECK(ix.x.at({"G1", "S2"}) == 4);
    CHECK(ix.t.at("S2") == 6);

    REQUIRE(m.num_constraints() == 6);
    const auto* enroll = find_con(m, "enroll[G2,CA]");
    REQUIRE(enroll != nullptr);
    CHECK(enroll->sense == mip::Sense::Eq);
    CHECK(enroll->rhs == 1.0);
    CHECK(enroll->terms.size() == 2);
    const auto* cap = find_con(m, "cap[S1]");
    REQUIRE(cap != nullptr);
    CHECK(cap->sense == mip::Sense::Le);
    CHECK(cap->rhs == 12.0);
    REQUIRE(cap->terms.size() == 3);   // two groups + overflow
    double tcoeff = 0.0;
    for (const auto& t : cap->terms)
        if (t.var == ix.t.at("S1")) tcoeff = t.coeff;
    CHECK(tcoeff == -1.0);
}

TEST_CASE("lab enrollment implies the tied lecture") {
    auto inst = Instance::build(
        TimeGrid{}, {fix::room("R1", "ROOM", 30)}, {fix::prof("P1")},
        {fix::course("LECC", 2), fix::course("LABC", 2)},
        {fix::section("LEC_1", "P1", "LECC", 2, "ROOM", 10),
         fix::section("LEC_2", "P1", "LECC", 2, "ROOM", 10),
         fix::section("LAB_1", "P1", "LABC", 2, "ROOM", 10, true)},
        {fix::group("G1", 5, {"LABC", "LECC"})});
    inst.sections[static_cast<size_t>(inst.section_of("LEC_1"))].labtie = 1;
    inst.sections[static_cast<size_t>(inst.section_of("LAB_1"))].labtie = 1;

    IpaIndex ix;
    mip::Model m = build_ipa(inst, inst.groups, &ix);
    int ties = 0;
    for (int c = 0; c < m.num_constraints(); ++c)
        if (m.con(c).name.rfind("labtie[", 0) == 0) ++ties;
    CHECK(ties == 1);
    const auto* tie = find_con(m, "labtie[G1,LEC_1,LAB_1]");
    REQUIRE(tie != nullptr);
    CHECK(tie->sense == mip::Sense::Ge);
    CHECK(tie->rhs == 0.0);
    REQUIRE(tie->terms.size() == 2);
    CHECK(tie->terms[0].var == ix.x.at({"G1", "LEC_1"}));
    CHECK(tie->terms[0].coeff == 1.0);
    CHECK(tie->terms[1].var == ix.x.at({"G1", "LAB_1"}));
    CHECK(tie->terms[1].coeff == -1.0);
}

TEST_CASE("split bookkeeping") {
    Group g = fix::group("G", 10, {"CA", "CB"});
    auto [a, b] = split_group(g, 4);
    CHECK(a.id == "G.1");
    CHECK(a.size == 6);
    CHECK(b.id == "G.2");
    CHECK(b.size == 4);
    CHECK(a.lineage == "G");
    CHECK(b.lineage == "G");
    CHECK(a.curriculum == g.curriculum);
    CHECK_THROWS_AS(split_group(g, 0), std::invalid_argument);
    CHECK_THROWS_AS(split_group(g, 10), std::invalid_argument);
}

TEST_CASE("stock example: optimum overflow is fifteen") {
    auto inst = fix::packing_instance();
    CHECK(brute_force_overflow({34, 41, 15}, 3, 30) == 15);
    auto r = mip::solve_exact(build_ipa(inst, inst.groups));
    REQUIRE(r.status == mip::Status::Optimal);
    CHECK(r.objective == doctest::Approx(15.0));
}

TEST_CASE("stock example: two splits reach a perfect packing") {
    auto inst = fix::packing_instance();
    auto res = run_subgroup(inst);
    CHECK(res.final_z == 0);
    CHECK(res.iterations == 2);
    REQUIRE(res.final_groups.size() == 5);
    long long total = 0;
    for (const auto& g : res.final_groups) total += g.size;
    CHECK(total == 90);

    // The optimum always isolates each original group, so the forced first
    // split peels 11 off the 41-group and the second peels 4 off the 34-group.
    REQUIRE(res.history.size() == 2);
    CHECK(res.history[0].iter == 1);
    CHECK(res.history[0].z == 15);
    CHECK(res.history[0].group == "GB");
    CHECK(res.history[0].part == 11);
    CHECK(res.history[1].iter == 2);
    CHECK(res.history[1].z == 4);
    CHECK(res.history[1].group == "GA");
    CHECK(res.history[1].part == 4);
    CHECK(res.final_groups[0].id == "GA.1");
    CHECK(res.final_groups[1].id == "GA.2");
    CHECK(res.final_groups[2].id == "GB.1");
    CHECK(res.final_groups[3].id == "GB.2");
    CHECK(res.final_groups[4].id == "GC");
    CHECK(res.final_groups[0].lineage == "GA");

    std::vector<int> sizes;
    for (const auto& g : res.final_groups) sizes.push_back(g.size);
    CHECK(brute_force_overflow(sizes, 3, 30) == 0);

    // the recorded assignment is itself a zero-overflow packing
    std::map<std::string, long long> load;
    for (const auto& g : res.final_groups) {
        auto it = res.assignment.find({g.id, "CA"});
        REQUIRE(it != res.assignment.end());
        load[it->second] += g.size;
    }
    for (const auto& [sec, l] : load) {
        CAPTURE(sec);
        CHECK(l <= 30);
    }
}

TEST_CASE("already-packable groups pass through untouched") {
    auto inst = Instance::build(
        TimeGrid{}, {fix::room("R1", "ROOM", 30)}, {fix::prof("P1")},
        {fix::course("CA", 2), fix::course("CB", 2)},
        {fix::section("CA_1", "P1", "CA", 2, "ROOM", 30),
         fix::section("CB_1", "P1", "CB", 2, "ROOM", 30)},
        {fix::group("G1", 10, {"CA"}), fix::group("G2", 20, {"CA", "CB"})});
    auto res = run_subgroup(inst);
    CHECK(res.iterations == 0);
    CHECK(res.final_z == 0);
    REQUIRE(res.final_groups.size() == 2);
    CHECK(res.final_groups[0].id == "G1");
    CHECK(res.final_groups[1].id == "G2");
    CHECK(res.assignment.size() == 3);
    CHECK(res.assignment.at({"G1", "CA"}) == "CA_1");
    CHECK(res.assignment.at({"G2", "CB"}) == "CB_1");
}

TEST_CASE("split budget exhaustion raises") {
    auto msg = thrown([&] { run_subgroup(fix::packing_instance(), SubgroupOptions{0}); });
    CHECK(contains(msg, "splits"));
}

TEST_CASE("unsplittable singleton raises") {
    auto inst = Instance::build(TimeGrid{}, {fix::room("R1", "ROOM", 30)}, {fix::prof("P1")},
                                {fix::course("CA", 2)},
                                {fix::section("CA_1", "P1", "CA", 2, "ROOM", 0)},
                                {fix::group("G1", 1, {"CA"})});
    CHECK(contains(thrown([&] { run_subgroup(inst); }), "size 1"));
}

TEST_CASE("split log round trip") {
    std::vector<SubgroupStep> h{{1, 15, "CA_2", "GB", 11}, {2, 4, "CA_1", "GA", 4}};
    auto path = (std::filesystem::temp_directory_path() / "ttab_subgroup_log.csv").string();
    write_subgroup_log(path, h);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iter,z,section,group,part");
    std::getline(in, line);
    CHECK(line == "1,15,CA_2,GB,11");
    std::getline(in, line);
    CHECK(line == "2,4,CA_1,GA,4");
}
