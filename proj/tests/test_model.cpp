#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "ttab/model.hpp"

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

}  // namespace

TEST_CASE("forbidden two-period lab starts") {
    TimeGrid grid;
    auto pairs = forbidden_lab_pairs(grid);
    CHECK(pairs.size() == 16);
    // allowed: the contiguous pairs that stay on one side of lunch
    CHECK(pairs.count({1, 2}) == 0);
    CHECK(pairs.count({2, 3}) == 0);
    CHECK(pairs.count({3, 4}) == 0);
    CHECK(pairs.count({5, 6}) == 0);
    CHECK(pairs.count({6, 7}) == 0);
    // forbidden: the lunch straddle and every gap
    CHECK(pairs.count({4, 5}) == 1);
    CHECK(pairs.count({1, 3}) == 1);
    CHECK(pairs.count({1, 7}) == 1);
    int allowed = 0;
    for (int a = 1; a <= 7; ++a)
        for (int b = a + 1; b <= 7; ++b)
            if (!pairs.count({a, b})) {
                CHECK(b == a + 1);
                CHECK(a != grid.lunch_boundary.first);
                ++allowed;
            }
    CHECK(allowed == 5);
}

TEST_CASE("forbidden three-period lab starts") {
    TimeGrid grid;
    auto triples = forbidden_lab_triples(grid);
    CHECK(triples.size() == 32);
    CHECK(triples.count({1, 2, 3}) == 0);
    CHECK(triples.count({2, 3, 4}) == 0);
    CHECK(triples.count({5, 6, 7}) == 0);
    CHECK(triples.count({3, 4, 5}) == 1);   // straddles lunch
    CHECK(triples.count({4, 5, 6}) == 1);   // straddles lunch
    CHECK(triples.count({1, 2, 4}) == 1);   // gap
    CHECK(triples.count({1, 4, 7}) == 1);
    int allowed = 0;
    for (int a = 1; a <= 7; ++a)
        for (int b = a + 1; b <= 7; ++b)
            for (int c = b + 1; c <= 7; ++c)
                if (!triples.count({a, b, c})) {
                    CHECK(b == a + 1);
                    CHECK(c == b + 1);
                    CHECK((c <= 4 || a >= 5));
                    ++allowed;
                }
    CHECK(allowed == 3);
}

TEST_CASE("time grid basics") {
    TimeGrid grid;
    CHECK(grid.num_days() == 5);
    CHECK(grid.num_periods() == 7);
    CHECK(grid.day_from_label("R") == 3);
    CHECK(grid.day_from_label("X") == -1);
    CHECK(grid.next_day(0) == 1);
    CHECK_FALSE(grid.next_day(4).has_value());
}

TEST_CASE("fulltime threshold sits at nine weekly periods") {
    auto inst = Instance::build(
        TimeGrid{}, {fix::room("R1", "CLASSROOM", 30)}, {fix::prof("P8"), fix::prof("P9")},
        {fix::course("CA", 4), fix::course("CB", 5)},
        {fix::section("SA", "P9", "CA", 4, "CLASSROOM", 10),
         fix::section("SB", "P9", "CB", 5, "CLASSROOM", 10),
         fix::section("SC", "P8", "CA", 4, "CLASSROOM", 10),
         fix::section("SD", "P8", "CA", 4, "CLASSROOM", 10)},
        {fix::group("G1", 5, {"CA"})});
    auto ft = fulltime_professors(inst);
    CHECK(ft.size() == 1);
    CHECK(ft.count("P9") == 1);   // 4 + 5 = 9 periods
    CHECK(ft.count("P8") == 0);   // 4 + 4 = 8 periods
}

TEST_CASE("compatible rooms filter on type and capacity") {
    auto inst = Instance::build(
        TimeGrid{}, {fix::room("RA", "CLASSROOM", 10), fix::room("RB", "CLASSROOM", 5),
                     fix::room("RC", "LAB", 30)},
        {fix::prof("P1")}, {fix::course("CA", 2), fix::course("CL", 2)},
        {fix::section("S1", "P1", "CA", 2, "CLASSROOM", 10),
         fix::section("S2", "P1", "CL", 2, "LAB", 0, true)},
        {fix::group("G1", 5, {"CA"})});
    auto r1 = compatible_rooms(inst, inst.section_of("S1"));
    REQUIRE(r1.size() == 1);
    CHECK(inst.rooms[static_cast<size_t>(r1[0])].id == "RA");
    auto r2 = compatible_rooms(inst, inst.section_of("S2"));
    REQUIRE(r2.size() == 1);
    CHECK(inst.rooms[static_cast<size_t>(r2[0])].id == "RC");

    auto cands = candidate_assignments(inst);
    CHECK(cands.size() == 70);   // 2 sections x 5 days x 7 periods x 1 room
    CHECK(cands.front() == Candidate{inst.section_of("S1"), 0, 1, inst.room_of("RA")});
    CHECK(cands.back() == Candidate{inst.section_of("S2"), 4, 7, inst.room_of("RC")});
    for (size_t i = 1; i < cands.size(); ++i) {
        auto key = [](const Candidate& c) { return std::array<int, 4>{c.section, c.day, c.period, c.room}; };
        CHECK(key(cands[i - 1]) < key(cands[i]));
    }
}

TEST_CASE("group options pair groups with their courses' sections") {
    auto inst = Instance::build(
        TimeGrid{}, {fix::room("R1", "CLASSROOM", 30)}, {fix::prof("P1")},
        {fix::course("CA", 2), fix::course("CB", 3)},
        {fix::section("S1", "P1", "CA", 2, "CLASSROOM", 10),
         fix::section("S2", "P1", "CA", 2, "CLASSROOM", 10),
         fix::section("S3", "P1", "CB", 3, "CLASSROOM", 10)},
        {fix::group("G1", 5, {"CA"}), fix::group("G2", 5, {"CA", "CB"})});
    auto opts = group_section_options(inst, inst.groups);
    REQUIRE(opts.size() == 5);
    int s1 = inst.section_of("S1"), s2 = inst.section_of("S2"), s3 = inst.section_of("S3");
    CHECK(opts[0] == std::pair<int, int>{0, s1});
    CHECK(opts[1] == std::pair<int, int>{0, s2});
    CHECK(opts[2] == std::pair<int, int>{1, s1});
    CHECK(opts[3] == std::pair<int, int>{1, s2});
    CHECK(opts[4] == std::pair<int, int>{1, s3});
}

TEST_CASE("instance build resolves references and rejects bad data") {
    auto base_rooms = std::vector<Room>{fix::room("R1", "CLASSROOM", 30)};
    auto base_profs = std::vector<Professor>{fix::prof("P1")};
    auto base_courses = std::vector<Course>{fix::course("CA", 2)};
    auto base_secs = std::vector<Section>{fix::section("S1", "P1", "CA", 2, "CLASSROOM", 10)};
    auto base_groups = std::vector<Group>{fix::group("G1", 5, {"CA"})};

    SUBCASE("clean build sorts and indexes") {
        auto inst = Instance::build(TimeGrid{}, base_rooms, base_profs, base_courses, base_secs,
                                    base_groups);
        CHECK(inst.section_of("S1") == 0);
        CHECK(inst.sections[0].prof_idx == 0);
        CHECK(inst.sections[0].course_idx == 0);
        CHECK(inst.room_types == std::vector<std::string>{"CLASSROOM"});
        CHECK(inst.sections_of_course(0) == std::vector<int>{0});
    }
    SUBCASE("unknown professor") {
        auto secs = base_secs;
        secs[0].prof = "NOBODY";
        CHECK(contains(thrown([&] {
                  Instance::build(TimeGrid{}, base_rooms, base_profs, base_courses, secs,
                                  base_groups);
              }),
                       "no professor 'NOBODY'"));
    }
    SUBCASE("unknown course in a curriculum") {
        auto groups = base_groups;
        groups[0].curriculum = {"CA", "CZ"};
        CHECK(contains(thrown([&] {
                  Instance::build(TimeGrid{}, base_rooms, base_profs, base_courses, base_secs,
                                  groups);
              }),
                       "no course 'CZ'"));
    }
    SUBCASE("duplicate section id") {
        auto secs = base_secs;
        secs.push_back(base_secs[0]);
        CHECK(contains(thrown([&] {
                  Instance::build(TimeGrid{}, base_rooms, base_profs, base_courses, secs,
                                  base_groups);
              }),
                       "duplicate section id"));
    }
    SUBCASE("room type nobody offers") {
        auto secs = base_secs;
        secs[0].room_type = "POOL";
        CHECK(contains(thrown([&] {
                  Instance::build(TimeGrid{}, base_rooms, base_profs, base_courses, secs,
                                  base_groups);
              }),
                       "no room of type 'POOL'"));
    }
    SUBCASE("course periods out of range") {
        auto courses = base_courses;
        courses[0].periods = 6;
        auto secs = base_secs;
        secs[0].periods = 6;
        CHECK(contains(thrown([&] {
                  Instance::build(TimeGrid{}, base_rooms, base_profs, courses, secs, base_groups);
              }),
                       "periods outside 1..5"));
    }
    SUBCASE("bad availability value") {
        auto profs = base_profs;
        profs[0].set_avail(2, 3, 7);
        CHECK(contains(thrown([&] {
                  Instance::build(TimeGrid{}, base_rooms, profs, base_courses, base_secs,
                                  base_groups);
              }),
                       "availability entry"));
    }
    SUBCASE("curricula are sorted and deduplicated") {
        auto courses = base_courses;
        courses.push_back(fix::course("AA", 1));
        auto secs = base_secs;
        secs.push_back(fix::section("S0", "P1", "AA", 1, "CLASSROOM", 10));
        auto groups = std::vector<Group>{fix::group("G1", 5, {"CA", "AA", "CA"})};
        auto inst = Instance::build(TimeGrid{}, base_rooms, base_profs, courses, secs, groups);
        CHECK(inst.groups[0].curriculum == std::vector<std::string>{"AA", "CA"});
        CHECK(inst.groups[0].curriculum_idx == std::vector<int>{0, 1});
    }
    SUBCASE("with_groups swaps only the group set") {
        auto inst = Instance::build(TimeGrid{}, base_rooms, base_profs, base_courses, base_secs,
                                    base_groups);
        auto inst2 = inst.with_groups({fix::group("H1", 3, {"CA"}), fix::group("H2", 2, {"CA"})});
        CHECK(inst2.groups.size() == 2);
        CHECK(inst2.group_of("H2") == 1);
        CHECK(inst2.sections.size() == inst.sections.size());
        CHECK(inst.groups.size() == 1);
    }
}
