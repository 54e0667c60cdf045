#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ttab/gen.hpp"
#include "ttab/ingest.hpp"
#include "ttab/mip.hpp"
#include "ttab/tip.hpp"
#include "ttab/validate.hpp"

using namespace ttab;
namespace fs = std::filesystem;

namespace {

fs::path tmpdir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("ttab_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::vector<std::string> kFiles = {"groups.csv",       "sections.csv", "rooms.csv",
                                         "availability.csv", "witness.csv",  "witness_groups.csv"};

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
    GenParams p;
    p.seed = 99;
    auto a = tmpdir("gen_det_a");
    auto b = tmpdir("gen_det_b");
    emit_files(generate(p), a.string());
    emit_files(generate(p), b.string());
    for (const auto& f : kFiles) {
        INFO(f);
        std::string sa = slurp(a / f);
        CHECK(sa == slurp(b / f));
        CHECK(!sa.empty());
    }

    GenParams q = p;
    q.seed = 100;
    auto c = tmpdir("gen_det_c");
    emit_files(generate(q), c.string());
    CHECK(slurp(a / "groups.csv") != slurp(c / "groups.csv"));
}

TEST_CASE("bad parameters are rejected up front") {
    auto msg = [](GenParams p) {
        try {
            generate(p);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    GenParams p;
    p.dense = true;   // n_courses stays 12
    CHECK(msg(p).find("dense") != std::string::npos);
    p = GenParams{};
    p.copies_min = 0;
    CHECK(msg(p).find("copies") != std::string::npos);
    p = GenParams{};
    p.size_skew = 0.0;
    CHECK(msg(p).find("size_skew") != std::string::npos);
    p = GenParams{};
    p.group_size_max = p.group_size_min - 1;
    CHECK(msg(p).find("group size") != std::string::npos);
}

TEST_CASE("generated instances are consistent and within the knobs") {
    GenParams p;
    p.seed = 7;
    GenResult r = generate(p);
    const Instance& inst = r.instance;

    CHECK(validate_instance(inst).empty());
    CHECK(static_cast<int>(inst.groups.size()) == p.n_groups);
    CHECK(static_cast<int>(inst.courses.size()) == p.n_courses);
    CHECK(static_cast<int>(inst.rooms.size()) >= p.n_rooms);
    for (const Group& g : inst.groups) {
        CHECK(g.size >= p.group_size_min);
        CHECK(g.size <= p.group_size_max);
        CHECK(static_cast<int>(g.curriculum.size()) >= 1);
        // a lab/lecture unit may overshoot the target by one
        CHECK(static_cast<int>(g.curriculum.size()) <= p.curriculum_max + 1);
    }
    for (const Section& s : inst.sections) {
        CHECK(s.capacity >= p.cap_min);
        CHECK(s.capacity <= p.cap_max);
        CHECK(s.mandates.empty());
        CHECK(s.coprofs.empty());
        CHECK(!s.link);
    }
    // every course sells enough seats for its demand
    std::map<std::string, long long> demand, seats;
    for (const Group& g : inst.groups)
        for (const auto& c : g.curriculum) demand[c] += g.size;
    for (const Section& s : inst.sections) seats[s.course] += s.capacity;
    for (const auto& [c, d] : demand) CHECK(seats[c] >= d);
}

TEST_CASE("seed groups refine the published groups") {
    GenParams p;
    p.seed = 11;
    GenResult r = generate(p);
    std::map<std::string, long long> size_of;
    std::map<std::string, int> chunks;
    for (const Group& sg : r.seed_groups) {
        REQUIRE(sg.lineage.has_value());
        const std::string& parent = *sg.lineage;
        int k = ++chunks[parent];
        CHECK(sg.id == parent + ".w" + std::to_string(k));
        CHECK(sg.size >= 1);
        size_of[parent] += sg.size;
        int gi = r.instance.group_of(parent);
        REQUIRE(gi >= 0);
        CHECK(sg.curriculum == r.instance.groups[static_cast<size_t>(gi)].curriculum);
    }
    for (const Group& g : r.instance.groups) CHECK(size_of[g.id] == g.size);
}

TEST_CASE("the witness timetable is hard-feasible for the refined groups") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        GenParams p;
        p.seed = seed;
        GenResult r = generate(p);
        Instance refined = r.instance.with_groups(r.seed_groups);
        auto vs = check_hard(refined, r.witness);
        std::string first = vs.empty() ? std::string() : vs[0].family + " " + vs[0].detail;
        INFO("seed " << seed << ": " << first);
        CHECK(vs.empty());
        PenaltyBreakdown b = score_soft(refined, r.witness, Weights{}, CapacityMode::Hard);
        CHECK(audit(refined, r.witness, Weights{}, CapacityMode::Hard, b.total).ok);
    }
}

TEST_CASE("dense mode fills every group's week completely") {
    GenParams p;
    p.dense = true;
    p.n_courses = 7;
    p.n_groups = 4;
    p.seed = 5;
    GenResult r = generate(p);
    for (const Course& c : r.instance.courses) CHECK(c.periods == 5);
    for (const Group& g : r.instance.groups) CHECK(g.curriculum.size() == 7);
    Instance refined = r.instance.with_groups(r.seed_groups);
    CHECK(check_hard(refined, r.witness).empty());
    // every seed group sits in class for all 35 periods
    std::map<std::string, std::set<std::pair<int, int>>> busy;
    for (const auto& [gid, secs] : r.witness.enrollments)
        for (const auto& sid : secs)
            for (const Meeting& m : r.witness.meetings.at(sid)) busy[gid].insert({m.day, m.period});
    for (const Group& sg : r.seed_groups) CHECK(busy[sg.id].size() == 35);
}

TEST_CASE("emitted files parse back into the same instance") {
    GenParams p;
    p.seed = 21;
    p.n_groups = 6;
    p.n_courses = 6;
    GenResult r = generate(p);
    auto dir = tmpdir("gen_roundtrip");
    emit_files(r, dir.string());
    Instance back = parse_instance((dir / "groups.csv").string(), (dir / "sections.csv").string(),
                                   (dir / "rooms.csv").string(), (dir / "availability.csv").string());
    auto dir2 = tmpdir("gen_roundtrip2");
    write_instance(back, (dir2 / "groups.csv").string(), (dir2 / "sections.csv").string(),
                   (dir2 / "rooms.csv").string(), (dir2 / "availability.csv").string());
    for (const auto& f : {"groups.csv", "sections.csv", "rooms.csv", "availability.csv"}) {
        INFO(f);
        CHECK(slurp(dir / f) == slurp(dir2 / f));
    }
    Timetable w = read_timetable_file((dir / "witness.csv").string(), back.grid);
    Instance refined =
        parse_instance((dir / "witness_groups.csv").string(), (dir / "sections.csv").string(),
                       (dir / "rooms.csv").string(), (dir / "availability.csv").string());
    CHECK(check_hard(refined, w).empty());
}

TEST_CASE("a tiny generated instance solves to at most the witness objective") {
    GenParams p;
    p.n_groups = 1;
    p.n_courses = 2;
    p.curriculum_min = 1;
    p.curriculum_max = 2;
    p.copies_min = 1;
    p.copies_max = 1;
    p.cap_min = 30;
    p.cap_max = 40;
    p.lab_fraction = 0.0;
    p.n_professors = 2;
    p.n_rooms = 2;
    p.room_type_count = 1;
    p.availability_block_fraction = 0.0;
    p.seed = 42;
    GenResult r = generate(p);
    Instance refined = r.instance.with_groups(r.seed_groups);
    Weights w;
    double witness_total = score_soft(refined, r.witness, w, CapacityMode::Hard).total;

    TipIndex ix;
    mip::Model m = build_tip(refined, w, CapacityMode::Hard, &ix);
    auto res = mip::solve_exact(m);
    REQUIRE(res.status == mip::Status::Optimal);
    CHECK(res.objective <= witness_total + 1e-9);
    Timetable tt = decode_solution(refined, ix, res.values);
    CHECK(audit(refined, tt, w, CapacityMode::Hard, res.objective).ok);
}
