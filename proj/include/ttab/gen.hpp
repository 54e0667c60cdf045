#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ttab/model.hpp"
#include "ttab/timetable.hpp"

namespace ttab {

// Knobs for the synthetic instance generator. Generation is deterministic
// in the seed and byte-stable across platforms.
struct GenParams {
    int n_groups = 20;
    int group_size_min = 5;
    int group_size_max = 30;
    double size_skew = 1.0;  // >1 biases group sizes toward the minimum

    int n_courses = 12;
    int copies_min = 1;  // sections per course before demand-driven growth
    int copies_max = 3;
    int cap_min = 20;
    int cap_max = 40;
    double lab_fraction = 0.25;  // share of courses that are labs (tied to a lecture)

    int curriculum_min = 3;
    int curriculum_max = 5;

    int n_professors = 8;  // starting pool, grown when clash-free teaching needs more
    int n_rooms = 10;      // advisory minimum; real demand may exceed it
    int room_type_count = 2;

    double availability_block_fraction = 0.1;  // of each professor's idle slots

    std::uint64_t seed = 1;
    bool dense = false;  // requires n_courses == 7: every group takes seven 5-period courses
};

struct GenResult {
    Instance instance;               // published (coarse) groups
    std::vector<Group> seed_groups;  // capacity-respecting refinement of the groups
    Timetable witness;               // placements plus seed enrollments; hard-feasible
};

// Lays out one clash-free weekly track per course, copies sections until
// seats cover demand, then packs every group into the copies. The witness
// therefore proves the published instance hard-feasible once groups are
// refined. Throws std::invalid_argument on inconsistent params and
// std::runtime_error when a layout cannot be found.
GenResult generate(const GenParams& p);

// groups.csv, sections.csv, rooms.csv, availability.csv, witness.csv,
// witness_groups.csv under dir (created if missing).
void emit_files(const GenResult& r, const std::string& dir);

}  // namespace ttab
