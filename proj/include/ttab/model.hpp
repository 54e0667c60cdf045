#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ttab {

// Week grid: five days (M,T,W,R,F), seven 55-minute periods per day,
// lunch between periods 4 and 5.
struct TimeGrid {
    std::array<std::string, 5> days{{"M", "T", "W", "R", "F"}};
    int first_period = 1;
    int last_period = 7;
    std::pair<int, int> lunch_boundary{4, 5};

    static constexpr int kDays = 5;
    static constexpr int kPeriods = 7;
    static constexpr int kSlots = kDays * kPeriods;

    int num_days() const { return static_cast<int>(days.size()); }
    int num_periods() const { return last_period - first_period + 1; }

    // Day after d (0-based); undefined for the last day.
    std::optional<int> next_day(int d) const {
        if (d < 0 || d + 1 >= num_days()) return std::nullopt;
        return d + 1;
    }

    const std::string& day_label(int d) const { return days.at(static_cast<size_t>(d)); }

    // -1 if the label is not a day of this grid.
    int day_from_label(const std::string& label) const {
        for (int d = 0; d < num_days(); ++d)
            if (days[static_cast<size_t>(d)] == label) return d;
        return -1;
    }
};

struct Room {
    std::string id;
    int capacity = 0;        // students
    std::string room_type;
};

// avail entries: 1 can teach, 0 prefers not, -1 important not, -2 cannot.
struct Professor {
    std::string id;
    std::array<std::array<int, TimeGrid::kPeriods>, TimeGrid::kDays> availability{};
    bool is_adjunct = false;

    Professor() {
        for (auto& row : availability) row.fill(1);
    }

    int avail(int day, int period) const {
        return availability[static_cast<size_t>(day)][static_cast<size_t>(period - 1)];
    }
    void set_avail(int day, int period, int v) {
        availability[static_cast<size_t>(day)][static_cast<size_t>(period - 1)] = v;
    }
};

struct Course {
    std::string id;
    int periods = 0;         // weekly meetings, 1..5
};

// A fixed meeting requirement: a day, and optionally a specific period.
struct Mandate {
    int day = 0;                       // 0-based day index
    std::optional<int> period;         // absent = any period that day
};

struct Section {
    std::string id;
    std::string prof;
    std::string course;
    int periods = 0;                   // must equal the course's period count
    bool is_lab = false;
    int capacity = 0;                  // 0 is allowed (room reserved, no enrollment)
    std::optional<std::string> final_exam;   // stored, unused
    std::string room_type;
    std::optional<int> labtie;
    std::vector<Mandate> mandates;     // up to 6
    std::vector<std::string> coprofs;  // up to 6
    bool is_adjunct_taught = false;
    std::optional<int> link;

    // resolved by Instance::build
    int prof_idx = -1;
    int course_idx = -1;
};

struct Group {
    std::string id;
    int size = 0;
    std::vector<std::string> curriculum;     // sorted, distinct course ids
    std::optional<std::string> lineage;      // parent group id when produced by a split

    // resolved by Instance::build
    std::vector<int> curriculum_idx;
};

// The whole problem. Entities are sorted by id; every cross-reference resolves.
struct Instance {
    TimeGrid grid;
    std::vector<Room> rooms;
    std::vector<std::string> room_types;     // sorted distinct vocabulary
    std::vector<Professor> professors;
    std::vector<Course> courses;
    std::vector<Section> sections;
    std::vector<Group> groups;

    std::unordered_map<std::string, int> room_index;
    std::unordered_map<std::string, int> prof_index;
    std::unordered_map<std::string, int> course_index;
    std::unordered_map<std::string, int> section_index;
    std::unordered_map<std::string, int> group_index;

    // Sorts entities, builds the index maps, resolves references.
    // Throws std::runtime_error naming the entity on a dangling reference
    // or duplicate id.
    static Instance build(TimeGrid grid,
                          std::vector<Room> rooms,
                          std::vector<Professor> professors,
                          std::vector<Course> courses,
                          std::vector<Section> sections,
                          std::vector<Group> groups);

    // Same instance with a different group set (e.g. after subgroup refinement).
    Instance with_groups(std::vector<Group> new_groups) const;

    int room_of(const std::string& id) const;
    int prof_of(const std::string& id) const;
    int course_of(const std::string& id) const;
    int section_of(const std::string& id) const;
    int group_of(const std::string& id) const;

    // Sections of a course, as indices in id order.
    const std::vector<int>& sections_of_course(int course_idx) const { return sections_by_course_.at(static_cast<size_t>(course_idx)); }

  private:
    std::vector<std::vector<int>> sections_by_course_;
};

// (period triples a<b<c) disallowed for three-period contiguous labs:
// all triples except (1,2,3), (2,3,4), (5,6,7).
std::set<std::array<int, 3>> forbidden_lab_triples(const TimeGrid& grid);

// (period pairs a<b) disallowed for two-period labs: all pairs except the
// contiguous ones that do not straddle lunch.
std::set<std::array<int, 2>> forbidden_lab_pairs(const TimeGrid& grid);

// Professors teaching 9 or more periods per week across their sections.
std::set<std::string> fulltime_professors(const Instance& inst);

// One schedulable (section, day, period, room) combination.
struct Candidate {
    int section = 0;
    int day = 0;
    int period = 0;
    int room = 0;

    friend bool operator==(const Candidate&, const Candidate&) = default;
    friend auto operator<=>(const Candidate&, const Candidate&) = default;
};

// Rooms whose type matches and whose capacity fits the section, in id order.
std::vector<int> compatible_rooms(const Instance& inst, int section_idx);

// The set Y: every (section, day, period, room) with matching room type and
// sufficient room capacity. Ordered section, day, period, room.
std::vector<Candidate> candidate_assignments(const Instance& inst);

// The set W over an explicit group list: (group position, section index) pairs
// where the section's course is in the group's curriculum.
std::vector<std::pair<int, int>> group_section_options(const Instance& inst,
                                                       const std::vector<Group>& groups);

}  // namespace ttab
