#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ttab/model.hpp"

namespace ttab {

struct Meeting {
    int day = 0;        // 0-based
    int period = 1;     // 1-based
    std::string room;

    friend bool operator==(const Meeting&, const Meeting&) = default;
    friend auto operator<=>(const Meeting&, const Meeting&) = default;
};

// A decoded (or hand-written) schedule. String-keyed so it can be checked
// against an instance without sharing any solver state.
struct Timetable {
    std::map<std::string, std::vector<Meeting>> meetings;          // section -> meetings
    std::map<std::string, std::set<std::string>> enrollments;      // group -> sections
    std::map<std::string, std::set<std::pair<int, int>>> prof_grid;  // prof -> (day, period)
    std::map<std::string, int> over_capacity;                      // section -> students over

    int load_of(const std::string& section, const Instance& inst) const;
};

// Tagged CSV rows, sorted for byte-stable output:
//   meeting,<section>,<day label>,<period>,<room>
//   enroll,<group>,<section>
//   overcap,<section>,<count>
// prof_grid is derivable from meetings and is not serialized.
void write_timetable(std::ostream& os, const Timetable& tt);
void write_timetable_file(const std::string& path, const Timetable& tt);
Timetable read_timetable(std::istream& is, const TimeGrid& grid);
Timetable read_timetable_file(const std::string& path, const TimeGrid& grid);

}  // namespace ttab
