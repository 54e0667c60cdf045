#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttab/model.hpp"
#include "ttab/timetable.hpp"

// Hand-built pieces for small test instances.
namespace fix {

inline ttab::Room room(std::string id, std::string type, int cap) {
    ttab::Room r;
    r.id = std::move(id);
    r.room_type = std::move(type);
    r.capacity = cap;
    return r;
}

inline ttab::Professor prof(std::string id) {
    ttab::Professor p;
    p.id = std::move(id);
    return p;
}

inline ttab::Course course(std::string id, int periods) {
    ttab::Course c;
    c.id = std::move(id);
    c.periods = periods;
    return c;
}

inline ttab::Section section(std::string id, std::string prof, std::string course, int periods,
                             std::string room_type, int cap, bool lab = false) {
    ttab::Section s;
    s.id = std::move(id);
    s.prof = std::move(prof);
    s.course = std::move(course);
    s.periods = periods;
    s.room_type = std::move(room_type);
    s.capacity = cap;
    s.is_lab = lab;
    return s;
}

inline ttab::Group group(std::string id, int size, std::vector<std::string> curriculum) {
    ttab::Group g;
    g.id = std::move(id);
    g.size = size;
    g.curriculum = std::move(curriculum);
    return g;
}

// Three cap-30 copies of one course and groups of 34, 41 and 15 students:
// no whole-group packing exists, but two splits reach zero overflow.
inline ttab::Instance packing_instance() {
    using ttab::Instance;
    using ttab::TimeGrid;
    return Instance::build(TimeGrid{}, {room("R1", "CLASSROOM", 40)},
                           {prof("P1"), prof("P2"), prof("P3")}, {course("CA", 3)},
                           {section("CA_1", "P1", "CA", 3, "CLASSROOM", 30),
                            section("CA_2", "P2", "CA", 3, "CLASSROOM", 30),
                            section("CA_3", "P3", "CA", 3, "CLASSROOM", 30)},
                           {group("GA", 34, {"CA"}), group("GB", 41, {"CA"}),
                            group("GC", 15, {"CA"})});
}

// An instance plus a hand-written schedule for it.
struct Scenario {
    ttab::Instance inst;
    ttab::Timetable tt;
};

// A small department with every structural feature present: a linked pair,
// a tied lab/lecture with an alternative untied lecture, a mandated section
// with a co-professor, and an unenrolled spare section. The timetable is
// clean by construction, so single mutations can break one family at a time.
inline Scenario rich_department() {
    using namespace ttab;
    std::vector<Section> secs = {
        section("S1", "PA", "CA", 2, "CLASSROOM", 12),
        section("S1B", "PB", "CA", 2, "CLASSROOM", 15),
        section("S2", "PB", "CD", 2, "CLASSROOM", 20),
        section("S4", "PA", "CE", 1, "CLASSROOM", 5),
        section("SL", "PC", "CLB", 2, "LABROOM", 20, true),
        section("SLec", "PA", "CL", 2, "CLASSROOM", 20),
        section("SLec2", "PC", "CL", 2, "CLASSROOM", 20),
        section("SM", "PB", "CM", 1, "CLASSROOM", 20),
    };
    secs[0].link = 7;
    secs[2].link = 7;
    secs[4].labtie = 1;
    secs[5].labtie = 1;
    secs[7].mandates.push_back({0, 3});
    secs[7].coprofs = {"PA"};

    Scenario f{Instance::build(
                   TimeGrid{},
                   {room("R1", "CLASSROOM", 30), room("R2", "CLASSROOM", 30),
                    room("R3", "CLASSROOM", 30), room("L1", "LABROOM", 30)},
                   {prof("PA"), prof("PB"), prof("PC")},
                   {course("CA", 2), course("CD", 2), course("CE", 1), course("CLB", 2),
                    course("CL", 2), course("CM", 1)},
                   secs,
                   {group("G1", 10, {"CA", "CL", "CLB"}), group("G2", 10, {"CD", "CM"}),
                    group("G3", 15, {"CA"})}),
               {}};
    auto& m = f.tt.meetings;
    m["S1"] = {{0, 1, "R1"}, {1, 1, "R1"}};
    m["S1B"] = {{2, 1, "R3"}, {4, 5, "R3"}};
    m["S2"] = {{0, 1, "R2"}, {1, 1, "R2"}};
    m["S4"] = {{4, 1, "R3"}};
    m["SL"] = {{2, 5, "L1"}, {2, 6, "L1"}};
    m["SLec"] = {{0, 5, "R1"}, {3, 5, "R1"}};
    m["SLec2"] = {{3, 4, "R2"}, {4, 3, "R2"}};
    m["SM"] = {{0, 3, "R2"}};
    f.tt.enrollments["G1"] = {"S1", "SL", "SLec"};
    f.tt.enrollments["G2"] = {"S2", "SM"};
    f.tt.enrollments["G3"] = {"S1B"};
    return f;
}

// A four-period lab tied to a one-period lecture: the only pair that can
// exceed four shared periods on one day without breaking anything else.
inline Scenario lab4_pair() {
    using namespace ttab;
    std::vector<Section> secs = {
        section("SL4", "PL", "CLB4", 4, "LABROOM", 20, true),
        section("SLc", "PM", "CL1", 1, "CLASSROOM", 20),
    };
    secs[0].labtie = 2;
    secs[1].labtie = 2;
    Scenario f{Instance::build(TimeGrid{}, {room("L1", "LABROOM", 30), room("R1", "CLASSROOM", 30)},
                               {prof("PL"), prof("PM")},
                               {course("CLB4", 4), course("CL1", 1)}, secs,
                               {group("GH", 5, {"CL1", "CLB4"})}),
               {}};
    f.tt.meetings["SL4"] = {{0, 1, "L1"}, {0, 2, "L1"}, {0, 3, "L1"}, {0, 4, "L1"}};
    f.tt.meetings["SLc"] = {{1, 1, "R1"}};
    f.tt.enrollments["GH"] = {"SL4", "SLc"};
    return f;
}

}  // namespace fix
