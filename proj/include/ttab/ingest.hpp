#pragma once

#include <string>
#include <vector>

#include "ttab/model.hpp"
#include "ttab/weights.hpp"

namespace ttab {

// Pre-solve validity finding. Errors are conditions that make the full
// timetabling program (or the preprocessing packing step) infeasible or
// ill-defined; their absence is necessary but not sufficient for
// feasibility.
struct DataIssue {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string code;      // fixed vocabulary, see validate_instance
    std::string message;
    std::string subject;   // offending entity id
};

bool has_errors(const std::vector<DataIssue>& issues);

// Reads the four input tables. Throws std::runtime_error with file/line
// positions on malformed rows and on unresolved references. Blank
// availability cells mean 1. Professors are the union of those referenced
// by sections (including co-professors) and those with availability rows;
// courses are derived from sections (period count taken from the
// lexicographically first section). A professor is adjunct when any section
// they teach is marked adjunct.
Instance parse_instance(const std::string& groups_path, const std::string& sections_path,
                        const std::string& rooms_path, const std::string& availability_path,
                        std::vector<std::string>* warnings = nullptr);

// Issue vocabulary (code -> meaning):
//   demand_exceeds_capacity      course demand above summed section capacity
//   mandated_roomtype_overload   slot-mandates force more sections than rooms of a type
//   mandate_collision            one professor mandated into two sections at one slot
//   mandate_count_exceeds_periods more mandates than weekly meetings
//   periods_mismatch             section period count differs from its course
//   labtie_structure             a labtie id lacking exactly one lab plus a lecture
//   link_periods_mismatch        linked sections with different period counts
//   lab4_late_mandate            4-period lab mandated after period 4
//   lab_unschedulable            lab period count with no contiguous lunch-free block
//   no_compatible_room           no room matches a section's type and capacity
//   adjunct_unavailable          adjunct-taught section whose professor has no free slot (warning)
std::vector<DataIssue> validate_instance(const Instance& inst);

// Normalized write-back; parse(write(inst)) reproduces inst byte-stably.
void write_instance(const Instance& inst, const std::string& groups_path,
                    const std::string& sections_path, const std::string& rooms_path,
                    const std::string& availability_path);

// group_id,size,course_1..course_k with k the widest curriculum.
void write_groups_csv(const std::string& path, const std::vector<Group>& groups);

// key=value lines, '#' comments; unknown keys warn, malformed values throw.
// meeting_day accepts a day label (M,T,W,R,F) or a 0-based index.
Weights parse_weights_text(const std::string& text, const TimeGrid& grid,
                           std::vector<std::string>* warnings = nullptr);
Weights parse_weights_file(const std::string& path, const TimeGrid& grid,
                           std::vector<std::string>* warnings = nullptr);
void write_weights_file(const std::string& path, const Weights& w, const TimeGrid& grid);

}  // namespace ttab
