#pragma once

#include <map>
#include <string>
#include <vector>

#include "ttab/model.hpp"
#include "ttab/timetable.hpp"
#include "ttab/weights.hpp"

namespace ttab {

// One broken hard requirement. family is the requirement class (h1..h14),
// subject the main offending entity. Details avoid commas so the CSV stays
// single-celled.
struct Violation {
    std::string family;
    std::string subject;
    std::string detail;
};

// Re-derives every hard requirement combinatorially from the timetable:
// meeting counts and room compatibility (h1), linked simultaneity (h2),
// room exclusivity (h3), mandates (h4), lecture day-spread (h5), lab blocks
// (h6), professor clashes (h7), co-professor clashes (h8), curriculum
// coverage (h9), group clashes
// (h10), tied-lecture enrollment (h11), capacity (h12, allowing the
// timetable's declared overflow), and tied-section day-sharing limits
// (h13, h14). Unknown ids are reported rather than thrown.
std::vector<Violation> check_hard(const Instance& inst, const Timetable& tt);

struct AvailabilityHit {
    std::string prof;
    int day = 0;
    int period = 1;
    int avail = 0;     // 0, -1 or -2
    double cost = 0;
};

struct PenaltyBreakdown {
    std::vector<AvailabilityHit> availability;  // sorted by (prof, day, period)
    double availability_total = 0;
    int first_last_days = 0;       // days teaching both the first and last period
    int missed_meeting_days = 0;   // full-time professors absent on the meeting day
    int consecutive_pairs = 0;     // 2-period lectures on adjacent days
    int consecutive_triples = 0;   // 3-period lectures on three consecutive days
    int no_day_off = 0;            // professors teaching all five days
    std::map<std::string, int> overflow;  // section -> seats over capacity (soft mode)
    double overflow_total = 0;
    double total = 0;
};

// Recomputes the preference objective from meetings, enrollments and each
// section's professor; the timetable's prof_grid is never consulted.
// Overflow is charged only in soft capacity mode (hard mode treats it as a
// violation, not a cost).
PenaltyBreakdown score_soft(const Instance& inst, const Timetable& tt, const Weights& w,
                            CapacityMode mode);

struct AuditResult {
    bool ok = false;
    std::vector<Violation> violations;
    PenaltyBreakdown breakdown;
    double claimed = 0;
};

// ok iff no hard violation and the recomputed score matches the claimed
// objective within 1e-6.
AuditResult audit(const Instance& inst, const Timetable& tt, const Weights& w, CapacityMode mode,
                  double claimed_objective);

// family,subject,detail
void write_violations_csv(const std::string& path, const std::vector<Violation>& violations);

}  // namespace ttab
