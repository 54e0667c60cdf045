#pragma once

namespace ttab {

// Soft-penalty weights. Defaults keep the documented ordering: availability
// hits (scaled by powers of ten per priority level, and boosted for
// adjuncts) dominate, day-structure terms are mid-weight, and consecutive-day
// spread costs the least. Lab over-capacity is effectively hard via a big M.
// Set adjunct_multiplier to 1 for the plain availability objective.
struct Weights {
    double c0 = 1000;                // base availability penalty
    double d4 = 50;                  // period 1 and period 7 on one day
    double dtue = 20;                // full-time professor missing the meeting day
    double dgp2 = 1;                 // 2-period section on consecutive days
    double dgp3 = 1;                 // 3-period section on three consecutive days
    double d5 = 100;                 // no day off
    double ct_regular = 200;         // over-capacity, regular sections (soft mode)
    double ct_lab = 1e6;             // over-capacity big M, labs (soft mode)
    double adjunct_multiplier = 10;  // availability boost for adjunct professors
    int meeting_day = 1;             // day index of the department-meeting day (Tuesday)
};

enum class CapacityMode { Hard, Soft };

}  // namespace ttab
