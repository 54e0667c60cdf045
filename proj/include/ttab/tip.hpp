#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ttab/mip.hpp"
#include "ttab/model.hpp"
#include "ttab/timetable.hpp"
#include "ttab/weights.hpp"

namespace ttab {

// Variable layout of the full timetabling program. Placement variables come
// first and are indexed by position:
//   z: one per candidate assignment, variable i <-> cands[i]
//   w: w_base + 35*prof + 7*day + (period-1), professor-teaching indicators
//   x: x_base + k        <-> xs[k] = (group, section) enrollment
//   u: u_base + 35*k + 7*day + (period-1), group-attends-section indicators
// Penalty and linearization variables follow; decoding needs only z, x and
// the per-section overflow block ts (soft capacity mode).
struct TipIndex {
    std::vector<Candidate> cands;
    std::vector<std::pair<std::string, std::string>> xs;
    int w_base = 0;
    int x_base = 0;
    int u_base = 0;
    int ts_base = -1;  // -1 when capacities are hard
    int num_vars = 0;
};

struct TipSize {
    long long rows = 0;
    long long cols = 0;
};

// Builds the weekly timetabling program over inst.groups: room-exclusive
// placement of every section's meetings, lab contiguity, professor and
// group clash rows, enrollment choice, and the soft-preference penalty
// terms weighted by w. Throws when a section has no compatible room, a lab
// cannot fit any contiguous block, or a curriculum course has no sections.
mip::Model build_tip(const Instance& inst, const Weights& w, CapacityMode mode,
                     TipIndex* index = nullptr);

// Row/column counts build_tip will produce, computed without building.
TipSize predicted_tip_size(const Instance& inst, CapacityMode mode);

// Rounds a solution vector into a Timetable; throws on fractional values
// or a size mismatch. Feasibility is the validator's concern, not ours.
Timetable decode_solution(const Instance& inst, const TipIndex& index,
                          const std::vector<double>& values);

}  // namespace ttab
