#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ttab/mip.hpp"
#include "ttab/model.hpp"

namespace ttab {

// Variable handles for the packing program built by build_ipa.
struct IpaIndex {
    std::map<std::pair<std::string, std::string>, int> x;  // (group, section) -> var
    std::map<std::string, int> t;                          // section -> overflow var
};

// Seat-assignment program: every group picks one section per curriculum
// course; section loads may exceed capacity by an integer overflow t >= 0
// whose sum is minimized. Lab enrollment implies enrollment in the tied
// lecture. Binary x variables are emitted largest-group first, which keeps
// the branch-and-bound dives short.
mip::Model build_ipa(const Instance& inst, const std::vector<Group>& groups,
                     IpaIndex* index = nullptr);

// Splits g into "<id>.1" (size - part) and "<id>.2" (part), both inheriting
// the curriculum and recording g as lineage. part must be in [1, size-1].
std::pair<Group, Group> split_group(const Group& g, int part);

struct SubgroupStep {
    int iter = 0;         // 1-based split ordinal
    long long z = 0;      // packing optimum that triggered the split
    std::string section;  // most overloaded section
    std::string group;    // group that was split
    int part = 0;         // size moved into the ".2" child
};

struct SubgroupResult {
    std::vector<Group> final_groups;
    int iterations = 0;  // number of splits performed
    long long final_z = 0;
    std::vector<SubgroupStep> history;
    // (group, course) -> section chosen in the final zero-overflow packing.
    std::map<std::pair<std::string, std::string>, std::string> assignment;
};

struct SubgroupOptions {
    int max_iter = 200;
};

using SolveFn = std::function<mip::SolveResult(const mip::Model&)>;

// Repeatedly solves the packing program to optimality; while the total
// overflow z is positive, splits the largest group enrolled in the most
// overloaded section (ties by id) by that section's overflow, then re-solves.
// Throws when the program is infeasible, a solve fails or hits a limit,
// z ever increases, no group is splittable, or max_iter splits pass
// without reaching z = 0.
SubgroupResult run_subgroup(const Instance& inst, const SolveFn& solve,
                            const SubgroupOptions& opt = {});
SubgroupResult run_subgroup(const Instance& inst, const SubgroupOptions& opt = {});

// CSV trace, one line per split: iter,z,section,group,part
void write_subgroup_log(const std::string& path, const std::vector<SubgroupStep>& history);

}  // namespace ttab
