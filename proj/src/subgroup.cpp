#include "ttab/subgroup.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace ttab {
namespace {

std::string xname(const std::string& g, const std::string& s) { return "x[" + g + "," + s + "]"; }
std::string tname(const std::string& s) { return "t[" + s + "]"; }

}  // namespace

mip::Model build_ipa(const Instance& inst, const std::vector<Group>& groups, IpaIndex* index) {
    mip::Model m("ipa");
    auto options = group_section_options(inst, groups);

    // Per-group option lists and per-section eligible-group lists.
    std::vector<std::vector<int>> opts_of_group(groups.size());
    std::vector<std::vector<int>> groups_of_section(inst.sections.size());
    for (const auto& [gi, si] : options) {
        opts_of_group[static_cast<size_t>(gi)].push_back(si);
        groups_of_section[static_cast<size_t>(si)].push_back(gi);
    }

    std::vector<int> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const Group& ga = groups[static_cast<size_t>(a)];
        const Group& gb = groups[static_cast<size_t>(b)];
        if (ga.size != gb.size) return ga.size > gb.size;
        return ga.id < gb.id;
    });

    IpaIndex local;
    IpaIndex& ix = index ? *index : local;
    ix.x.clear();
    ix.t.clear();

    for (int gi : order) {
        const Group& g = groups[static_cast<size_t>(gi)];
        for (int si : opts_of_group[static_cast<size_t>(gi)]) {
            const Section& s = inst.sections[static_cast<size_t>(si)];
            ix.x[{g.id, s.id}] = m.add_binary(xname(g.id, s.id));
        }
    }
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        long long eligible = 0;
        for (int gi : groups_of_section[si]) eligible += groups[static_cast<size_t>(gi)].size;
        double ub = std::max(0.0, static_cast<double>(eligible - s.capacity));
        ix.t[s.id] = m.add_integer(tname(s.id), 0, ub, 1.0);
    }

    // One section per curriculum course.
    for (const auto& g : groups) {
        for (const auto& course : g.curriculum) {
            int ci = inst.course_of(course);
            const auto& secs = inst.sections_of_course(ci);
            if (secs.empty())
                throw std::runtime_error("course " + course + " has no sections (group " +
                                         g.id + ")");
            std::vector<mip::Term> terms;
            for (int si : secs)
                terms.push_back({ix.x.at({g.id, inst.sections[static_cast<size_t>(si)].id}), 1.0});
            m.add_constraint("enroll[" + g.id + "," + course + "]", terms, mip::Sense::Eq, 1.0);
        }
    }

    // Load fits capacity plus overflow.
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        std::vector<mip::Term> terms;
        for (int gi : groups_of_section[si]) {
            const Group& g = groups[static_cast<size_t>(gi)];
            terms.push_back({ix.x.at({g.id, s.id}), static_cast<double>(g.size)});
        }
        terms.push_back({ix.t.at(s.id), -1.0});
        m.add_constraint("cap[" + s.id + "]", terms, mip::Sense::Le,
                         static_cast<double>(s.capacity));
    }

    // Lab enrollment implies the tied lecture.
    for (const auto& g : groups) {
        for (const auto& s0 : inst.sections) {
            if (s0.is_lab || !s0.labtie) continue;
            if (!ix.x.count({g.id, s0.id})) continue;
            for (const auto& s1 : inst.sections) {
                if (!s1.is_lab || !s1.labtie || *s1.labtie != *s0.labtie) continue;
                if (!ix.x.count({g.id, s1.id})) continue;
                m.add_constraint("labtie[" + g.id + "," + s0.id + "," + s1.id + "]",
                                 {{ix.x.at({g.id, s0.id}), 1.0}, {ix.x.at({g.id, s1.id}), -1.0}},
                                 mip::Sense::Ge, 0.0);
            }
        }
    }

    return m;
}

std::pair<Group, Group> split_group(const Group& g, int part) {
    if (part < 1 || part >= g.size)
        throw std::invalid_argument("cannot split group " + g.id + " of size " +
                                    std::to_string(g.size) + " at " + std::to_string(part));
    Group a = g;
    Group b = g;
    a.id = g.id + ".1";
    a.size = g.size - part;
    a.lineage = g.id;
    b.id = g.id + ".2";
    b.size = part;
    b.lineage = g.id;
    return {std::move(a), std::move(b)};
}

SubgroupResult run_subgroup(const Instance& inst, const SolveFn& solve,
                            const SubgroupOptions& opt) {
    std::vector<Group> groups = inst.groups;
    SubgroupResult res;
    long long prev_z = -1;

    for (;;) {
        IpaIndex ix;
        mip::Model m = build_ipa(inst, groups, &ix);
        mip::SolveResult sr = solve(m);
        if (sr.status == mip::Status::Infeasible)
            throw std::runtime_error("packing program is infeasible");
        if (sr.status != mip::Status::Optimal || !sr.has_solution)
            throw std::runtime_error("packing solve did not reach an optimum: " +
                                     std::string(mip::status_name(sr.status)) +
                                     (sr.message.empty() ? "" : " (" + sr.message + ")"));
        long long z = std::llround(sr.objective);
        if (prev_z >= 0 && z > prev_z)
            throw std::logic_error("overflow grew from " + std::to_string(prev_z) + " to " +
                                   std::to_string(z) + " after a split");
        prev_z = z;

        if (z == 0) {
            res.final_groups = groups;
            res.final_z = 0;
            for (const auto& g : groups)
                for (const auto& course : g.curriculum)
                    for (int si : inst.sections_of_course(inst.course_of(course))) {
                        const std::string& sid = inst.sections[static_cast<size_t>(si)].id;
                        auto it = ix.x.find({g.id, sid});
                        if (it != ix.x.end() && sr.values[static_cast<size_t>(it->second)] > 0.5)
                            res.assignment[{g.id, course}] = sid;
                    }
            return res;
        }
        if (res.iterations >= opt.max_iter)
            throw std::runtime_error("overflow still " + std::to_string(z) + " after " +
                                     std::to_string(res.iterations) + " splits");

        // Most overloaded section, ties to the smaller id.
        std::string r;
        long long tr = 0;
        for (const auto& s : inst.sections) {
            long long t = std::llround(sr.values[static_cast<size_t>(ix.t.at(s.id))]);
            if (t > tr) {
                tr = t;
                r = s.id;
            }
        }

        // Largest enrolled group, ties to the smaller id.
        int chosen = -1;
        for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
            const Group& g = groups[static_cast<size_t>(gi)];
            auto it = ix.x.find({g.id, r});
            if (it == ix.x.end() || sr.values[static_cast<size_t>(it->second)] < 0.5) continue;
            if (chosen < 0 || g.size > groups[static_cast<size_t>(chosen)].size ||
                (g.size == groups[static_cast<size_t>(chosen)].size &&
                 g.id < groups[static_cast<size_t>(chosen)].id))
                chosen = gi;
        }
        if (chosen < 0)
            throw std::logic_error("section " + r + " overflows but no group is enrolled");
        Group g = groups[static_cast<size_t>(chosen)];
        if (g.size < 2)
            throw std::runtime_error("section " + r + " overflows by " + std::to_string(tr) +
                                     " but every enrolled group has size 1");
        int part = tr < g.size ? static_cast<int>(tr) : g.size / 2;

        res.history.push_back({static_cast<int>(res.history.size()) + 1, z, r, g.id, part});
        auto [a, b] = split_group(g, part);
        groups[static_cast<size_t>(chosen)] = std::move(a);
        groups.insert(groups.begin() + chosen + 1, std::move(b));
        res.iterations++;
    }
}

SubgroupResult run_subgroup(const Instance& inst, const SubgroupOptions& opt) {
    return run_subgroup(
        inst, [](const mip::Model& m) { return mip::solve_exact(m, {}); }, opt);
}

void write_subgroup_log(const std::string& path, const std::vector<SubgroupStep>& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "iter,z,section,group,part\n";
    for (const auto& h : history)
        out << h.iter << "," << h.z << "," << h.section << "," << h.group << "," << h.part << "\n";
}

}  // namespace ttab
