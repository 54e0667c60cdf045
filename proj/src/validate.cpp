#include "ttab/validate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace ttab {
namespace {

constexpr double kScoreTol = 1e-6;

std::string slot_str(const TimeGrid& g, int d, int t) {
    return g.day_label(d) + " period " + std::to_string(t);
}

// Same-labtie pairs among the sections a group may take, in id order.
struct TiePairs {
    std::vector<std::pair<int, int>> lecture_lab;
    std::vector<std::pair<int, int>> unordered;
    std::vector<std::pair<int, int>> ordered;
};

TiePairs tie_pairs_for(const Instance& inst, const std::vector<int>& opts) {
    TiePairs tp;
    for (int a : opts) {
        const Section& sa = inst.sections[static_cast<size_t>(a)];
        if (!sa.labtie) continue;
        for (int b : opts) {
            if (a == b) continue;
            const Section& sb = inst.sections[static_cast<size_t>(b)];
            if (!sb.labtie || *sb.labtie != *sa.labtie) continue;
            tp.ordered.emplace_back(a, b);
            if (a < b) tp.unordered.emplace_back(a, b);
            if (!sa.is_lab && sb.is_lab) tp.lecture_lab.emplace_back(a, b);
        }
    }
    return tp;
}

struct View {
    // Meetings of known sections, sorted; unknown ids are reported separately.
    std::map<std::string, std::vector<Meeting>> meets;
    // Enrolled option sections per known group, restricted to real options.
    std::map<std::string, std::vector<int>> enrolled;
    std::vector<std::vector<int>> opts_of_group;  // per group idx, sorted section idxs
};

View resolve(const Instance& inst, const Timetable& tt, std::vector<Violation>* out) {
    View v;
    for (const auto& [sid, ms] : tt.meetings) {
        if (!inst.section_index.count(sid)) {
            if (out) out->push_back({"h1", sid, "unknown section"});
            continue;
        }
        auto sorted = ms;
        std::sort(sorted.begin(), sorted.end());
        v.meets[sid] = std::move(sorted);
    }
    v.opts_of_group.resize(inst.groups.size());
    auto options = group_section_options(inst, inst.groups);
    std::set<std::pair<int, int>> opt_set(options.begin(), options.end());
    for (const auto& [gi, si] : options) v.opts_of_group[static_cast<size_t>(gi)].push_back(si);
    for (const auto& [gid, secs] : tt.enrollments) {
        auto git = inst.group_index.find(gid);
        if (git == inst.group_index.end()) {
            if (out) out->push_back({"h9", gid, "unknown group"});
            continue;
        }
        for (const auto& sid : secs) {
            auto sit = inst.section_index.find(sid);
            if (sit == inst.section_index.end()) {
                if (out) out->push_back({"h9", gid, "enrolled in unknown section " + sid});
                continue;
            }
            if (!opt_set.count({git->second, sit->second})) {
                if (out)
                    out->push_back({"h9", gid, "enrolled in " + sid + " which is not an option"});
                continue;
            }
            v.enrolled[gid].push_back(sit->second);
        }
    }
    for (auto& [gid, secs] : v.enrolled) std::sort(secs.begin(), secs.end());
    return v;
}

const std::vector<Meeting>& meetings_of(const View& v, const std::string& sid) {
    static const std::vector<Meeting> empty;
    auto it = v.meets.find(sid);
    return it == v.meets.end() ? empty : it->second;
}

int count_at(const std::vector<Meeting>& ms, int d, int t) {
    int n = 0;
    for (const auto& m : ms)
        if (m.day == d && m.period == t) n++;
    return n;
}

int count_on_day(const std::vector<Meeting>& ms, int d) {
    int n = 0;
    for (const auto& m : ms)
        if (m.day == d) n++;
    return n;
}

}  // namespace

std::vector<Violation> check_hard(const Instance& inst, const Timetable& tt) {
    std::vector<Violation> out;
    const TimeGrid& grid = inst.grid;
    View v = resolve(inst, tt, &out);
    auto add = [&](const char* family, const std::string& subject, const std::string& detail) {
        out.push_back({family, subject, detail});
    };

    // Meeting counts, slot sanity, room compatibility, duplicates.
    for (const Section& s : inst.sections) {
        const auto& ms = meetings_of(v, s.id);
        if (static_cast<int>(ms.size()) != s.periods)
            add("h1", s.id,
                "has " + std::to_string(ms.size()) + " meetings but needs " +
                    std::to_string(s.periods));
        std::set<std::tuple<int, int, std::string>> seen;
        for (const Meeting& m : ms) {
            if (m.day < 0 || m.day >= grid.num_days() || m.period < grid.first_period ||
                m.period > grid.last_period) {
                add("h1", s.id, "meeting outside the week grid");
                continue;
            }
            if (!seen.insert({m.day, m.period, m.room}).second)
                add("h1", s.id, "duplicate meeting at " + slot_str(grid, m.day, m.period));
            auto rit = inst.room_index.find(m.room);
            if (rit == inst.room_index.end()) {
                add("h1", s.id, "unknown room " + m.room);
                continue;
            }
            const Room& r = inst.rooms[static_cast<size_t>(rit->second)];
            if (r.room_type != s.room_type)
                add("h1", s.id, "room " + r.id + " is " + r.room_type + " not " + s.room_type);
            else if (r.capacity < s.capacity)
                add("h1", s.id,
                    "room " + r.id + " seats " + std::to_string(r.capacity) + " < " +
                        std::to_string(s.capacity));
        }
    }

    // Linked sections meet at identical slots.
    {
        std::map<int, std::vector<int>> links;
        for (size_t si = 0; si < inst.sections.size(); ++si)
            if (inst.sections[si].link) links[*inst.sections[si].link].push_back(static_cast<int>(si));
        for (const auto& [link, secs] : links)
            for (size_t a = 0; a < secs.size(); ++a)
                for (size_t b = a + 1; b < secs.size(); ++b) {
                    const Section& s1 = inst.sections[static_cast<size_t>(secs[a])];
                    const Section& s2 = inst.sections[static_cast<size_t>(secs[b])];
                    std::set<std::pair<int, int>> t1, t2;
                    for (const auto& m : meetings_of(v, s1.id)) t1.insert({m.day, m.period});
                    for (const auto& m : meetings_of(v, s2.id)) t2.insert({m.day, m.period});
                    if (t1 != t2)
                        add("h2", s1.id, "not simultaneous with linked " + s2.id);
                }
    }

    // At most one section per room and slot.
    {
        std::map<std::tuple<int, int, std::string>, std::vector<std::string>> by_room;
        for (const auto& [sid, ms] : v.meets)
            for (const auto& m : ms) by_room[{m.day, m.period, m.room}].push_back(sid);
        for (const auto& [key, sids] : by_room)
            if (sids.size() > 1) {
                std::string who = sids[0];
                for (size_t i = 1; i < sids.size(); ++i) who += " and " + sids[i];
                add("h3", std::get<2>(key),
                    who + " share " + slot_str(grid, std::get<0>(key), std::get<1>(key)));
            }
    }

    // Mandates.
    for (const Section& s : inst.sections) {
        const auto& ms = meetings_of(v, s.id);
        for (size_t mi = 0; mi < s.mandates.size(); ++mi) {
            const Mandate& md = s.mandates[mi];
            if (md.period) {
                if (count_at(ms, md.day, *md.period) != 1)
                    add("h4", s.id, "not meeting exactly once at mandated " +
                                        slot_str(grid, md.day, *md.period));
            } else if (count_on_day(ms, md.day) < 1) {
                add("h4", s.id, "no meeting on mandated " + grid.day_label(md.day));
            }
        }
    }

    // Lectures: at most one period per day.
    for (const Section& s : inst.sections) {
        if (s.is_lab) continue;
        const auto& ms = meetings_of(v, s.id);
        for (int d = 0; d < grid.num_days(); ++d) {
            int n = count_on_day(ms, d);
            if (n > 1)
                add("h5", s.id, std::to_string(n) + " meetings on " + grid.day_label(d));
        }
    }

    // Labs: one contiguous same-room block that does not straddle lunch.
    for (const Section& s : inst.sections) {
        if (!s.is_lab) continue;
        const auto& ms = meetings_of(v, s.id);
        if (ms.empty()) continue;  // already an h1 finding
        std::set<int> days, periods;
        std::set<std::string> rooms;
        for (const auto& m : ms) {
            days.insert(m.day);
            periods.insert(m.period);
            rooms.insert(m.room);
        }
        if (days.size() > 1) {
            add("h6", s.id, "meets on " + std::to_string(days.size()) + " days");
            continue;
        }
        if (rooms.size() > 1) add("h6", s.id, "block spans several rooms");
        int lo = *periods.begin(), hi = *periods.rbegin();
        if (hi - lo + 1 != static_cast<int>(periods.size()))
            add("h6", s.id, "block is not contiguous");
        else if (lo <= grid.lunch_boundary.first && hi >= grid.lunch_boundary.second)
            add("h6", s.id, "block straddles lunch");
    }

    std::vector<std::vector<int>> secs_of_prof(inst.professors.size());
    for (size_t si = 0; si < inst.sections.size(); ++si)
        secs_of_prof[static_cast<size_t>(inst.sections[si].prof_idx)].push_back(
            static_cast<int>(si));

    // A professor's own sections meet at disjoint times.
    for (size_t pi = 0; pi < inst.professors.size(); ++pi) {
        std::map<std::pair<int, int>, std::vector<std::string>> at;
        for (int si : secs_of_prof[pi]) {
            const Section& s = inst.sections[static_cast<size_t>(si)];
            for (const auto& m : meetings_of(v, s.id)) at[{m.day, m.period}].push_back(s.id);
        }
        for (const auto& [slot, sids] : at)
            if (sids.size() > 1) {
                std::string who = sids[0];
                for (size_t i = 1; i < sids.size(); ++i) who += " and " + sids[i];
                add("h7", inst.professors[pi].id,
                    who + " collide at " + slot_str(grid, slot.first, slot.second));
            }
    }

    // Co-professors cannot teach their own sections in parallel.
    {
        for (const Section& s : inst.sections) {
            std::set<std::string> cps(s.coprofs.begin(), s.coprofs.end());
            for (const auto& cp : cps) {
                int pi = inst.prof_of(cp);
                for (const auto& m : meetings_of(v, s.id))
                    for (int si2 : secs_of_prof[static_cast<size_t>(pi)]) {
                        const Section& other = inst.sections[static_cast<size_t>(si2)];
                        if (count_at(meetings_of(v, other.id), m.day, m.period) > 0)
                            add("h8", s.id,
                                "co-professor " + cp + " teaches " + other.id + " at " +
                                    slot_str(grid, m.day, m.period));
                    }
            }
        }
    }

    // One section of every curriculum course.
    for (const Group& g : inst.groups) {
        auto it = v.enrolled.find(g.id);
        const std::vector<int> none;
        const std::vector<int>& en = it == v.enrolled.end() ? none : it->second;
        for (const auto& course : g.curriculum) {
            int ci = inst.course_of(course);
            int n = 0;
            for (int si : en)
                if (inst.sections[static_cast<size_t>(si)].course_idx == ci) n++;
            if (n != 1)
                add("h9", g.id,
                    std::to_string(n) + " sections of " + course + " chosen instead of 1");
        }
    }

    // No two attended sections at the same slot.
    for (const Group& g : inst.groups) {
        auto it = v.enrolled.find(g.id);
        if (it == v.enrolled.end()) continue;
        std::map<std::pair<int, int>, std::vector<std::string>> at;
        for (int si : it->second) {
            const Section& s = inst.sections[static_cast<size_t>(si)];
            for (const auto& m : meetings_of(v, s.id)) at[{m.day, m.period}].push_back(s.id);
        }
        for (const auto& [slot, sids] : at)
            if (sids.size() > 1) {
                std::string who = sids[0];
                for (size_t i = 1; i < sids.size(); ++i) who += " and " + sids[i];
                add("h10", g.id, who + " clash at " + slot_str(grid, slot.first, slot.second));
            }
    }

    // Tied lecture comes with the lab; day-sharing limits between tied pairs.
    for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
        const Group& g = inst.groups[gi];
        auto it = v.enrolled.find(g.id);
        std::set<int> en;
        if (it != v.enrolled.end()) en.insert(it->second.begin(), it->second.end());
        TiePairs tp = tie_pairs_for(inst, v.opts_of_group[gi]);
        for (const auto& [s0, s1] : tp.lecture_lab)
            if (en.count(s1) && !en.count(s0))
                add("h11", g.id,
                    "takes lab " + inst.sections[static_cast<size_t>(s1)].id + " without " +
                        inst.sections[static_cast<size_t>(s0)].id);
        for (const auto& [s0, s1] : tp.unordered) {
            if (!en.count(s0) || !en.count(s1)) continue;
            const Section& a = inst.sections[static_cast<size_t>(s0)];
            const Section& b = inst.sections[static_cast<size_t>(s1)];
            for (int d = 0; d < grid.num_days(); ++d) {
                int n = count_on_day(meetings_of(v, a.id), d) + count_on_day(meetings_of(v, b.id), d);
                if (n > 4)
                    add("h13", g.id,
                        a.id + " and " + b.id + " share " + std::to_string(n) + " periods on " +
                            grid.day_label(d));
            }
        }
        for (const auto& [s0, s1] : tp.ordered) {
            if (!en.count(s0) || !en.count(s1)) continue;
            const Section& a = inst.sections[static_cast<size_t>(s0)];
            const Section& b = inst.sections[static_cast<size_t>(s1)];
            for (int d = 0; d < grid.num_days(); ++d)
                for (int t = grid.first_period; t + 1 <= grid.last_period; ++t) {
                    if (t == grid.lunch_boundary.first) continue;
                    if (count_at(meetings_of(v, a.id), d, t) > 0 &&
                        count_at(meetings_of(v, b.id), d, t + 1) > 0)
                        add("h14", g.id,
                            b.id + " follows " + a.id + " directly at " +
                                slot_str(grid, d, t + 1));
                }
        }
    }

    // Loads fit capacity plus declared overflow.
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        long long load = 0;
        for (const auto& [gid, secs] : v.enrolled)
            if (std::binary_search(secs.begin(), secs.end(), static_cast<int>(si)))
                load += inst.groups[static_cast<size_t>(inst.group_of(gid))].size;
        long long allow = 0;
        auto oit = tt.over_capacity.find(s.id);
        if (oit != tt.over_capacity.end()) allow = oit->second;
        if (load > s.capacity + allow)
            add("h12", s.id,
                "load " + std::to_string(load) + " exceeds capacity " +
                    std::to_string(s.capacity) +
                    (allow ? " plus overflow " + std::to_string(allow) : ""));
    }

    return out;
}

PenaltyBreakdown score_soft(const Instance& inst, const Timetable& tt, const Weights& w,
                            CapacityMode mode) {
    PenaltyBreakdown b;
    const TimeGrid& grid = inst.grid;
    View v = resolve(inst, tt, nullptr);

    std::vector<std::set<std::pair<int, int>>> teach(inst.professors.size());
    std::vector<std::set<std::pair<int, int>>> attend(inst.professors.size());
    for (const Section& s : inst.sections) {
        const auto& ms = meetings_of(v, s.id);
        for (const auto& m : ms)
            teach[static_cast<size_t>(s.prof_idx)].insert({m.day, m.period});
        std::set<std::string> cps(s.coprofs.begin(), s.coprofs.end());
        for (const auto& cp : cps) {
            size_t pi = static_cast<size_t>(inst.prof_of(cp));
            for (const auto& m : ms) attend[pi].insert({m.day, m.period});
        }
    }

    std::set<std::string> fulltime = fulltime_professors(inst);
    for (size_t pi = 0; pi < inst.professors.size(); ++pi) {
        const Professor& p = inst.professors[pi];
        for (int d = 0; d < grid.num_days(); ++d)
            for (int t = grid.first_period; t <= grid.last_period; ++t) {
                int av = p.avail(d, t);
                if (av > 0) continue;
                if (!teach[pi].count({d, t}) && !attend[pi].count({d, t})) continue;
                double scale = av == 0 ? 1.0 : av == -1 ? 10.0 : 100.0;
                double cost = w.c0 * scale * (p.is_adjunct ? w.adjunct_multiplier : 1.0);
                b.availability.push_back({p.id, d, t, av, cost});
                b.availability_total += cost;
            }
        bool day[TimeGrid::kDays] = {};
        for (const auto& [d, t] : teach[pi]) day[d] = true;
        int ndays = 0;
        for (int d = 0; d < grid.num_days(); ++d) {
            if (day[d]) ndays++;
            if (teach[pi].count({d, grid.first_period}) && teach[pi].count({d, grid.last_period}))
                b.first_last_days++;
        }
        if (ndays == grid.num_days()) b.no_day_off++;
        if (fulltime.count(p.id) && !day[w.meeting_day]) b.missed_meeting_days++;
    }

    for (const Section& s : inst.sections) {
        if (s.is_lab || (s.periods != 2 && s.periods != 3)) continue;
        bool day[TimeGrid::kDays] = {};
        for (const auto& m : meetings_of(v, s.id)) day[m.day] = true;
        if (s.periods == 2) {
            for (int d = 0; d + 1 < grid.num_days(); ++d)
                if (day[d] && day[d + 1]) b.consecutive_pairs++;
        } else {
            for (int d = 0; d + 2 < grid.num_days(); ++d)
                if (day[d] && day[d + 1] && day[d + 2]) b.consecutive_triples++;
        }
    }

    if (mode == CapacityMode::Soft) {
        for (size_t si = 0; si < inst.sections.size(); ++si) {
            const Section& s = inst.sections[si];
            long long load = 0;
            for (const auto& [gid, secs] : v.enrolled)
                if (std::binary_search(secs.begin(), secs.end(), static_cast<int>(si)))
                    load += inst.groups[static_cast<size_t>(inst.group_of(gid))].size;
            if (load > s.capacity) {
                int over = static_cast<int>(load - s.capacity);
                b.overflow[s.id] = over;
                b.overflow_total += (s.is_lab ? w.ct_lab : w.ct_regular) * over;
            }
        }
    }

    b.total = b.availability_total + w.d4 * b.first_last_days + w.dtue * b.missed_meeting_days +
              w.dgp2 * b.consecutive_pairs + w.dgp3 * b.consecutive_triples + w.d5 * b.no_day_off +
              b.overflow_total;
    return b;
}

AuditResult audit(const Instance& inst, const Timetable& tt, const Weights& w, CapacityMode mode,
                  double claimed_objective) {
    AuditResult r;
    r.violations = check_hard(inst, tt);
    r.breakdown = score_soft(inst, tt, w, mode);
    r.claimed = claimed_objective;
    r.ok = r.violations.empty() && std::abs(r.breakdown.total - claimed_objective) <= kScoreTol;
    return r;
}

void write_violations_csv(const std::string& path, const std::vector<Violation>& violations) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "family,subject,detail\n";
    for (const auto& x : violations) out << x.family << "," << x.subject << "," << x.detail << "\n";
}

}  // namespace ttab
