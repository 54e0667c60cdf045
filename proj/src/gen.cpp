#include "ttab/gen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "ttab/ingest.hpp"

namespace ttab {
namespace {

// mt19937_64 with modulo draws: slightly biased but identical on every
// platform, unlike std::uniform_int_distribution.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    int next(int n) {
        return n <= 1 ? 0 : static_cast<int>(eng() % static_cast<std::uint64_t>(n));
    }
    int range(int lo, int hi) { return lo + next(hi - lo + 1); }
    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<size_t>(next(static_cast<int>(v.size())))];
    }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[static_cast<size_t>(i)], v[static_cast<size_t>(next(i + 1))]);
    }
};

using Slot = std::pair<int, int>;  // (day, 1-based period)

struct GCourse {
    std::string id;
    int periods = 0;
    bool is_lab = false;
    int companion = -1;  // its tied lecture (for a lab) / its lab (for that lecture)
    std::vector<Slot> track;
    int lab_day = -1;
    std::vector<int> caps;             // per copy
    std::vector<int> ties;             // per copy, 0 = none
    std::vector<std::string> sec_ids;  // per copy
};

GCourse make_course(std::string id, int periods, bool is_lab = false, int companion = -1) {
    GCourse c;
    c.id = std::move(id);
    c.periods = periods;
    c.is_lab = is_lab;
    c.companion = companion;
    return c;
}

// Contiguous period runs of length len that avoid lunch (between 4 and 5).
std::vector<std::vector<int>> lab_blocks(const TimeGrid& grid, int len) {
    std::vector<std::vector<int>> out;
    auto push_runs = [&](int lo, int hi) {
        for (int a = lo; a + len - 1 <= hi; ++a) {
            std::vector<int> run;
            for (int t = a; t < a + len; ++t) run.push_back(t);
            out.push_back(std::move(run));
        }
    };
    push_runs(grid.first_period, grid.lunch_boundary.first);
    push_runs(grid.lunch_boundary.second, grid.last_period);
    return out;
}

// Day subsets following the no-penalty patterns: 2 days at distance >= 2,
// 3 days never fully consecutive, otherwise any k days.
std::vector<std::vector<int>> day_patterns(const std::vector<int>& days, int k) {
    std::vector<std::vector<int>> out;
    int n = static_cast<int>(days.size());
    std::vector<int> idx(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) {
            std::vector<int> pick;
            for (int i : idx) pick.push_back(days[static_cast<size_t>(i)]);
            if (k == 2 && pick[1] - pick[0] < 2) return;
            if (k == 3 && pick[1] == pick[0] + 1 && pick[2] == pick[1] + 1) return;
            out.push_back(std::move(pick));
            return;
        }
        for (int i = start; i <= n - (k - depth); ++i) {
            idx[static_cast<size_t>(depth)] = i;
            self(self, i + 1, depth + 1);
        }
    };
    if (k <= n) rec(rec, 0, 0);
    return out;
}

void check_params(const GenParams& p) {
    auto bad = [](const std::string& what) { throw std::invalid_argument("gen: " + what); };
    if (p.n_groups < 1) bad("n_groups must be positive");
    if (p.n_courses < 1) bad("n_courses must be positive");
    if (p.group_size_min < 1 || p.group_size_max < p.group_size_min) bad("bad group size range");
    if (p.copies_min < 1 || p.copies_max < p.copies_min) bad("bad copies range");
    if (p.cap_min < 1 || p.cap_max < p.cap_min) bad("bad capacity range");
    if (p.curriculum_min < 1 || p.curriculum_max < p.curriculum_min) bad("bad curriculum range");
    if (p.lab_fraction < 0 || p.lab_fraction > 1) bad("lab_fraction out of [0,1]");
    if (p.availability_block_fraction < 0 || p.availability_block_fraction > 1)
        bad("availability_block_fraction out of [0,1]");
    if (p.n_professors < 1) bad("n_professors must be positive");
    if (p.n_rooms < 0) bad("n_rooms must not be negative");
    if (p.room_type_count < 1) bad("room_type_count must be positive");
    if (p.size_skew <= 0) bad("size_skew must be positive");
    if (p.dense && p.n_courses != 7) bad("dense mode needs exactly 7 courses");
}

}  // namespace

GenResult generate(const GenParams& p) {
    check_params(p);
    TimeGrid grid;
    Rng rng(p.seed);

    // --- courses (labs paired with a tied lecture) ---------------------------
    std::vector<GCourse> courses;
    if (p.dense) {
        for (int i = 0; i < 7; ++i) courses.push_back(make_course("C" + std::to_string(i + 1), 5));
    } else {
        const std::vector<int> lab_periods = {2, 3, 4};
        const std::vector<int> lect_periods = {2, 3};
        const std::vector<int> single_periods = {2, 3, 5};
        while (static_cast<int>(courses.size()) < p.n_courses) {
            int i = static_cast<int>(courses.size());
            bool pair = i + 1 < p.n_courses && rng.unit() < 2.0 * p.lab_fraction;
            if (pair) {
                courses.push_back(
                    make_course("C" + std::to_string(i + 1), rng.pick(lab_periods), true, i + 1));
                courses.push_back(
                    make_course("C" + std::to_string(i + 2), rng.pick(lect_periods), false, i));
            } else {
                courses.push_back(
                    make_course("C" + std::to_string(i + 1), rng.pick(single_periods)));
            }
        }
    }
    int nc = static_cast<int>(courses.size());

    // --- published groups ----------------------------------------------------
    // Units keep a lab and its lecture together so curricula stay closed.
    std::vector<std::vector<int>> units;
    for (int i = 0; i < nc; ++i) {
        if (courses[static_cast<size_t>(i)].is_lab)
            units.push_back({i, courses[static_cast<size_t>(i)].companion});
        else if (courses[static_cast<size_t>(i)].companion < 0)
            units.push_back({i});
    }
    const int week = grid.num_days() * grid.num_periods();

    std::vector<Group> groups;
    for (int gi = 0; gi < p.n_groups; ++gi) {
        Group g;
        g.id = "G" + std::to_string(gi + 1);
        int span = p.group_size_max - p.group_size_min + 1;
        g.size = p.group_size_min +
                 static_cast<int>(std::floor(span * std::pow(rng.unit(), p.size_skew)));
        g.size = std::min(g.size, p.group_size_max);
        std::vector<int> picked;
        if (p.dense) {
            for (int i = 0; i < nc; ++i) picked.push_back(i);
        } else {
            int target = rng.range(p.curriculum_min, p.curriculum_max);
            int budget = week;
            auto order = units;
            rng.shuffle(order);
            for (const auto& u : order) {
                if (static_cast<int>(picked.size()) >= target) break;
                int per = 0;
                for (int c : u) per += courses[static_cast<size_t>(c)].periods;
                if (per > budget) continue;
                for (int c : u) picked.push_back(c);
                budget -= per;
            }
            if (picked.empty()) picked = order.front();  // smallest unit always fits a week
        }
        for (int c : picked) g.curriculum.push_back(courses[static_cast<size_t>(c)].id);
        std::sort(g.curriculum.begin(), g.curriculum.end());
        groups.push_back(std::move(g));
    }

    // --- clash graph over courses sharing a curriculum -----------------------
    std::map<std::string, int> course_pos;
    for (int i = 0; i < nc; ++i) course_pos[courses[static_cast<size_t>(i)].id] = i;
    std::vector<std::set<int>> adj(static_cast<size_t>(nc));
    for (const auto& g : groups)
        for (const auto& a : g.curriculum)
            for (const auto& b : g.curriculum)
                if (a != b) adj[static_cast<size_t>(course_pos[a])].insert(course_pos[b]);

    // --- weekly tracks, one per course ---------------------------------------
    auto forbidden_for = [&](int ci) {
        std::set<Slot> out;
        for (int nb : adj[static_cast<size_t>(ci)])
            for (const Slot& s : courses[static_cast<size_t>(nb)].track) out.insert(s);
        return out;
    };
    auto lay_lecture = [&](int ci, const std::vector<int>& days) {
        GCourse& c = courses[static_cast<size_t>(ci)];
        auto forb = forbidden_for(ci);
        auto sets = c.periods == static_cast<int>(days.size())
                        ? std::vector<std::vector<int>>{days}
                        : day_patterns(days, c.periods);
        if (sets.empty()) return false;
        for (int attempt = 0; attempt < 500; ++attempt) {
            const auto& ds = sets[static_cast<size_t>(rng.next(static_cast<int>(sets.size())))];
            std::vector<Slot> track;
            bool ok = true;
            for (int d : ds) {
                std::vector<int> free;
                for (int t = grid.first_period; t <= grid.last_period; ++t)
                    if (!forb.count({d, t})) free.push_back(t);
                if (free.empty()) {
                    ok = false;
                    break;
                }
                track.push_back({d, rng.pick(free)});
            }
            if (!ok) continue;
            c.track = std::move(track);
            return true;
        }
        return false;
    };
    auto lay_lab = [&](int ci) {
        GCourse& c = courses[static_cast<size_t>(ci)];
        auto forb = forbidden_for(ci);
        auto blocks = lab_blocks(grid, c.periods);
        for (int attempt = 0; attempt < 500; ++attempt) {
            int d = rng.next(grid.num_days());
            const auto& blk = blocks[static_cast<size_t>(rng.next(static_cast<int>(blocks.size())))];
            bool ok = true;
            for (int t : blk)
                if (forb.count({d, t})) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (int t : blk) c.track.push_back({d, t});
            c.lab_day = d;
            return true;
        }
        return false;
    };

    if (p.dense) {
        // Rotated profile: courses i and j never share a period on any day.
        for (int i = 0; i < nc; ++i)
            for (int d = 0; d < grid.num_days(); ++d)
                courses[static_cast<size_t>(i)].track.push_back({d, (i + d) % 7 + 1});
    } else {
        std::vector<int> all_days;
        for (int d = 0; d < grid.num_days(); ++d) all_days.push_back(d);
        // One greedy pass can corner itself when the clash graph is dense, so
        // retry the whole layout with fresh draws before declaring defeat.
        auto lay_all = [&]() -> std::string {
            for (auto& c : courses) {
                c.track.clear();
                c.lab_day = -1;
            }
            for (int i = 0; i < nc; ++i) {
                GCourse& c = courses[static_cast<size_t>(i)];
                if (!c.is_lab) continue;
                if (!lay_lab(i)) return "no block for course " + c.id;
                std::vector<int> days;
                for (int d : all_days)
                    if (d != c.lab_day) days.push_back(d);
                if (!lay_lecture(c.companion, days))
                    return "no track for course " + courses[static_cast<size_t>(c.companion)].id;
            }
            for (int i = 0; i < nc; ++i) {
                GCourse& c = courses[static_cast<size_t>(i)];
                if (c.is_lab || c.companion >= 0) continue;
                if (!lay_lecture(i, all_days)) return "no track for course " + c.id;
            }
            return "";
        };
        std::string err;
        for (int round = 0; round < 40; ++round) {
            err = lay_all();
            if (err.empty()) break;
        }
        if (!err.empty()) throw std::runtime_error("generation failed: " + err);
    }
    for (auto& c : courses) std::sort(c.track.begin(), c.track.end());

    // --- section copies until seats cover demand -----------------------------
    std::vector<long long> demand(static_cast<size_t>(nc), 0);
    for (const auto& g : groups)
        for (const auto& cid : g.curriculum)
            demand[static_cast<size_t>(course_pos[cid])] += g.size;

    int tie_counter = 0;
    for (int i = 0; i < nc; ++i) {
        GCourse& c = courses[static_cast<size_t>(i)];
        if (!c.is_lab && c.companion >= 0) continue;  // mirrored below
        int ncopies = rng.range(p.copies_min, p.copies_max);
        for (int j = 0; j < ncopies; ++j) c.caps.push_back(rng.range(p.cap_min, p.cap_max));
        long long have = 0;
        for (int cap : c.caps) have += cap;
        while (have < demand[static_cast<size_t>(i)]) {
            c.caps.push_back(rng.range(p.cap_min, p.cap_max));
            have += c.caps.back();
        }
        if (c.is_lab) {
            GCourse& e = courses[static_cast<size_t>(c.companion)];
            e.caps = c.caps;
            for (size_t j = 0; j < c.caps.size(); ++j) {
                c.ties.push_back(++tie_counter);
                e.ties.push_back(tie_counter);
            }
        } else {
            c.ties.assign(c.caps.size(), 0);
        }
    }

    // --- room types, rooms, section records ----------------------------------
    std::vector<std::string> type_names;
    for (int k = 0; k < p.room_type_count; ++k) type_names.push_back("RT" + std::to_string(k + 1));
    std::vector<std::string> course_type(static_cast<size_t>(nc));
    for (int i = 0; i < nc; ++i) course_type[static_cast<size_t>(i)] = rng.pick(type_names);

    std::vector<Room> rooms;
    std::vector<std::set<Slot>> occupied;
    std::vector<Section> sections;
    std::vector<std::string> section_room;  // aligned with sections
    for (int i = 0; i < nc; ++i) {
        GCourse& c = courses[static_cast<size_t>(i)];
        for (size_t j = 0; j < c.caps.size(); ++j) {
            Section s;
            s.id = c.id + "_" + std::to_string(j + 1);
            c.sec_ids.push_back(s.id);
            s.course = c.id;
            s.periods = c.periods;
            s.is_lab = c.is_lab;
            s.capacity = c.caps[j];
            s.room_type = course_type[static_cast<size_t>(i)];
            if (c.ties.size() > j && c.ties[j] > 0) s.labtie = c.ties[j];
            int ri = -1;
            for (size_t r = 0; r < rooms.size(); ++r) {
                if (rooms[r].room_type != s.room_type) continue;
                bool clash = false;
                for (const Slot& sl : c.track)
                    if (occupied[r].count(sl)) {
                        clash = true;
                        break;
                    }
                if (!clash) {
                    ri = static_cast<int>(r);
                    break;
                }
            }
            if (ri < 0) {
                rooms.push_back({"R" + std::to_string(rooms.size() + 1), 0, s.room_type});
                occupied.emplace_back();
                ri = static_cast<int>(rooms.size()) - 1;
            }
            auto& room = rooms[static_cast<size_t>(ri)];
            room.capacity = std::max(room.capacity, s.capacity);
            for (const Slot& sl : c.track) occupied[static_cast<size_t>(ri)].insert(sl);
            section_room.push_back(room.id);
            sections.push_back(std::move(s));
        }
    }
    while (static_cast<int>(rooms.size()) < p.n_rooms)
        rooms.push_back({"R" + std::to_string(rooms.size() + 1),
                         p.cap_max,
                         type_names[rooms.size() % type_names.size()]});

    // --- professors: clash-free, then light pattern avoidance ----------------
    struct PState {
        std::set<Slot> slots;
        std::set<int> days;
    };
    std::vector<PState> pstate(static_cast<size_t>(p.n_professors));
    std::map<std::string, int> sec_pos;
    for (size_t k = 0; k < sections.size(); ++k) sec_pos[sections[k].id] = static_cast<int>(k);

    auto assign_prof = [&](const std::vector<Slot>& slots) {
        int best = -1;
        std::array<long long, 3> best_key{};
        for (size_t pi = 0; pi < pstate.size(); ++pi) {
            PState& st = pstate[pi];
            bool clash = false;
            for (const Slot& sl : slots)
                if (st.slots.count(sl)) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            std::set<Slot> merged = st.slots;
            std::set<int> days = st.days;
            for (const Slot& sl : slots) {
                merged.insert(sl);
                days.insert(sl.first);
            }
            long long t4_after = 0, t4_before = 0;
            for (int d = 0; d < grid.num_days(); ++d) {
                if (merged.count({d, grid.first_period}) && merged.count({d, grid.last_period}))
                    t4_after++;
                if (st.slots.count({d, grid.first_period}) && st.slots.count({d, grid.last_period}))
                    t4_before++;
            }
            long long over4 = std::max(0LL, static_cast<long long>(days.size()) - 4) -
                              std::max(0LL, static_cast<long long>(st.days.size()) - 4);
            std::array<long long, 3> key{t4_after - t4_before, over4,
                                         static_cast<long long>(st.slots.size())};
            if (best < 0 || key < best_key) {
                best = static_cast<int>(pi);
                best_key = key;
            }
        }
        if (best < 0) {
            pstate.emplace_back();
            best = static_cast<int>(pstate.size()) - 1;
        }
        PState& st = pstate[static_cast<size_t>(best)];
        for (const Slot& sl : slots) {
            st.slots.insert(sl);
            st.days.insert(sl.first);
        }
        return best;
    };

    for (int i = 0; i < nc; ++i) {
        GCourse& c = courses[static_cast<size_t>(i)];
        if (!c.is_lab && c.companion >= 0) continue;
        for (size_t j = 0; j < c.caps.size(); ++j) {
            std::vector<Slot> slots = c.track;
            if (c.is_lab) {
                const GCourse& e = courses[static_cast<size_t>(c.companion)];
                slots.insert(slots.end(), e.track.begin(), e.track.end());
            }
            int pi = assign_prof(slots);
            std::string pid = "P" + std::to_string(pi + 1);
            sections[static_cast<size_t>(sec_pos[c.sec_ids[j]])].prof = pid;
            if (c.is_lab) {
                const GCourse& e = courses[static_cast<size_t>(c.companion)];
                sections[static_cast<size_t>(sec_pos[e.sec_ids[j]])].prof = pid;
            }
        }
    }

    // --- availability: degrade only slots the witness never touches ----------
    std::vector<Professor> professors(pstate.size());
    for (size_t pi = 0; pi < pstate.size(); ++pi) {
        professors[pi].id = "P" + std::to_string(pi + 1);
        for (int d = 0; d < grid.num_days(); ++d)
            for (int t = grid.first_period; t <= grid.last_period; ++t) {
                if (pstate[pi].slots.count({d, t})) continue;
                if (rng.unit() < p.availability_block_fraction)
                    professors[pi].set_avail(d, t, -rng.next(3));
            }
    }

    // --- assemble the published instance -------------------------------------
    std::vector<Course> course_records;
    for (const auto& c : courses) course_records.push_back({c.id, c.periods});
    GenResult res;
    res.instance = Instance::build(grid, rooms, professors, course_records, sections, groups);

    // --- pack every group into the copies; that packing is the witness -------
    std::vector<std::vector<int>> remaining(static_cast<size_t>(nc));
    for (int i = 0; i < nc; ++i) remaining[static_cast<size_t>(i)] = courses[static_cast<size_t>(i)].caps;
    for (const auto& g : groups) {
        int left = g.size;
        int chunk_no = 0;
        // Drivers: every curriculum course except mirrored tied lectures.
        std::vector<int> drivers;
        for (const auto& cid : g.curriculum) {
            int ci = course_pos[cid];
            const GCourse& c = courses[static_cast<size_t>(ci)];
            if (!c.is_lab && c.companion >= 0) continue;
            drivers.push_back(ci);
        }
        while (left > 0) {
            int chunk = left;
            std::vector<std::pair<int, int>> chosen;  // (course, copy)
            for (int ci : drivers) {
                const auto& rem = remaining[static_cast<size_t>(ci)];
                int best = 0;
                for (size_t j = 1; j < rem.size(); ++j)
                    if (rem[j] > rem[static_cast<size_t>(best)]) best = static_cast<int>(j);
                chosen.emplace_back(ci, best);
                chunk = std::min(chunk, rem[static_cast<size_t>(best)]);
            }
            if (chunk <= 0)
                throw std::logic_error("generation failed: seats for group " + g.id +
                                       " ran out despite demand-sized copies");
            Group seed;
            seed.id = g.id + ".w" + std::to_string(++chunk_no);
            seed.size = chunk;
            seed.curriculum = g.curriculum;
            seed.lineage = g.id;
            for (const auto& [ci, j] : chosen) {
                const GCourse& c = courses[static_cast<size_t>(ci)];
                remaining[static_cast<size_t>(ci)][static_cast<size_t>(j)] -= chunk;
                res.witness.enrollments[seed.id].insert(c.sec_ids[static_cast<size_t>(j)]);
                if (c.is_lab) {
                    const GCourse& e = courses[static_cast<size_t>(c.companion)];
                    remaining[static_cast<size_t>(c.companion)][static_cast<size_t>(j)] -= chunk;
                    res.witness.enrollments[seed.id].insert(e.sec_ids[static_cast<size_t>(j)]);
                }
            }
            res.seed_groups.push_back(std::move(seed));
            left -= chunk;
        }
    }
    for (size_t k = 0; k < sections.size(); ++k) {
        int ci = course_pos[sections[k].course];
        for (const Slot& sl : courses[static_cast<size_t>(ci)].track)
            res.witness.meetings[sections[k].id].push_back({sl.first, sl.second, section_room[k]});
    }
    return res;
}

void emit_files(const GenResult& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_instance(r.instance, dir + "/groups.csv", dir + "/sections.csv", dir + "/rooms.csv",
                   dir + "/availability.csv");
    write_timetable_file(dir + "/witness.csv", r.witness);
    write_groups_csv(dir + "/witness_groups.csv", r.seed_groups);
}

}  // namespace ttab
