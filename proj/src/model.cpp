#include "ttab/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace ttab {

namespace {

template <typename T>
void sort_by_id(std::vector<T>& v) {
    std::sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.id < b.id; });
}

template <typename T>
void index_by_id(const std::vector<T>& v, std::unordered_map<std::string, int>& out,
                 const char* what) {
    out.clear();
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (!out.emplace(v[static_cast<size_t>(i)].id, i).second)
            throw std::runtime_error(std::string("duplicate ") + what + " id: " + v[static_cast<size_t>(i)].id);
    }
}

int lookup(const std::unordered_map<std::string, int>& m, const std::string& id,
           const char* what) {
    auto it = m.find(id);
    if (it == m.end())
        throw std::runtime_error(std::string("unresolved reference: no ") + what + " '" + id + "'");
    return it->second;
}

}  // namespace

Instance Instance::build(TimeGrid grid, std::vector<Room> rooms,
                         std::vector<Professor> professors, std::vector<Course> courses,
                         std::vector<Section> sections, std::vector<Group> groups) {
    Instance inst;
    inst.grid = std::move(grid);
    inst.rooms = std::move(rooms);
    inst.professors = std::move(professors);
    inst.courses = std::move(courses);
    inst.sections = std::move(sections);
    inst.groups = std::move(groups);

    sort_by_id(inst.rooms);
    sort_by_id(inst.professors);
    sort_by_id(inst.courses);
    sort_by_id(inst.sections);
    sort_by_id(inst.groups);

    index_by_id(inst.rooms, inst.room_index, "room");
    index_by_id(inst.professors, inst.prof_index, "professor");
    index_by_id(inst.courses, inst.course_index, "course");
    index_by_id(inst.sections, inst.section_index, "section");
    index_by_id(inst.groups, inst.group_index, "group");

    std::set<std::string> types;
    for (const auto& r : inst.rooms) {
        if (r.room_type.empty())
            throw std::runtime_error("room '" + r.id + "' has an empty room type");
        if (r.capacity < 0)
            throw std::runtime_error("room '" + r.id + "' has negative capacity");
        types.insert(r.room_type);
    }
    inst.room_types.assign(types.begin(), types.end());

    for (const auto& c : inst.courses)
        if (c.periods < 1 || c.periods > 5)
            throw std::runtime_error("course '" + c.id + "' has periods outside 1..5");

    inst.sections_by_course_.assign(inst.courses.size(), {});
    for (int si = 0; si < static_cast<int>(inst.sections.size()); ++si) {
        Section& s = inst.sections[static_cast<size_t>(si)];
        s.prof_idx = lookup(inst.prof_index, s.prof, "professor");
        s.course_idx = lookup(inst.course_index, s.course, "course");
        if (s.periods < 1 || s.periods > 5)
            throw std::runtime_error("section '" + s.id + "' has periods outside 1..5");
        if (s.capacity < 0)
            throw std::runtime_error("section '" + s.id + "' has negative capacity");
        if (!types.count(s.room_type))
            throw std::runtime_error("unresolved reference: no room of type '" + s.room_type +
                                     "' requested by section '" + s.id + "'");
        for (const auto& cp : s.coprofs) lookup(inst.prof_index, cp, "professor");
        if (s.mandates.size() > 6)
            throw std::runtime_error("section '" + s.id + "' has more than 6 mandates");
        if (s.coprofs.size() > 6)
            throw std::runtime_error("section '" + s.id + "' has more than 6 co-professors");
        for (const auto& m : s.mandates) {
            if (m.day < 0 || m.day >= inst.grid.num_days())
                throw std::runtime_error("section '" + s.id + "' mandate has an invalid day");
            if (m.period && (*m.period < 1 || *m.period > inst.grid.num_periods()))
                throw std::runtime_error("section '" + s.id + "' mandate has an invalid period");
        }
        inst.sections_by_course_[static_cast<size_t>(s.course_idx)].push_back(si);
    }

    for (auto& g : inst.groups) {
        if (g.size < 1)
            throw std::runtime_error("group '" + g.id + "' has size < 1");
        if (g.curriculum.empty())
            throw std::runtime_error("group '" + g.id + "' has an empty curriculum");
        std::sort(g.curriculum.begin(), g.curriculum.end());
        g.curriculum.erase(std::unique(g.curriculum.begin(), g.curriculum.end()),
                           g.curriculum.end());
        g.curriculum_idx.clear();
        for (const auto& c : g.curriculum)
            g.curriculum_idx.push_back(lookup(inst.course_index, c, "course"));
    }

    for (const auto& p : inst.professors)
        for (const auto& row : p.availability)
            for (int v : row)
                if (v != 1 && v != 0 && v != -1 && v != -2)
                    throw std::runtime_error("professor '" + p.id +
                                             "' has an availability entry outside {1,0,-1,-2}");

    return inst;
}

Instance Instance::with_groups(std::vector<Group> new_groups) const {
    return Instance::build(grid, rooms, professors, courses, sections, std::move(new_groups));
}

int Instance::room_of(const std::string& id) const { return lookup(room_index, id, "room"); }
int Instance::prof_of(const std::string& id) const { return lookup(prof_index, id, "professor"); }
int Instance::course_of(const std::string& id) const { return lookup(course_index, id, "course"); }
int Instance::section_of(const std::string& id) const { return lookup(section_index, id, "section"); }
int Instance::group_of(const std::string& id) const { return lookup(group_index, id, "group"); }

std::set<std::array<int, 3>> forbidden_lab_triples(const TimeGrid& grid) {
    const int n = grid.num_periods();
    const int lunch = grid.lunch_boundary.first;  // lunch after this period
    std::set<std::array<int, 3>> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                bool contiguous = (b == a + 1) && (c == b + 1);
                bool crosses_lunch = (a <= lunch) && (c > lunch);
                if (!(contiguous && !crosses_lunch)) out.insert({a, b, c});
            }
    return out;
}

std::set<std::array<int, 2>> forbidden_lab_pairs(const TimeGrid& grid) {
    const int n = grid.num_periods();
    const int lunch = grid.lunch_boundary.first;
    std::set<std::array<int, 2>> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (!(b == a + 1 && a != lunch)) out.insert({a, b});
    return out;
}

std::set<std::string> fulltime_professors(const Instance& inst) {
    std::vector<int> load(inst.professors.size(), 0);
    for (const auto& s : inst.sections) load[static_cast<size_t>(s.prof_idx)] += s.periods;
    std::set<std::string> out;
    for (size_t p = 0; p < inst.professors.size(); ++p)
        if (load[p] >= 9) out.insert(inst.professors[p].id);
    return out;
}

std::vector<int> compatible_rooms(const Instance& inst, int section_idx) {
    const Section& s = inst.sections.at(static_cast<size_t>(section_idx));
    std::vector<int> out;
    for (int r = 0; r < static_cast<int>(inst.rooms.size()); ++r) {
        const Room& room = inst.rooms[static_cast<size_t>(r)];
        if (room.room_type == s.room_type && s.capacity <= room.capacity) out.push_back(r);
    }
    return out;
}

std::vector<Candidate> candidate_assignments(const Instance& inst) {
    std::vector<Candidate> out;
    for (int si = 0; si < static_cast<int>(inst.sections.size()); ++si) {
        auto rooms = compatible_rooms(inst, si);
        for (int d = 0; d < inst.grid.num_days(); ++d)
            for (int t = 1; t <= inst.grid.num_periods(); ++t)
                for (int r : rooms) out.push_back({si, d, t, r});
    }
    return out;
}

std::vector<std::pair<int, int>> group_section_options(const Instance& inst,
                                                       const std::vector<Group>& groups) {
    std::vector<std::pair<int, int>> out;
    for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
        const Group& g = groups[static_cast<size_t>(gi)];
        for (const auto& course : g.curriculum) {
            int ci = inst.course_of(course);
            for (int si : inst.sections_of_course(ci)) out.emplace_back(gi, si);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace ttab
