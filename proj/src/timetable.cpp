#include "ttab/timetable.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ttab {

int Timetable::load_of(const std::string& section, const Instance& inst) const {
    int load = 0;
    for (const auto& [gid, secs] : enrollments)
        if (secs.count(section)) load += inst.groups.at(static_cast<size_t>(inst.group_of(gid))).size;
    return load;
}

void write_timetable(std::ostream& os, const Timetable& tt) {
    // maps are ordered; meeting lists are sorted on the way out
    for (const auto& [sec, met] : tt.meetings) {
        std::vector<Meeting> sorted = met;
        std::sort(sorted.begin(), sorted.end());
        for (const Meeting& m : sorted) {
            static const char* kDays[] = {"M", "T", "W", "R", "F"};
            os << "meeting," << sec << ',' << kDays[m.day] << ',' << m.period << ',' << m.room
               << '\n';
        }
    }
    for (const auto& [grp, secs] : tt.enrollments)
        for (const auto& sec : secs) os << "enroll," << grp << ',' << sec << '\n';
    for (const auto& [sec, n] : tt.over_capacity)
        if (n != 0) os << "overcap," << sec << ',' << n << '\n';
}

void write_timetable_file(const std::string& path, const Timetable& tt) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    write_timetable(f, tt);
    if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Timetable read_timetable(std::istream& is, const TimeGrid& grid) {
    Timetable tt;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto f = split_csv(line);
        const std::string where = "timetable line " + std::to_string(lineno);
        if (f[0] == "meeting") {
            if (f.size() != 5) throw std::runtime_error(where + ": expected 5 fields");
            int day = grid.day_from_label(f[2]);
            if (day < 0) throw std::runtime_error(where + ": unknown day '" + f[2] + "'");
            int period = 0;
            try {
                period = std::stoi(f[3]);
            } catch (const std::exception&) {
                throw std::runtime_error(where + ": bad period '" + f[3] + "'");
            }
            if (period < grid.first_period || period > grid.last_period)
                throw std::runtime_error(where + ": period out of range");
            tt.meetings[f[1]].push_back({day, period, f[4]});
        } else if (f[0] == "enroll") {
            if (f.size() != 3) throw std::runtime_error(where + ": expected 3 fields");
            tt.enrollments[f[1]].insert(f[2]);
        } else if (f[0] == "overcap") {
            if (f.size() != 3) throw std::runtime_error(where + ": expected 3 fields");
            try {
                tt.over_capacity[f[1]] = std::stoi(f[2]);
            } catch (const std::exception&) {
                throw std::runtime_error(where + ": bad count '" + f[2] + "'");
            }
        } else {
            throw std::runtime_error(where + ": unknown record '" + f[0] + "'");
        }
    }
    return tt;
}

Timetable read_timetable_file(const std::string& path, const TimeGrid& grid) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read: " + path);
    return read_timetable(f, grid);
}

}  // namespace ttab
