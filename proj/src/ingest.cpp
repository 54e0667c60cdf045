#include "ttab/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ttab {
namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

struct Csv {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::pair<int, std::vector<std::string>>> rows;  // (line number, cells)

    [[noreturn]] void fail(int line, const std::string& what) const {
        throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
    }

    int column(const std::string& name) const {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }

    int require_column(const std::string& name) const {
        int c = column(name);
        if (c < 0) throw std::runtime_error(path + ": missing column '" + name + "'");
        return c;
    }

    static std::string cell(const std::vector<std::string>& cells, int col) {
        if (col < 0 || col >= static_cast<int>(cells.size())) return "";
        return cells[static_cast<size_t>(col)];
    }
};

Csv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Csv csv;
    csv.path = path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto cells = split(line, ',');
        if (csv.header.empty())
            csv.header = std::move(cells);
        else
            csv.rows.emplace_back(lineno, std::move(cells));
    }
    if (csv.header.empty()) throw std::runtime_error(path + ": empty file");
    return csv;
}

int parse_int(const Csv& csv, int line, const std::string& cell, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        csv.fail(line, "bad " + what + " '" + cell + "'");
    }
}

bool parse_yn(const Csv& csv, int line, const std::string& cell, const std::string& what) {
    if (cell.empty() || cell == "N" || cell == "n") return false;
    if (cell == "Y" || cell == "y") return true;
    csv.fail(line, what + " must be Y or N, got '" + cell + "'");
}

void warn_unknown_columns(const Csv& csv, const std::set<std::string>& known,
                          std::vector<std::string>* warnings) {
    if (!warnings) return;
    for (const auto& name : csv.header)
        if (!known.count(name))
            warnings->push_back(csv.path + ": ignoring unknown column '" + name + "'");
}

// ---- sections.csv ----------------------------------------------------------

std::vector<Section> parse_sections(const std::string& path, std::vector<std::string>* warnings) {
    Csv csv = read_csv(path);
    const std::set<std::string> known = {"section_id", "prof",    "course",  "periods",
                                         "lab",        "capacity", "room_type", "labtie",
                                         "link",       "adjunct", "mandates", "coprofs",
                                         "final_exam"};
    warn_unknown_columns(csv, known, warnings);
    int c_id = csv.require_column("section_id");
    int c_prof = csv.require_column("prof");
    int c_course = csv.require_column("course");
    int c_periods = csv.require_column("periods");
    int c_lab = csv.require_column("lab");
    int c_cap = csv.require_column("capacity");
    int c_rt = csv.require_column("room_type");
    int c_labtie = csv.column("labtie");
    int c_link = csv.column("link");
    int c_adj = csv.column("adjunct");
    int c_mand = csv.column("mandates");
    int c_cop = csv.column("coprofs");
    int c_fe = csv.column("final_exam");

    TimeGrid grid;
    std::vector<Section> out;
    std::set<std::string> seen;
    for (const auto& [line, cells] : csv.rows) {
        Section s;
        s.id = Csv::cell(cells, c_id);
        if (s.id.empty()) csv.fail(line, "empty section_id");
        if (!seen.insert(s.id).second) csv.fail(line, "duplicate section_id '" + s.id + "'");
        s.prof = Csv::cell(cells, c_prof);
        if (s.prof.empty()) csv.fail(line, "empty prof for section '" + s.id + "'");
        s.course = Csv::cell(cells, c_course);
        if (s.course.empty()) csv.fail(line, "empty course for section '" + s.id + "'");
        s.periods = parse_int(csv, line, Csv::cell(cells, c_periods), "periods");
        if (s.periods < 1 || s.periods > 5)
            csv.fail(line, "periods out of range 1..5 for section '" + s.id + "'");
        s.is_lab = parse_yn(csv, line, Csv::cell(cells, c_lab), "lab");
        s.capacity = parse_int(csv, line, Csv::cell(cells, c_cap), "capacity");
        if (s.capacity < 0) csv.fail(line, "negative capacity for section '" + s.id + "'");
        s.room_type = Csv::cell(cells, c_rt);
        if (s.room_type.empty()) csv.fail(line, "empty room_type for section '" + s.id + "'");
        std::string tie = Csv::cell(cells, c_labtie);
        if (!tie.empty()) s.labtie = parse_int(csv, line, tie, "labtie");
        std::string link = Csv::cell(cells, c_link);
        if (!link.empty()) s.link = parse_int(csv, line, link, "link");
        s.is_adjunct_taught = parse_yn(csv, line, Csv::cell(cells, c_adj), "adjunct");
        std::string mand = Csv::cell(cells, c_mand);
        if (!mand.empty()) {
            for (const auto& tok : split(mand, ';')) {
                if (tok.empty()) continue;
                auto parts = split(tok, ':');
                if (parts.size() != 2) csv.fail(line, "bad mandate token '" + tok + "'");
                Mandate m;
                m.day = grid.day_from_label(parts[0]);
                if (m.day < 0) csv.fail(line, "bad mandate day '" + parts[0] + "'");
                if (parts[1] != "*") {
                    int p = parse_int(csv, line, parts[1], "mandate period");
                    if (p < grid.first_period || p > grid.last_period)
                        csv.fail(line, "mandate period out of range in '" + tok + "'");
                    m.period = p;
                }
                s.mandates.push_back(m);
            }
        }
        std::string cop = Csv::cell(cells, c_cop);
        if (!cop.empty()) {
            for (const auto& tok : split(cop, ';'))
                if (!tok.empty()) s.coprofs.push_back(tok);
        }
        if (s.mandates.size() > 6) csv.fail(line, "more than 6 mandates for section '" + s.id + "'");
        if (s.coprofs.size() > 6) csv.fail(line, "more than 6 coprofs for section '" + s.id + "'");
        std::string fe = Csv::cell(cells, c_fe);
        if (!fe.empty()) s.final_exam = fe;
        out.push_back(std::move(s));
    }
    if (out.empty()) throw std::runtime_error(path + ": no sections");
    return out;
}

// ---- rooms.csv -------------------------------------------------------------

std::vector<Room> parse_rooms(const std::string& path, std::vector<std::string>* warnings) {
    Csv csv = read_csv(path);
    warn_unknown_columns(csv, {"room_id", "capacity", "room_type"}, warnings);
    int c_id = csv.require_column("room_id");
    int c_cap = csv.require_column("capacity");
    int c_rt = csv.require_column("room_type");
    std::vector<Room> out;
    std::set<std::string> seen;
    for (const auto& [line, cells] : csv.rows) {
        Room r;
        r.id = Csv::cell(cells, c_id);
        if (r.id.empty()) csv.fail(line, "empty room_id");
        if (!seen.insert(r.id).second) csv.fail(line, "duplicate room_id '" + r.id + "'");
        r.capacity = parse_int(csv, line, Csv::cell(cells, c_cap), "capacity");
        if (r.capacity < 0) csv.fail(line, "negative capacity for room '" + r.id + "'");
        r.room_type = Csv::cell(cells, c_rt);
        if (r.room_type.empty()) csv.fail(line, "empty room_type for room '" + r.id + "'");
        out.push_back(std::move(r));
    }
    return out;
}

// ---- groups.csv ------------------------------------------------------------

std::vector<Group> parse_groups(const std::string& path) {
    Csv csv = read_csv(path);
    // Header: group_id,size,course_1,...  The tail is positional; every
    // non-empty cell after the first two is a curriculum entry.
    if (csv.header.size() < 2 || csv.header[0] != "group_id" || csv.header[1] != "size")
        throw std::runtime_error(path + ": header must start with group_id,size");
    std::vector<Group> out;
    std::set<std::string> seen;
    for (const auto& [line, cells] : csv.rows) {
        Group g;
        g.id = Csv::cell(cells, 0);
        if (g.id.empty()) csv.fail(line, "empty group_id");
        if (!seen.insert(g.id).second) csv.fail(line, "duplicate group_id '" + g.id + "'");
        g.size = parse_int(csv, line, Csv::cell(cells, 1), "size");
        if (g.size <= 0) csv.fail(line, "group size must be positive for '" + g.id + "'");
        for (size_t i = 2; i < cells.size(); ++i)
            if (!cells[i].empty()) g.curriculum.push_back(cells[i]);
        if (g.curriculum.empty()) csv.fail(line, "group '" + g.id + "' has no courses");
        out.push_back(std::move(g));
    }
    return out;
}

// ---- availability.csv ------------------------------------------------------

void parse_availability(const std::string& path, std::map<std::string, Professor>& profs) {
    Csv csv = read_csv(path);
    TimeGrid grid;
    csv.require_column("prof");
    csv.require_column("day");
    std::vector<int> pcol(static_cast<size_t>(grid.num_periods()));
    for (int p = 0; p < grid.num_periods(); ++p)
        pcol[static_cast<size_t>(p)] = csv.require_column("p" + std::to_string(p + 1));
    int c_prof = csv.column("prof");
    int c_day = csv.column("day");
    std::set<std::pair<std::string, int>> seen;
    for (const auto& [line, cells] : csv.rows) {
        std::string pid = Csv::cell(cells, c_prof);
        if (pid.empty()) csv.fail(line, "empty prof");
        std::string dlab = Csv::cell(cells, c_day);
        int d = grid.day_from_label(dlab);
        if (d < 0) csv.fail(line, "bad day '" + dlab + "'");
        if (!seen.insert({pid, d}).second)
            csv.fail(line, "duplicate availability row for " + pid + " day " + dlab);
        Professor& prof = profs[pid];  // creates with all-1 default
        if (prof.id.empty()) prof.id = pid;
        for (int p = 0; p < grid.num_periods(); ++p) {
            std::string v = Csv::cell(cells, pcol[static_cast<size_t>(p)]);
            if (v.empty()) continue;  // blank means 1
            int a = parse_int(csv, line, v, "availability");
            if (a < -2 || a > 1)
                csv.fail(line, "availability must be in {1,0,-1,-2}, got " + v);
            prof.availability[static_cast<size_t>(d)][static_cast<size_t>(p)] = a;
        }
    }
}

}  // namespace

bool has_errors(const std::vector<DataIssue>& issues) {
    for (const auto& i : issues)
        if (i.severity == DataIssue::Severity::Error) return true;
    return false;
}

Instance parse_instance(const std::string& groups_path, const std::string& sections_path,
                        const std::string& rooms_path, const std::string& availability_path,
                        std::vector<std::string>* warnings) {
    std::vector<Room> rooms = parse_rooms(rooms_path, warnings);
    std::vector<Section> sections = parse_sections(sections_path, warnings);
    std::vector<Group> groups = parse_groups(groups_path);

    // Professors named by sections, possibly refined by availability rows.
    std::map<std::string, Professor> profs;
    for (const auto& s : sections) {
        profs[s.prof].id = s.prof;
        if (s.is_adjunct_taught) profs[s.prof].is_adjunct = true;
        for (const auto& cp : s.coprofs) profs[cp].id = cp;
    }
    parse_availability(availability_path, profs);

    // Courses are implied by sections; the period count comes from the
    // lexicographically first section (mismatches surface in validate_instance).
    std::map<std::string, int> course_periods;
    for (const auto& s : sections)
        if (!course_periods.count(s.course)) course_periods[s.course] = s.periods;

    std::vector<Professor> professors;
    for (auto& [id, p] : profs) professors.push_back(std::move(p));
    std::vector<Course> courses;
    for (const auto& [id, per] : course_periods) courses.push_back({id, per});

    for (const auto& g : groups)
        for (const auto& c : g.curriculum)
            if (!course_periods.count(c))
                throw std::runtime_error(groups_path + ": group '" + g.id +
                                         "' lists course '" + c + "' with no sections");

    return Instance::build(TimeGrid{}, std::move(rooms), std::move(professors),
                           std::move(courses), std::move(sections), std::move(groups));
}

std::vector<DataIssue> validate_instance(const Instance& inst) {
    std::vector<DataIssue> out;
    const TimeGrid& grid = inst.grid;
    auto error = [&](const std::string& code, const std::string& subject, const std::string& msg) {
        out.push_back({DataIssue::Severity::Error, code, msg, subject});
    };
    auto warning = [&](const std::string& code, const std::string& subject, const std::string& msg) {
        out.push_back({DataIssue::Severity::Warning, code, msg, subject});
    };

    // Aggregate demand vs. aggregate seat supply, per course.
    for (size_t ci = 0; ci < inst.courses.size(); ++ci) {
        const Course& c = inst.courses[ci];
        long long demand = 0;
        for (const auto& g : inst.groups)
            if (std::binary_search(g.curriculum.begin(), g.curriculum.end(), c.id))
                demand += g.size;
        long long cap = 0;
        for (int si : inst.sections_of_course(static_cast<int>(ci)))
            cap += inst.sections[static_cast<size_t>(si)].capacity;
        if (demand > cap)
            error("demand_exceeds_capacity", c.id,
                  "course " + c.id + " has demand " + std::to_string(demand) +
                      " but only " + std::to_string(cap) + " seats");
    }

    // Slot-specific mandates cannot outnumber rooms of the required type.
    std::map<std::string, int> rooms_of_type;
    for (const auto& r : inst.rooms) rooms_of_type[r.room_type]++;
    for (const auto& rt : inst.room_types) {
        for (int d = 0; d < grid.num_days(); ++d) {
            for (int t = grid.first_period; t <= grid.last_period; ++t) {
                std::vector<std::string> pinned;
                for (const auto& s : inst.sections) {
                    if (s.room_type != rt) continue;
                    for (const auto& m : s.mandates)
                        if (m.day == d && m.period && *m.period == t) {
                            pinned.push_back(s.id);
                            break;
                        }
                }
                int avail = rooms_of_type.count(rt) ? rooms_of_type[rt] : 0;
                if (static_cast<int>(pinned.size()) > avail)
                    error("mandated_roomtype_overload", rt,
                          std::to_string(pinned.size()) + " sections mandated to " +
                              grid.day_label(d) + " period " + std::to_string(t) +
                              " but only " + std::to_string(avail) + " rooms of type " + rt +
                              " (" + join(pinned, ", ") + ")");
            }
        }
    }

    // A professor mandated into two sections at one slot can teach neither.
    for (const auto& p : inst.professors) {
        std::map<std::pair<int, int>, std::vector<std::string>> at;
        for (const auto& s : inst.sections) {
            if (s.prof != p.id) continue;
            for (const auto& m : s.mandates)
                if (m.period) at[{m.day, *m.period}].push_back(s.id);
        }
        for (const auto& [slot, ids] : at)
            if (ids.size() > 1)
                error("mandate_collision", p.id,
                      p.id + " mandated into " + join(ids, " and ") + " at " +
                          grid.day_label(slot.first) + " period " + std::to_string(slot.second));
    }

    for (const auto& s : inst.sections) {
        if (static_cast<int>(s.mandates.size()) > s.periods)
            error("mandate_count_exceeds_periods", s.id,
                  "section " + s.id + " has " + std::to_string(s.mandates.size()) +
                      " mandates but meets " + std::to_string(s.periods) + " periods");
        const Course& c = inst.courses[static_cast<size_t>(s.course_idx)];
        if (s.periods != c.periods)
            error("periods_mismatch", s.id,
                  "section " + s.id + " meets " + std::to_string(s.periods) +
                      " periods but course " + c.id + " meets " + std::to_string(c.periods));
    }

    // Each labtie id must pair exactly one lab with at least one lecture.
    std::map<int, std::pair<std::vector<std::string>, std::vector<std::string>>> ties;
    for (const auto& s : inst.sections)
        if (s.labtie) {
            if (s.is_lab)
                ties[*s.labtie].first.push_back(s.id);
            else
                ties[*s.labtie].second.push_back(s.id);
        }
    for (const auto& [tie, members] : ties) {
        if (members.first.size() != 1 || members.second.empty())
            error("labtie_structure", std::to_string(tie),
                  "labtie " + std::to_string(tie) + " has " +
                      std::to_string(members.first.size()) + " labs and " +
                      std::to_string(members.second.size()) + " lectures");
    }

    std::map<int, std::set<int>> link_periods;
    std::map<int, std::vector<std::string>> link_members;
    for (const auto& s : inst.sections)
        if (s.link) {
            link_periods[*s.link].insert(s.periods);
            link_members[*s.link].push_back(s.id);
        }
    for (const auto& [link, pers] : link_periods)
        if (pers.size() > 1)
            error("link_periods_mismatch", std::to_string(link),
                  "linked sections " + join(link_members[link], ", ") +
                      " have different period counts");

    for (const auto& s : inst.sections) {
        if (s.is_lab && s.periods == 4) {
            for (const auto& m : s.mandates)
                if (m.period && *m.period > 4)
                    error("lab4_late_mandate", s.id,
                          "4-period lab " + s.id + " mandated to period " +
                              std::to_string(*m.period) + " but its block is periods 1-4");
        }
        if (s.is_lab && s.periods > 4)
            error("lab_unschedulable", s.id,
                  "lab " + s.id + " needs " + std::to_string(s.periods) +
                      " contiguous periods; no block avoids lunch");
        if (compatible_rooms(inst, inst.section_of(s.id)).empty())
            error("no_compatible_room", s.id,
                  "no room of type " + s.room_type + " with capacity >= " +
                      std::to_string(s.capacity) + " for section " + s.id);
    }

    for (const auto& s : inst.sections) {
        if (!s.is_adjunct_taught) continue;
        const Professor& p = inst.professors[static_cast<size_t>(s.prof_idx)];
        bool any = false;
        for (int d = 0; d < grid.num_days() && !any; ++d)
            for (int t = grid.first_period; t <= grid.last_period && !any; ++t)
                if (p.avail(d, t) == 1) any = true;
        if (!any)
            warning("adjunct_unavailable", s.id,
                    "adjunct section " + s.id + ": professor " + p.id +
                        " has no slot marked available");
    }

    return out;
}

void write_instance(const Instance& inst, const std::string& groups_path,
                    const std::string& sections_path, const std::string& rooms_path,
                    const std::string& availability_path) {
    {
        std::ofstream out(rooms_path);
        if (!out) throw std::runtime_error("cannot write " + rooms_path);
        out << "room_id,capacity,room_type\n";
        for (const auto& r : inst.rooms)
            out << r.id << "," << r.capacity << "," << r.room_type << "\n";
    }
    {
        std::ofstream out(sections_path);
        if (!out) throw std::runtime_error("cannot write " + sections_path);
        out << "section_id,prof,course,periods,lab,capacity,room_type,labtie,link,adjunct,"
               "mandates,coprofs,final_exam\n";
        for (const auto& s : inst.sections) {
            std::vector<std::string> mand;
            for (const auto& m : s.mandates)
                mand.push_back(inst.grid.day_label(m.day) + ":" +
                               (m.period ? std::to_string(*m.period) : std::string("*")));
            out << s.id << "," << s.prof << "," << s.course << "," << s.periods << ","
                << (s.is_lab ? "Y" : "N") << "," << s.capacity << "," << s.room_type << ","
                << (s.labtie ? std::to_string(*s.labtie) : "") << ","
                << (s.link ? std::to_string(*s.link) : "") << ","
                << (s.is_adjunct_taught ? "Y" : "N") << "," << join(mand, ";") << ","
                << join(s.coprofs, ";") << "," << (s.final_exam ? *s.final_exam : "") << "\n";
        }
    }
    write_groups_csv(groups_path, inst.groups);
    {
        std::ofstream out(availability_path);
        if (!out) throw std::runtime_error("cannot write " + availability_path);
        out << "prof,day";
        for (int t = inst.grid.first_period; t <= inst.grid.last_period; ++t) out << ",p" << t;
        out << "\n";
        for (const auto& p : inst.professors)
            for (int d = 0; d < inst.grid.num_days(); ++d) {
                out << p.id << "," << inst.grid.day_label(d);
                for (int t = inst.grid.first_period; t <= inst.grid.last_period; ++t)
                    out << "," << p.avail(d, t);
                out << "\n";
            }
    }
}

void write_groups_csv(const std::string& path, const std::vector<Group>& groups) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    size_t width = 0;
    for (const auto& g : groups) width = std::max(width, g.curriculum.size());
    out << "group_id,size";
    for (size_t i = 0; i < width; ++i) out << ",course_" << (i + 1);
    out << "\n";
    for (const auto& g : groups) {
        out << g.id << "," << g.size;
        for (size_t i = 0; i < width; ++i)
            out << "," << (i < g.curriculum.size() ? g.curriculum[i] : "");
        out << "\n";
    }
}

Weights parse_weights_text(const std::string& text, const TimeGrid& grid,
                           std::vector<std::string>* warnings) {
    Weights w;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        size_t hash = t.find('#');
        if (hash != std::string::npos) t = trim(t.substr(0, hash));
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("weights line " + std::to_string(lineno) +
                                     ": expected key=value, got '" + t + "'");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        auto number = [&]() {
            try {
                size_t pos = 0;
                double v = std::stod(val, &pos);
                if (pos != val.size() || !std::isfinite(v)) throw std::invalid_argument("");
                if (v < 0) throw std::invalid_argument("");
                return v;
            } catch (const std::exception&) {
                throw std::runtime_error("weights line " + std::to_string(lineno) +
                                         ": bad value for " + key + ": '" + val + "'");
            }
        };
        if (key == "c0") w.c0 = number();
        else if (key == "d4") w.d4 = number();
        else if (key == "dtue") w.dtue = number();
        else if (key == "dgp2") w.dgp2 = number();
        else if (key == "dgp3") w.dgp3 = number();
        else if (key == "d5") w.d5 = number();
        else if (key == "ct_regular") w.ct_regular = number();
        else if (key == "ct_lab") w.ct_lab = number();
        else if (key == "adjunct_multiplier") w.adjunct_multiplier = number();
        else if (key == "meeting_day") {
            int d = grid.day_from_label(val);
            if (d < 0) {
                try {
                    size_t pos = 0;
                    d = std::stoi(val, &pos);
                    if (pos != val.size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    d = -1;
                }
            }
            if (d < 0 || d >= grid.num_days())
                throw std::runtime_error("weights line " + std::to_string(lineno) +
                                         ": bad meeting_day '" + val + "'");
            w.meeting_day = d;
        } else if (warnings) {
            warnings->push_back("weights line " + std::to_string(lineno) +
                                ": ignoring unknown key '" + key + "'");
        }
    }
    return w;
}

Weights parse_weights_file(const std::string& path, const TimeGrid& grid,
                           std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_weights_text(ss.str(), grid, warnings);
}

void write_weights_file(const std::string& path, const Weights& w, const TimeGrid& grid) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    auto num = [](double v) {
        std::ostringstream ss;
        ss << v;
        return ss.str();
    };
    out << "c0 = " << num(w.c0) << "\n"
        << "d4 = " << num(w.d4) << "\n"
        << "dtue = " << num(w.dtue) << "\n"
        << "dgp2 = " << num(w.dgp2) << "\n"
        << "dgp3 = " << num(w.dgp3) << "\n"
        << "d5 = " << num(w.d5) << "\n"
        << "ct_regular = " << num(w.ct_regular) << "\n"
        << "ct_lab = " << num(w.ct_lab) << "\n"
        << "adjunct_multiplier = " << num(w.adjunct_multiplier) << "\n"
        << "meeting_day = " << grid.day_label(w.meeting_day) << "\n";
}

}  // namespace ttab
