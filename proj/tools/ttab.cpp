#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ttab/gen.hpp"
#include "ttab/ingest.hpp"
#include "ttab/mip.hpp"
#include "ttab/model.hpp"
#include "ttab/subgroup.hpp"
#include "ttab/timetable.hpp"
#include "ttab/tip.hpp"
#include "ttab/validate.hpp"
#include "ttab/weights.hpp"

namespace {

using namespace ttab;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimit = 3;
constexpr int kExitUsage = 64;

struct LimitHit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string groups, sections, rooms, availability;
    std::string weights_path;
    std::string mode = "hard";
    std::string solver = "internal";
    std::string cmd;
    std::string out = ".";
    std::string timetable_path, solution_path;
    double max_seconds = 0.0;
    long long max_nodes = 0;
    int max_iter = 200;
    bool has_claimed = false;
    double claimed = 0.0;
};

void add_instance_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--groups", o.groups, "groups.csv")->required();
    cmd->add_option("--sections", o.sections, "sections.csv")->required();
    cmd->add_option("--rooms", o.rooms, "rooms.csv")->required();
    cmd->add_option("--availability", o.availability, "availability.csv")->required();
}

void add_model_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--weights", o.weights_path, "weights config (key = value lines)");
    cmd->add_option("--mode", o.mode, "capacity mode")
        ->check(CLI::IsMember({"hard", "soft"}))
        ->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--solver", o.solver, "which solver to use")
        ->check(CLI::IsMember({"internal", "external"}))
        ->capture_default_str();
    cmd->add_option("--cmd", o.cmd, "external solver command with {lp} and {sol} placeholders");
    cmd->add_option("--max-seconds", o.max_seconds, "wall-clock limit, <=0 unlimited");
    cmd->add_option("--max-nodes", o.max_nodes, "search node limit, <=0 unlimited");
}

CapacityMode mode_of(const Options& o) {
    return o.mode == "soft" ? CapacityMode::Soft : CapacityMode::Hard;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

Instance load_instance(const Options& o) {
    std::vector<std::string> warnings;
    Instance inst = parse_instance(o.groups, o.sections, o.rooms, o.availability, &warnings);
    print_warnings(warnings);
    return inst;
}

Weights load_weights(const Options& o, const TimeGrid& grid) {
    if (o.weights_path.empty()) return Weights{};
    std::vector<std::string> warnings;
    Weights w = parse_weights_file(o.weights_path, grid, &warnings);
    print_warnings(warnings);
    return w;
}

// Exit kExitData when the pre-solve checks find errors.
bool report_issues(const Instance& inst, bool quiet_when_clean) {
    auto issues = validate_instance(inst);
    for (const auto& i : issues) {
        bool err = i.severity == DataIssue::Severity::Error;
        std::cout << (err ? "error" : "warning") << " " << i.code << " [" << i.subject
                  << "]: " << i.message << "\n";
    }
    if (issues.empty() && !quiet_when_clean) std::cout << "no issues found\n";
    return !has_errors(issues);
}

void note_threads() {
    const char* t = std::getenv("TT_THREADS");
    if (t && std::string(t) != "1")
        std::cerr << "note: TT_THREADS=" << t << " requested; the search is single-threaded\n";
}

SolveFn make_solver(const Options& o) {
    if (o.solver == "external") {
        if (o.cmd.empty()) throw CLI::ValidationError("--solver external requires --cmd");
        mip::ExternalConfig cfg{o.cmd, o.out};
        return [cfg](const mip::Model& m) { return mip::solve_external(m, cfg); };
    }
    mip::SolveLimits limits{o.max_seconds, o.max_nodes};
    return [limits](const mip::Model& m) {
        auto r = mip::solve_exact(m, limits);
        if (r.status == mip::Status::Limit) throw LimitHit("solve stopped: " + r.message);
        return r;
    };
}

void write_solution_file(const std::string& path, const mip::Model& m,
                         const std::vector<double>& values, double objective) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# objective " << std::setprecision(17) << objective << "\n";
    for (int i = 0; i < m.num_vars(); ++i)
        out << m.var(i).name << " " << std::setprecision(17) << values[static_cast<size_t>(i)]
            << "\n";
}

void write_index_json(const std::string& path, const Instance& inst, const TipIndex& ix) {
    nlohmann::json j;
    j["num_vars"] = ix.num_vars;
    j["bases"] = {{"w", ix.w_base}, {"x", ix.x_base}, {"u", ix.u_base}, {"ts", ix.ts_base}};
    auto& vars = j["variables"];
    for (const Candidate& c : ix.cands) {
        const Section& s = inst.sections[static_cast<size_t>(c.section)];
        const std::string& room = inst.rooms[static_cast<size_t>(c.room)].id;
        std::string name = "z[" + s.id + "," + inst.grid.day_label(c.day) + "," +
                           std::to_string(c.period) + "," + room + "]";
        vars[name] = {{"kind", "placement"},
                      {"section", s.id},
                      {"day", inst.grid.day_label(c.day)},
                      {"period", c.period},
                      {"room", room}};
    }
    for (const auto& [gid, sid] : ix.xs) {
        vars["x[" + gid + "," + sid + "]"] = {
            {"kind", "enrollment"}, {"group", gid}, {"section", sid}};
    }
    if (ix.ts_base >= 0)
        for (const Section& s : inst.sections)
            vars["ts[" + s.id + "]"] = {{"kind", "overflow"}, {"section", s.id}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

void write_audit_json(const std::string& path, const AuditResult& a) {
    nlohmann::json j;
    j["ok"] = a.ok;
    j["claimed"] = a.claimed;
    j["recomputed"] = a.breakdown.total;
    j["violations"] = nlohmann::json::array();
    for (const auto& x : a.violations)
        j["violations"].push_back({{"family", x.family}, {"subject", x.subject}, {"detail", x.detail}});
    j["breakdown"] = {{"availability", a.breakdown.availability_total},
                      {"first_last_days", a.breakdown.first_last_days},
                      {"missed_meeting_days", a.breakdown.missed_meeting_days},
                      {"consecutive_pairs", a.breakdown.consecutive_pairs},
                      {"consecutive_triples", a.breakdown.consecutive_triples},
                      {"no_day_off", a.breakdown.no_day_off},
                      {"overflow", a.breakdown.overflow_total}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

void write_grid_csv(const std::string& path, const TimeGrid& grid,
                    const std::map<std::pair<int, int>, std::string>& cells) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "day";
    for (int t = grid.first_period; t <= grid.last_period; ++t) out << ",p" << t;
    out << "\n";
    for (int d = 0; d < grid.num_days(); ++d) {
        out << grid.day_label(d);
        for (int t = grid.first_period; t <= grid.last_period; ++t) {
            auto it = cells.find({d, t});
            out << "," << (it == cells.end() ? "" : it->second);
        }
        out << "\n";
    }
}

void append_cell(std::map<std::pair<int, int>, std::string>& cells, int d, int t,
                 const std::string& text) {
    auto& cell = cells[{d, t}];
    if (!cell.empty()) cell += "+";
    cell += text;
}

void write_grids(const Instance& inst, const Timetable& tt, const std::string& dir) {
    for (const auto& g : inst.groups) {
        std::map<std::pair<int, int>, std::string> cells;
        auto it = tt.enrollments.find(g.id);
        if (it != tt.enrollments.end())
            for (const auto& sid : it->second) {
                auto mit = tt.meetings.find(sid);
                if (mit == tt.meetings.end()) continue;
                for (const auto& m : mit->second) append_cell(cells, m.day, m.period, sid);
            }
        write_grid_csv(dir + "/grid_group_" + g.id + ".csv", inst.grid, cells);
    }
    for (const auto& p : inst.professors) {
        std::map<std::pair<int, int>, std::string> cells;
        for (const auto& s : inst.sections) {
            auto mit = tt.meetings.find(s.id);
            if (mit == tt.meetings.end()) continue;
            bool teaches = s.prof == p.id;
            bool attends = std::count(s.coprofs.begin(), s.coprofs.end(), p.id) > 0;
            if (!teaches && !attends) continue;
            for (const auto& m : mit->second)
                append_cell(cells, m.day, m.period, teaches ? s.id : s.id + "*");
        }
        write_grid_csv(dir + "/grid_prof_" + p.id + ".csv", inst.grid, cells);
    }
    for (const auto& r : inst.rooms) {
        std::map<std::pair<int, int>, std::string> cells;
        for (const auto& [sid, ms] : tt.meetings)
            for (const auto& m : ms)
                if (m.room == r.id) append_cell(cells, m.day, m.period, sid);
        write_grid_csv(dir + "/grid_room_" + r.id + ".csv", inst.grid, cells);
    }
}

int cmd_check_data(const Options& o) {
    Instance inst = load_instance(o);
    return report_issues(inst, false) ? kExitOk : kExitData;
}

int cmd_subgroup(const Options& o) {
    Instance inst = load_instance(o);
    if (!report_issues(inst, true)) return kExitData;
    std::filesystem::create_directories(o.out);
    SubgroupResult r = run_subgroup(inst, make_solver(o), {o.max_iter});
    write_groups_csv(o.out + "/groups_refined.csv", r.final_groups);
    write_subgroup_log(o.out + "/subgroup_log.csv", r.history);
    std::cout << "splits " << r.iterations << ", groups " << r.final_groups.size()
              << ", final overflow " << r.final_z << "\n";
    return kExitOk;
}

int cmd_build(const Options& o) {
    Instance inst = load_instance(o);
    if (!report_issues(inst, true)) return kExitData;
    Weights w = load_weights(o, inst.grid);
    std::filesystem::create_directories(o.out);
    TipIndex ix;
    mip::Model m = build_tip(inst, w, mode_of(o), &ix);
    TipSize predicted = predicted_tip_size(inst, mode_of(o));
    mip::write_lp_file(m, o.out + "/model.lp");
    write_index_json(o.out + "/index.json", inst, ix);
    std::cout << "rows " << m.num_constraints() << " (predicted " << predicted.rows << "), cols "
              << m.num_vars() << " (predicted " << predicted.cols << "), nonzeros "
              << m.nonzeros() << "\n";
    return kExitOk;
}

int cmd_solve(const Options& o) {
    Instance inst = load_instance(o);
    if (!report_issues(inst, true)) return kExitData;
    Weights w = load_weights(o, inst.grid);
    note_threads();
    std::filesystem::create_directories(o.out);
    TipIndex ix;
    mip::Model m = build_tip(inst, w, mode_of(o), &ix);
    mip::write_lp_file(m, o.out + "/model.lp");
    write_index_json(o.out + "/index.json", inst, ix);

    mip::SolveResult r;
    if (o.solver == "external") {
        if (o.cmd.empty()) throw CLI::ValidationError("--solver external requires --cmd");
        r = mip::solve_external(m, {o.cmd, o.out});
    } else {
        r = mip::solve_exact(m, {o.max_seconds, o.max_nodes});
    }
    std::cout << "status " << mip::status_name(r.status) << ", nodes " << r.nodes << "\n";
    if (!r.has_solution) {
        if (r.status == mip::Status::Infeasible) {
            std::cerr << "error: the timetabling program is infeasible\n";
            return kExitInfeasible;
        }
        std::cerr << "error: stopped without a solution (" << r.message << ")\n";
        return kExitLimit;
    }
    write_solution_file(o.out + "/solution.sol", m, r.values, r.objective);
    Timetable tt = decode_solution(inst, ix, r.values);
    write_timetable_file(o.out + "/timetable.csv", tt);
    AuditResult a = audit(inst, tt, w, mode_of(o), r.objective);
    write_audit_json(o.out + "/audit.json", a);
    write_violations_csv(o.out + "/violations.csv", a.violations);
    std::cout << "objective " << r.objective << ", audit " << (a.ok ? "ok" : "FAILED") << "\n";
    if (!a.ok) {
        std::cerr << "error: the decoded timetable failed its audit\n";
        return kExitInfeasible;
    }
    return r.status == mip::Status::Optimal ? kExitOk : kExitLimit;
}

int cmd_validate(const Options& o) {
    Instance inst = load_instance(o);
    Weights w = load_weights(o, inst.grid);
    Timetable tt;
    double claimed = 0.0;
    bool have_claimed = o.has_claimed;
    claimed = o.claimed;
    if (!o.timetable_path.empty()) {
        tt = read_timetable_file(o.timetable_path, inst.grid);
    } else {
        TipIndex ix;
        mip::Model m = build_tip(inst, w, mode_of(o), &ix);
        std::ifstream in(o.solution_path);
        if (!in) throw std::runtime_error("cannot open " + o.solution_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        std::vector<std::string> warnings;
        auto assignment = mip::parse_solution(ss.str(), m, &warnings);
        print_warnings(warnings);
        auto values = mip::to_values(m, assignment);
        auto ev = mip::evaluate(m, values);
        if (!ev.feasible) {
            std::cout << "solution violates " << ev.violated.size()
                      << " model constraints; first: " << ev.violated.front() << "\n";
        }
        if (!have_claimed) {
            claimed = ev.objective;
            have_claimed = true;
        }
        tt = decode_solution(inst, ix, values);
    }
    AuditResult a;
    if (have_claimed) {
        a = audit(inst, tt, w, mode_of(o), claimed);
    } else {
        a.violations = check_hard(inst, tt);
        a.breakdown = score_soft(inst, tt, w, mode_of(o));
        a.claimed = a.breakdown.total;
        a.ok = a.violations.empty();
    }
    for (const auto& x : a.violations)
        std::cout << x.family << " [" << x.subject << "]: " << x.detail << "\n";
    std::cout << "violations " << a.violations.size() << ", score " << a.breakdown.total;
    if (have_claimed) std::cout << ", claimed " << a.claimed;
    std::cout << ", audit " << (a.ok ? "ok" : "FAILED") << "\n";
    if (!o.out.empty() && o.out != ".") {
        std::filesystem::create_directories(o.out);
        write_violations_csv(o.out + "/violations.csv", a.violations);
        write_audit_json(o.out + "/audit.json", a);
    }
    return a.ok ? kExitOk : kExitInfeasible;
}

int cmd_report(const Options& o) {
    Instance inst = load_instance(o);
    Timetable tt = read_timetable_file(o.timetable_path, inst.grid);
    std::filesystem::create_directories(o.out);
    write_grids(inst, tt, o.out);
    std::cout << "wrote " << (inst.groups.size() + inst.professors.size() + inst.rooms.size())
              << " grid files to " << o.out << "\n";
    return kExitOk;
}

int cmd_gen(const Options& o, const GenParams& gp) {
    GenResult r = generate(gp);
    emit_files(r, o.out);
    std::cout << "generated " << r.instance.groups.size() << " groups, "
              << r.instance.sections.size() << " sections, " << r.instance.rooms.size()
              << " rooms, " << r.instance.professors.size() << " professors -> " << o.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"timetabling toolkit: group refinement, program build, search, audit"};
    app.require_subcommand(1);
    Options o;
    GenParams gp;

    auto* check = app.add_subcommand("check-data", "parse the four tables and run pre-solve checks");
    add_instance_flags(check, o);

    auto* sub = app.add_subcommand("subgroup", "refine groups until the packing overflow is zero");
    add_instance_flags(sub, o);
    add_solver_flags(sub, o);
    sub->add_option("--max-iter", o.max_iter, "split limit")->capture_default_str();
    sub->add_option("--out", o.out, "output directory")->required();

    auto* build = app.add_subcommand("build", "write the timetabling program as LP text");
    add_instance_flags(build, o);
    add_model_flags(build, o);
    build->add_option("--out", o.out, "output directory")->required();

    auto* solve = app.add_subcommand("solve", "build, solve, decode and audit");
    add_instance_flags(solve, o);
    add_model_flags(solve, o);
    add_solver_flags(solve, o);
    solve->add_option("--out", o.out, "output directory")->required();

    auto* val = app.add_subcommand("validate", "audit a timetable or a solver solution file");
    add_instance_flags(val, o);
    add_model_flags(val, o);
    auto* topt = val->add_option("--timetable", o.timetable_path, "timetable.csv to audit");
    auto* sopt = val->add_option("--solution", o.solution_path, "solver solution file to audit");
    auto* copt = val->add_option("--claimed", o.claimed, "objective value to check against");
    val->add_option("--out", o.out, "directory for violations.csv and audit.json");
    topt->excludes(sopt);

    auto* rep = app.add_subcommand("report", "write per-group, per-professor and per-room grids");
    add_instance_flags(rep, o);
    rep->add_option("--timetable", o.timetable_path, "timetable.csv")->required();
    rep->add_option("--out", o.out, "output directory")->required();

    auto* gen = app.add_subcommand("gen", "emit a synthetic instance with a feasibility witness");
    gen->add_option("--out", o.out, "output directory")->required();
    gen->add_option("--seed", gp.seed, "random seed")->capture_default_str();
    gen->add_option("--groups", gp.n_groups, "group count")->capture_default_str();
    gen->add_option("--group-size-min", gp.group_size_min)->capture_default_str();
    gen->add_option("--group-size-max", gp.group_size_max)->capture_default_str();
    gen->add_option("--size-skew", gp.size_skew, ">1 biases sizes small")->capture_default_str();
    gen->add_option("--courses", gp.n_courses, "course count")->capture_default_str();
    gen->add_option("--copies-min", gp.copies_min)->capture_default_str();
    gen->add_option("--copies-max", gp.copies_max)->capture_default_str();
    gen->add_option("--cap-min", gp.cap_min)->capture_default_str();
    gen->add_option("--cap-max", gp.cap_max)->capture_default_str();
    gen->add_option("--lab-fraction", gp.lab_fraction)->capture_default_str();
    gen->add_option("--curriculum-min", gp.curriculum_min)->capture_default_str();
    gen->add_option("--curriculum-max", gp.curriculum_max)->capture_default_str();
    gen->add_option("--professors", gp.n_professors, "starting professor pool")
        ->capture_default_str();
    gen->add_option("--rooms", gp.n_rooms, "minimum room count")->capture_default_str();
    gen->add_option("--room-types", gp.room_type_count)->capture_default_str();
    gen->add_option("--block-fraction", gp.availability_block_fraction,
                    "how much idle availability to degrade")
        ->capture_default_str();
    gen->add_flag("--dense", gp.dense, "full-week curricula (needs exactly 7 courses)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check_data(o);
        if (sub->parsed()) return cmd_subgroup(o);
        if (build->parsed()) return cmd_build(o);
        if (solve->parsed()) return cmd_solve(o);
        if (val->parsed()) {
            if (o.timetable_path.empty() && o.solution_path.empty())
                throw CLI::ValidationError("validate needs --timetable or --solution");
            o.has_claimed = copt->count() > 0;
            return cmd_validate(o);
        }
        if (rep->parsed()) return cmd_report(o);
        if (gen->parsed()) return cmd_gen(o, gp);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const LimitHit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLimit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::string what = e.what();
        if (what.find("infeasible") != std::string::npos) return kExitInfeasible;
        return kExitData;
    }
    return kExitUsage;
}
