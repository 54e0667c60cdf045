#include "ttab/mip.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>

namespace ttab::mip {

namespace {

std::string substitute(std::string tmpl, const std::string& key, const std::string& value) {
    size_t pos = 0;
    while ((pos = tmpl.find(key, pos)) != std::string::npos) {
        tmpl.replace(pos, key.size(), value);
        pos += value.size();
    }
    return tmpl;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tail_of(const std::string& text, size_t max_len = 600) {
    if (text.size() <= max_len) return text;
    return "..." + text.substr(text.size() - max_len);
}

}  // namespace

SolveResult solve_external(const Model& m, const ExternalConfig& cfg) {
    if (cfg.command_template.find("{lp}") == std::string::npos ||
        cfg.command_template.find("{sol}") == std::string::npos)
        throw std::runtime_error("external solver: command template needs {lp} and {sol}");

    const std::string dir = cfg.workdir.empty() ? "." : cfg.workdir;
    const std::string lp_path = dir + "/" + m.name() + ".lp";
    const std::string sol_path = dir + "/" + m.name() + ".sol";
    const std::string log_path = dir + "/" + m.name() + ".solver.log";
    write_lp_file(m, lp_path);

    std::string cmd = substitute(cfg.command_template, "{lp}", lp_path);
    cmd = substitute(cmd, "{sol}", sol_path);
    // Group the template so its own redirections survive the log capture.
    cmd = "( " + cmd + " ) > " + log_path + " 2>&1";

    int rc = std::system(cmd.c_str());
    int exit_code = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    std::string log;
    try {
        log = read_file(log_path);
    } catch (const std::exception&) {
        // no output captured
    }
    if (exit_code != 0)
        throw std::runtime_error("external solver failed (exit " + std::to_string(exit_code) +
                                 "): " + tail_of(log));

    std::vector<std::string> warnings;
    std::map<std::string, double> assignment = parse_solution(read_file(sol_path), m, &warnings);
    std::vector<double> x = to_values(m, assignment);
    Evaluation ev = evaluate(m, x);
    if (!ev.feasible) {
        std::string detail;
        for (size_t i = 0; i < ev.violated.size() && i < 5; ++i)
            detail += (i ? ", " : "") + ev.violated[i];
        throw std::runtime_error("external solution failed verification: " + detail);
    }

    SolveResult res;
    res.status = Status::Optimal;   // clean exit is taken as an optimality claim
    res.has_solution = true;
    res.objective = ev.objective;   // recomputed, never the solver's claim
    res.values = std::move(x);
    res.assignment = std::move(assignment);
    res.proof_gap = 0.0;
    for (const std::string& w : warnings) {
        if (!res.message.empty()) res.message += "; ";
        res.message += w;
        if (res.message.size() > 400) break;
    }
    return res;
}

}  // namespace ttab::mip
