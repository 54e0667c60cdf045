#include "ttab/mip.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ttab::mip {

int Model::add_var(const std::string& name, VarKind kind, double lb, double ub, double obj) {
    if (name.empty()) throw std::runtime_error("variable with empty name");
    if (!var_index_.emplace(name, num_vars()).second)
        throw std::runtime_error("duplicate variable name: " + name);
    if (kind == VarKind::Binary && (lb != 0.0 || ub != 1.0))
        throw std::runtime_error("binary variable '" + name + "' must have bounds [0,1]");
    if (std::isnan(lb) || std::isnan(ub) || lb > ub)
        throw std::runtime_error("variable '" + name + "' has invalid bounds");
    if (!std::isfinite(obj)) throw std::runtime_error("variable '" + name + "' has non-finite objective");
    vars_.push_back({name, kind, lb, ub, obj});
    return num_vars() - 1;
}

int Model::add_constraint(const std::string& name, std::vector<Term> terms, Sense sense,
                          double rhs) {
    if (name.empty()) throw std::runtime_error("constraint with empty name");
    if (!con_index_.emplace(name, num_constraints()).second)
        throw std::runtime_error("duplicate constraint name: " + name);
    if (terms.empty()) throw std::runtime_error("constraint '" + name + "' has no terms");
    if (!std::isfinite(rhs)) throw std::runtime_error("constraint '" + name + "' has non-finite rhs");
    std::set<int> seen;
    for (const Term& t : terms) {
        if (t.var < 0 || t.var >= num_vars())
            throw std::runtime_error("constraint '" + name + "' references an unknown variable");
        if (!seen.insert(t.var).second)
            throw std::runtime_error("constraint '" + name + "' repeats variable '" +
                                     vars_[static_cast<size_t>(t.var)].name + "'");
        if (t.coeff == 0.0 || !std::isfinite(t.coeff))
            throw std::runtime_error("constraint '" + name + "' has a zero or non-finite coefficient");
    }
    cons_.push_back({name, std::move(terms), sense, rhs});
    return num_constraints() - 1;
}

int Model::var_index(const std::string& name) const {
    auto it = var_index_.find(name);
    return it == var_index_.end() ? -1 : it->second;
}

double Model::objective_value(const std::vector<double>& x) const {
    if (x.size() != vars_.size())
        throw std::runtime_error("objective_value: assignment size mismatch");
    double v = 0.0;
    for (size_t i = 0; i < vars_.size(); ++i) v += vars_[i].obj * x[i];
    return v;
}

long long Model::nonzeros() const {
    long long n = 0;
    for (const auto& c : cons_) n += static_cast<long long>(c.terms.size());
    return n;
}

Evaluation evaluate(const Model& m, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != m.num_vars())
        throw std::runtime_error("evaluate: assignment size mismatch");
    Evaluation ev;
    for (int i = 0; i < m.num_vars(); ++i) {
        const Variable& v = m.var(i);
        if (x[static_cast<size_t>(i)] < v.lb - kFeasTol || x[static_cast<size_t>(i)] > v.ub + kFeasTol)
            ev.violated.push_back("bound: " + v.name);
        if (v.kind != VarKind::Continuous &&
            std::fabs(x[static_cast<size_t>(i)] - std::round(x[static_cast<size_t>(i)])) > kIntTol)
            ev.violated.push_back("integer: " + v.name);
    }
    for (int c = 0; c < m.num_constraints(); ++c) {
        const Constraint& con = m.con(c);
        double act = 0.0;
        for (const Term& t : con.terms) act += t.coeff * x[static_cast<size_t>(t.var)];
        bool ok = true;
        switch (con.sense) {
            case Sense::Le: ok = act <= con.rhs + kFeasTol; break;
            case Sense::Ge: ok = act >= con.rhs - kFeasTol; break;
            case Sense::Eq: ok = std::fabs(act - con.rhs) <= kFeasTol; break;
        }
        if (!ok) ev.violated.push_back(con.name);
    }
    ev.feasible = ev.violated.empty();
    ev.objective = m.objective_value(x);
    return ev;
}

Evaluation evaluate(const Model& m, const std::map<std::string, double>& assignment) {
    std::vector<double> x(static_cast<size_t>(m.num_vars()), 0.0);
    for (int i = 0; i < m.num_vars(); ++i) {
        auto it = assignment.find(m.var(i).name);
        if (it == assignment.end())
            throw std::runtime_error("evaluate: missing variable '" + m.var(i).name + "'");
        x[static_cast<size_t>(i)] = it->second;
    }
    return evaluate(m, x);
}

namespace {

// An LP name must not start with a digit or '.', must not be mistakable for
// an exponent token, and must avoid operator/delimiter characters. Brackets
// and commas are fine (Gurobi-style subscripted names).
void check_lp_name(const std::string& name, const char* what) {
    bool bad = name.empty();
    if (!bad) {
        char c0 = name[0];
        if (std::isdigit(static_cast<unsigned char>(c0)) || c0 == '.') bad = true;
        if ((c0 == 'e' || c0 == 'E') && name.size() > 1 &&
            (std::isdigit(static_cast<unsigned char>(name[1])) || name[1] == '.'))
            bad = true;
    }
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c)) ||
            c == '+' || c == '-' || c == '*' || c == '/' || c == '^' ||
            c == '<' || c == '>' || c == '=' || c == ':' || c == '\\')
            bad = true;
    }
    if (bad)
        throw std::runtime_error(std::string("LP naming error: ") + what + " name '" + name +
                                 "' contains reserved characters or starts badly");
}

std::string fmt_num(double v) {
    if (std::fabs(v) < 1e15 && v == std::floor(v)) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Emit "label: tokens..." wrapping lines at roughly 70 characters.
class LineWriter {
  public:
    LineWriter(std::string& out, const std::string& head) : out_(out), line_(head) {}
    void token(const std::string& t) {
        if (line_.size() + 1 + t.size() > 70 && line_.size() > 1) {
            out_ += line_;
            out_ += '\n';
            line_ = " ";
        }
        line_ += ' ';
        line_ += t;
    }
    void flush() {
        out_ += line_;
        out_ += '\n';
    }

  private:
    std::string& out_;
    std::string line_;
};

void emit_terms(LineWriter& lw, const Model& m, const std::vector<Term>& terms) {
    bool first = true;
    for (const Term& t : terms) {
        double a = t.coeff;
        std::string tok;
        if (first) {
            if (a < 0) tok = "- ";
        } else {
            tok = a < 0 ? "- " : "+ ";
        }
        double mag = std::fabs(a);
        if (mag != 1.0) {
            tok += fmt_num(mag);
            tok += ' ';
        }
        tok += m.var(t.var).name;
        lw.token(tok);
        first = false;
    }
}

}  // namespace

std::string write_lp(const Model& m) {
    for (int i = 0; i < m.num_vars(); ++i) check_lp_name(m.var(i).name, "variable");
    for (int c = 0; c < m.num_constraints(); ++c) check_lp_name(m.con(c).name, "constraint");

    std::string out;
    out += "\\ Problem: " + m.name() + "\n";
    out += "Minimize\n";
    {
        LineWriter lw(out, " obj:");
        std::vector<Term> obj;
        for (int i = 0; i < m.num_vars(); ++i)
            if (m.var(i).obj != 0.0) obj.push_back({i, m.var(i).obj});
        emit_terms(lw, m, obj);
        lw.flush();
    }
    out += "Subject To\n";
    for (int c = 0; c < m.num_constraints(); ++c) {
        const Constraint& con = m.con(c);
        LineWriter lw(out, " " + con.name + ":");
        emit_terms(lw, m, con.terms);
        const char* rel = con.sense == Sense::Le ? "<=" : con.sense == Sense::Ge ? ">=" : "=";
        lw.token(std::string(rel) + " " + fmt_num(con.rhs));
        lw.flush();
    }

    std::string bounds;
    for (int i = 0; i < m.num_vars(); ++i) {
        const Variable& v = m.var(i);
        if (v.kind == VarKind::Binary) continue;   // implied [0,1]
        const bool lb_def = v.lb == 0.0;
        const bool ub_inf = !std::isfinite(v.ub);
        if (lb_def && ub_inf) continue;            // LP default bounds
        bounds += ' ';
        if (std::isfinite(v.lb) && !std::isfinite(v.ub)) {
            if (v.lb != 0.0) bounds += v.name + " >= " + fmt_num(v.lb);
        } else if (!std::isfinite(v.lb)) {
            bounds += v.name + (ub_inf ? " free" : " <= " + fmt_num(v.ub));
        } else if (lb_def) {
            bounds += v.name + " <= " + fmt_num(v.ub);
        } else {
            bounds += fmt_num(v.lb) + " <= " + v.name + " <= " + fmt_num(v.ub);
        }
        bounds += '\n';
    }
    if (!bounds.empty()) {
        out += "Bounds\n";
        out += bounds;
    }

    auto emit_names = [&](VarKind k, const char* header) {
        bool any = false;
        for (int i = 0; i < m.num_vars(); ++i) any = any || m.var(i).kind == k;
        if (!any) return;
        out += header;
        out += '\n';
        LineWriter lw(out, "");
        for (int i = 0; i < m.num_vars(); ++i)
            if (m.var(i).kind == k) lw.token(m.var(i).name);
        lw.flush();
    };
    emit_names(VarKind::Integer, "Generals");
    emit_names(VarKind::Binary, "Binaries");
    out += "End\n";
    return out;
}

void write_lp_file(const Model& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << write_lp(m);
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::map<std::string, double> parse_solution(const std::string& text, const Model& m,
                                             std::vector<std::string>* warnings) {
    std::map<std::string, double> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string name, value, extra;
        if (!(ls >> name)) continue;   // blank
        if (!(ls >> value))
            throw std::runtime_error("solution line " + std::to_string(lineno) + ": missing value");
        if (ls >> extra)
            throw std::runtime_error("solution line " + std::to_string(lineno) + ": trailing tokens");
        int idx = m.var_index(name);
        if (idx < 0) {
            if (warnings) warnings->push_back("unknown variable '" + name + "' ignored");
            continue;
        }
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error("solution line " + std::to_string(lineno) +
                                     ": non-numeric value '" + value + "'");
        }
        if (pos != value.size())
            throw std::runtime_error("solution line " + std::to_string(lineno) +
                                     ": non-numeric value '" + value + "'");
        const Variable& var = m.var(idx);
        if (v < var.lb - kFeasTol || v > var.ub + kFeasTol)
            throw std::runtime_error("solution line " + std::to_string(lineno) + ": value " + value +
                                     " out of bounds for '" + name + "'");
        out[name] = v;
    }
    for (int i = 0; i < m.num_vars(); ++i) {
        const std::string& n = m.var(i).name;
        if (!out.count(n)) {
            if (warnings) warnings->push_back("variable '" + n + "' missing, defaulted to 0");
            out[n] = 0.0;
        }
    }
    return out;
}

std::vector<double> to_values(const Model& m, const std::map<std::string, double>& assignment) {
    std::vector<double> x(static_cast<size_t>(m.num_vars()), 0.0);
    for (int i = 0; i < m.num_vars(); ++i) {
        auto it = assignment.find(m.var(i).name);
        if (it != assignment.end()) x[static_cast<size_t>(i)] = it->second;
    }
    return x;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Feasible: return "feasible";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
        case Status::Limit: return "limit";
    }
    return "?";
}

}  // namespace ttab::mip
