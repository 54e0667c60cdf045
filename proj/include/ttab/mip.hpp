#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace ttab::mip {

enum class VarKind { Binary, Integer, Continuous };
enum class Sense { Le, Ge, Eq };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Binary;
    double lb = 0.0;
    double ub = 1.0;
    double obj = 0.0;        // objective coefficient (minimization)
};

struct Term {
    int var = -1;
    double coeff = 0.0;
};

struct Constraint {
    std::string name;
    std::vector<Term> terms;   // insertion order, one term per variable
    Sense sense = Sense::Le;
    double rhs = 0.0;
};

// Minimization MILP. Variables and constraints keep insertion order; names
// are unique. LP-reserved characters in names are rejected at write time.
class Model {
  public:
    explicit Model(std::string name = "model") : name_(std::move(name)) {}

    // Throws on duplicate name, inverted or non-finite-where-required bounds.
    int add_var(const std::string& name, VarKind kind, double lb, double ub, double obj = 0.0);
    int add_binary(const std::string& name, double obj = 0.0) {
        return add_var(name, VarKind::Binary, 0.0, 1.0, obj);
    }
    int add_integer(const std::string& name, double lb, double ub, double obj = 0.0) {
        return add_var(name, VarKind::Integer, lb, ub, obj);
    }

    // Throws on duplicate constraint name, empty terms, duplicate variable
    // refs within one constraint, zero or non-finite coefficients.
    int add_constraint(const std::string& name, std::vector<Term> terms, Sense sense, double rhs);

    int num_vars() const { return static_cast<int>(vars_.size()); }
    int num_constraints() const { return static_cast<int>(cons_.size()); }
    const Variable& var(int i) const { return vars_.at(static_cast<size_t>(i)); }
    const Constraint& con(int i) const { return cons_.at(static_cast<size_t>(i)); }
    const std::string& name() const { return name_; }

    // -1 when no variable has that name.
    int var_index(const std::string& name) const;

    double objective_value(const std::vector<double>& x) const;

    long long nonzeros() const;

  private:
    std::string name_;
    std::vector<Variable> vars_;
    std::vector<Constraint> cons_;
    std::map<std::string, int> var_index_;
    std::map<std::string, int> con_index_;
};

inline constexpr double kFeasTol = 1e-6;    // constraint/bound feasibility
inline constexpr double kIntTol = 1e-5;     // integrality rounding

struct Evaluation {
    bool feasible = false;
    std::vector<std::string> violated;   // constraint names, "bound: x", "integer: x"
    double objective = 0.0;
};

// x indexed like the model's variables; throws on size mismatch.
Evaluation evaluate(const Model& m, const std::vector<double>& x);
// Throws a missing-variable error when the map does not cover every variable.
Evaluation evaluate(const Model& m, const std::map<std::string, double>& assignment);

// CPLEX-dialect LP text: Minimize / Subject To / Bounds / Generals /
// Binaries / End, insertion order, <=12 significant digits, byte-stable.
// Throws a naming error on LP-reserved characters in any name.
std::string write_lp(const Model& m);
void write_lp_file(const Model& m, const std::string& path);

// Line-oriented "name value" pairs, '#' comments. Missing variables default
// to 0 with a warning; unknown names warn; malformed or out-of-bounds
// values throw.
std::map<std::string, double> parse_solution(const std::string& text, const Model& m,
                                             std::vector<std::string>* warnings = nullptr);

// Dense vector in variable order from a (complete or partial) name map;
// absent names become 0.
std::vector<double> to_values(const Model& m, const std::map<std::string, double>& assignment);

enum class Status { Optimal, Feasible, Infeasible, Unbounded, Limit };

const char* status_name(Status s);

struct SolveLimits {
    double max_seconds = 0.0;    // <= 0: unlimited
    long long max_nodes = 0;     // <= 0: unlimited
};

struct SolveResult {
    Status status = Status::Infeasible;
    bool has_solution = false;
    double objective = 0.0;
    std::vector<double> values;                  // by variable index
    std::map<std::string, double> assignment;    // variable name -> value
    double proof_gap = 0.0;                      // 0 when optimal
    long long nodes = 0;
    std::vector<double> incumbent_objectives;    // strictly improving sequence
    std::string message;
};

// Exact depth-first branch and bound with bound propagation. Requires
// binary/integer variables with finite bounds (throws otherwise).
// Deterministic for fixed node limits; a wall-clock limit may cut the
// search at a machine-dependent point.
SolveResult solve_exact(const Model& m, const SolveLimits& limits = {});

struct ExternalConfig {
    std::string command_template;   // must contain {lp} and {sol}
    std::string workdir = ".";
};

// Writes the LP file, runs the command, parses and *verifies* the solution
// against the model; the external objective claim is never trusted. A clean
// exit with a feasible solution is reported as optimal (adapter convention:
// the external solver is asked to solve to optimality). Known solver tuning
// used historically with this family of models (Gurobi: Heuristics=0,
// FlowCoverCuts=1) is intentionally not set here; pass it via the command.
SolveResult solve_external(const Model& m, const ExternalConfig& cfg);

}  // namespace ttab::mip
