#include "ttab/mip.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ttab::mip {

namespace {

constexpr double kRoundGuard = 1e-7;   // guards floor/ceil of exact-integer data

// Depth-first branch and bound over integer boxes with activity-based bound
// propagation. All rows are normalized to "sum a_i x_i <= rhs"; equalities
// become two rows. The objective lower bound and row activities are
// maintained incrementally and unwound through a trail.
class Search {
  public:
    explicit Search(const Model& m) : m_(m) {
        n_ = m.num_vars();
        c_.resize(n_);
        lb_.resize(n_);
        ub_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            const Variable& v = m.var(i);
            if (v.kind == VarKind::Continuous)
                throw std::runtime_error("unsupported model: continuous variable '" + v.name + "'");
            if (!std::isfinite(v.lb) || !std::isfinite(v.ub))
                throw std::runtime_error("unsupported model: variable '" + v.name +
                                         "' lacks finite bounds");
            c_[i] = v.obj;
            lb_[i] = static_cast<long long>(std::ceil(v.lb - kRoundGuard));
            ub_[i] = static_cast<long long>(std::floor(v.ub + kRoundGuard));
            if (c_[i] != std::floor(c_[i])) all_int_obj_ = false;
        }
        occ_.resize(n_);
        for (int ci = 0; ci < m.num_constraints(); ++ci) {
            const Constraint& con = m.con(ci);
            switch (con.sense) {
                case Sense::Le: add_row(con.terms, con.rhs, false); break;
                case Sense::Ge: add_row(con.terms, con.rhs, true); break;
                case Sense::Eq:
                    add_row(con.terms, con.rhs, false);
                    add_row(con.terms, con.rhs, true);
                    break;
            }
        }
        minact_.resize(rows_.size());
        queued_.assign(rows_.size(), 0);
        for (size_t r = 0; r < rows_.size(); ++r) {
            double a = 0.0;
            for (const Term& t : rows_[r].terms)
                a += t.coeff > 0 ? t.coeff * lb_[t.var] : t.coeff * ub_[t.var];
            minact_[r] = a;
        }
        for (int i = 0; i < n_; ++i)
            obj_bound_ += c_[i] > 0 ? c_[i] * lb_[i] : c_[i] * ub_[i];
    }

    SolveResult run(const SolveLimits& lim) {
        lim_ = lim;
        t0_ = std::chrono::steady_clock::now();
        bool root_ok = true;
        for (int i = 0; i < n_; ++i)
            if (lb_[i] > ub_[i]) root_ok = false;
        if (root_ok) {
            for (size_t r = 0; r < rows_.size(); ++r) enqueue(static_cast<int>(r));
            root_ok = propagate();
        }
        if (root_ok) dive();

        SolveResult res;
        res.nodes = nodes_;
        res.incumbent_objectives = incumbents_;
        if (have_inc_) {
            res.has_solution = true;
            res.objective = inc_obj_;
            res.values.assign(inc_.begin(), inc_.end());
            for (int i = 0; i < n_; ++i)
                res.assignment[m_.var(i).name] = res.values[static_cast<size_t>(i)];
        }
        if (!aborted_) {
            res.status = have_inc_ ? Status::Optimal : Status::Infeasible;
            res.proof_gap = 0.0;
        } else {
            res.status = Status::Limit;
            res.message = hit_nodes_ ? "node limit reached" : "time limit reached";
            res.proof_gap = have_inc_
                                ? std::max(0.0, inc_obj_ - std::min(open_bound_, inc_obj_))
                                : std::numeric_limits<double>::infinity();
        }
        return res;
    }

  private:
    struct Row {
        std::vector<Term> terms;
        double rhs = 0.0;
    };
    struct TrailEntry {
        int var;
        int which;   // 0 = lb, 1 = ub
        long long old_val;
    };

    void add_row(const std::vector<Term>& terms, double rhs, bool negate) {
        Row row;
        row.rhs = negate ? -rhs : rhs;
        row.terms.reserve(terms.size());
        for (const Term& t : terms) row.terms.push_back({t.var, negate ? -t.coeff : t.coeff});
        int idx = static_cast<int>(rows_.size());
        for (const Term& t : row.terms) occ_[t.var].push_back({idx, t.coeff});
        rows_.push_back(std::move(row));
    }

    void enqueue(int r) {
        if (!queued_[static_cast<size_t>(r)]) {
            queued_[static_cast<size_t>(r)] = 1;
            queue_.push_back(r);
        }
    }

    void drain_queue() {
        for (int r : queue_) queued_[static_cast<size_t>(r)] = 0;
        queue_.clear();
    }

    // Raise lb of v to nv; returns false on empty domain.
    bool set_lb(int v, long long nv) {
        if (nv <= lb_[v]) return true;
        if (nv > ub_[v]) return false;
        trail_.push_back({v, 0, lb_[v]});
        double d = static_cast<double>(nv - lb_[v]);
        for (const auto& [r, a] : occ_[v])
            if (a > 0) {
                minact_[static_cast<size_t>(r)] += a * d;
                enqueue(r);
            }
        if (c_[v] > 0) obj_bound_ += c_[v] * d;
        lb_[v] = nv;
        return true;
    }

    bool set_ub(int v, long long nv) {
        if (nv >= ub_[v]) return true;
        if (nv < lb_[v]) return false;
        trail_.push_back({v, 1, ub_[v]});
        double d = static_cast<double>(ub_[v] - nv);
        for (const auto& [r, a] : occ_[v])
            if (a < 0) {
                minact_[static_cast<size_t>(r)] += -a * d;
                enqueue(r);
            }
        if (c_[v] < 0) obj_bound_ += -c_[v] * d;
        ub_[v] = nv;
        return true;
    }

    void undo_to(size_t mark) {
        while (trail_.size() > mark) {
            const TrailEntry e = trail_.back();
            trail_.pop_back();
            if (e.which == 0) {
                double d = static_cast<double>(lb_[e.var] - e.old_val);
                for (const auto& [r, a] : occ_[e.var])
                    if (a > 0) minact_[static_cast<size_t>(r)] -= a * d;
                if (c_[e.var] > 0) obj_bound_ -= c_[e.var] * d;
                lb_[e.var] = e.old_val;
            } else {
                double d = static_cast<double>(e.old_val - ub_[e.var]);
                for (const auto& [r, a] : occ_[e.var])
                    if (a < 0) minact_[static_cast<size_t>(r)] -= -a * d;
                if (c_[e.var] < 0) obj_bound_ -= -c_[e.var] * d;
                ub_[e.var] = e.old_val;
            }
        }
    }

    bool propagate() {
        while (!queue_.empty()) {
            int r = queue_.back();
            queue_.pop_back();
            queued_[static_cast<size_t>(r)] = 0;
            const Row& row = rows_[static_cast<size_t>(r)];
            double slack = row.rhs - minact_[static_cast<size_t>(r)];
            if (slack < -kFeasTol) {
                drain_queue();
                return false;
            }
            for (const Term& t : row.terms) {
                int v = t.var;
                if (lb_[v] == ub_[v]) continue;
                double a = t.coeff;
                if (a > 0) {
                    // a*x <= a*lb + slack
                    long long nb = lb_[v] + static_cast<long long>(std::floor(slack / a + kRoundGuard));
                    if (nb < ub_[v]) {
                        if (!set_ub(v, nb)) {
                            drain_queue();
                            return false;
                        }
                        slack = row.rhs - minact_[static_cast<size_t>(r)];
                    }
                } else {
                    // a*x <= a*ub + slack  =>  x >= ub - slack/|a|
                    long long nb = ub_[v] - static_cast<long long>(std::floor(slack / -a + kRoundGuard));
                    if (nb > lb_[v]) {
                        if (!set_lb(v, nb)) {
                            drain_queue();
                            return false;
                        }
                        slack = row.rhs - minact_[static_cast<size_t>(r)];
                    }
                }
            }
        }
        return true;
    }

    double bound() const {
        if (!all_int_obj_) return obj_bound_;
        return std::ceil(obj_bound_ - kFeasTol);
    }

    bool limits_hit() {
        if (lim_.max_nodes > 0 && nodes_ > lim_.max_nodes) {
            hit_nodes_ = true;
            return true;
        }
        if (lim_.max_seconds > 0 && (nodes_ & 511) == 0) {
            std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0_;
            if (el.count() > lim_.max_seconds) return true;
        }
        return false;
    }

    void record_leaf() {
        double obj = 0.0;
        for (int i = 0; i < n_; ++i) obj += c_[i] * static_cast<double>(lb_[i]);
        if (!have_inc_ || obj < inc_obj_ - 1e-9) {
            have_inc_ = true;
            inc_obj_ = obj;
            inc_ = lb_;
            incumbents_.push_back(obj);
        }
    }

    void dive() {
        ++nodes_;
        if (aborted_ || limits_hit()) {
            aborted_ = true;
            open_bound_ = std::min(open_bound_, bound());
            return;
        }
        if (have_inc_ && bound() >= inc_obj_ - 1e-9) return;

        int v = -1;
        for (int i = 0; i < n_; ++i)
            if (lb_[i] < ub_[i]) {
                v = i;
                break;
            }
        if (v < 0) {
            record_leaf();
            return;
        }

        // First child fixes toward the cheaper end; the second takes the rest
        // of the domain. Zero-cost variables try their upper bound first.
        const bool low_first = c_[v] > 0;
        for (int side = 0; side < 2 && !aborted_; ++side) {
            size_t mark = trail_.size();
            bool ok;
            if (side == 0)
                ok = low_first ? set_ub(v, lb_[v]) : set_lb(v, ub_[v]);
            else
                ok = low_first ? set_lb(v, lb_[v] + 1) : set_ub(v, ub_[v] - 1);
            if (ok && propagate()) dive();
            drain_queue();
            undo_to(mark);
        }
        if (aborted_) open_bound_ = std::min(open_bound_, bound());
    }

    const Model& m_;
    int n_ = 0;
    std::vector<double> c_;
    std::vector<long long> lb_, ub_;
    std::vector<Row> rows_;
    std::vector<std::vector<std::pair<int, double>>> occ_;
    std::vector<double> minact_;
    std::vector<char> queued_;
    std::vector<int> queue_;
    std::vector<TrailEntry> trail_;
    bool all_int_obj_ = true;
    double obj_bound_ = 0.0;

    bool have_inc_ = false;
    double inc_obj_ = 0.0;
    std::vector<long long> inc_;
    std::vector<double> incumbents_;

    SolveLimits lim_;
    std::chrono::steady_clock::time_point t0_;
    long long nodes_ = 0;
    bool aborted_ = false;
    bool hit_nodes_ = false;
    double open_bound_ = std::numeric_limits<double>::infinity();
};

}  // namespace

SolveResult solve_exact(const Model& m, const SolveLimits& limits) {
    Search s(m);
    return s.run(limits);
}

}  // namespace ttab::mip
