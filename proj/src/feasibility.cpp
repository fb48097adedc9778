#include "sokkt/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sokkt {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Feasible: return "FEASIBLE";
        case SolveStatus::Infeasible: return "INFEASIBLE";
        case SolveStatus::Unbounded: return "UNBOUNDED";
        case SolveStatus::TolInconclusive: return "TOL_INCONCLUSIVE";
    }
    return "?";
}

LinearSystem LinearSystem::empty(int num_vars) {
    LinearSystem sys;
    sys.eq_lhs = Matrix::Zero(0, num_vars);
    sys.eq_rhs = Vector::Zero(0);
    sys.ineq_lhs = Matrix::Zero(0, num_vars);
    sys.ineq_rhs = Vector::Zero(0);
    sys.lower_bounds.assign(num_vars, std::nullopt);
    return sys;
}

int LinearSystem::num_vars() const {
    return static_cast<int>(std::max(eq_lhs.cols(), ineq_lhs.cols()));
}

void LinearSystem::add_ineq(const Vector& a, double b, bool strict) {
    ineq_lhs.conservativeResize(ineq_lhs.rows() + 1, a.size());
    ineq_lhs.row(ineq_lhs.rows() - 1) = a.transpose();
    ineq_rhs.conservativeResize(ineq_rhs.size() + 1);
    ineq_rhs[ineq_rhs.size() - 1] = b;
    if (strict) strict_rows.push_back(static_cast<int>(ineq_lhs.rows()) - 1);
}

void LinearSystem::add_eq(const Vector& a, double b) {
    eq_lhs.conservativeResize(eq_lhs.rows() + 1, a.size());
    eq_lhs.row(eq_lhs.rows() - 1) = a.transpose();
    eq_rhs.conservativeResize(eq_rhs.size() + 1);
    eq_rhs[eq_rhs.size() - 1] = b;
}

double LinearSystem::residual(const Vector& w) const {
    double r = 0.0;
    if (eq_lhs.rows() > 0) r = (eq_lhs * w - eq_rhs).cwiseAbs().maxCoeff();
    if (ineq_lhs.rows() > 0) {
        const Vector slack = ineq_lhs * w - ineq_rhs;
        r = std::max(r, slack.maxCoeff());
    }
    for (int j = 0; j < static_cast<int>(lower_bounds.size()); ++j)
        if (lower_bounds[j]) r = std::max(r, *lower_bounds[j] - w[j]);
    return std::max(r, 0.0);
}

namespace {

// Classic dense tableau simplex core. Columns are already nonnegative
// variables; rows are equalities with rhs >= 0.
class Tableau {
public:
    Tableau(Matrix a, Vector b, int num_artificial)
        : a_(std::move(a)), b_(std::move(b)), num_art_(num_artificial) {
        basis_.resize(rows());
        const int first_art = cols() - num_art_;
        for (int i = 0; i < rows(); ++i) basis_[i] = first_art + i;
    }

    int rows() const { return static_cast<int>(a_.rows()); }
    int cols() const { return static_cast<int>(a_.cols()); }
    int first_artificial() const { return cols() - num_art_; }

    // Minimizes cost over the current basis. Returns status; set
    // allow_artificial=false to ban artificial columns from entering.
    SolveStatus run(const Vector& cost, bool allow_artificial, double piv_tol,
                    long max_iter, double* objective_out) {
        Vector red = cost;
        double obj = 0.0;
        for (int i = 0; i < rows(); ++i) {
            const double cb = cost[basis_[i]];
            if (cb != 0.0) {
                red -= cb * a_.row(i).transpose();
                obj += cb * b_[i];
            }
        }
        const int art0 = first_artificial();
        for (long iter = 0; iter < max_iter; ++iter) {
            // Bland: smallest eligible column index.
            int enter = -1;
            for (int j = 0; j < cols(); ++j) {
                if (!allow_artificial && j >= art0) break;
                if (red[j] < -piv_tol) { enter = j; break; }
            }
            if (enter < 0) {
                *objective_out = obj;
                return SolveStatus::Feasible;
            }
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < rows(); ++i) {
                if (a_(i, enter) > piv_tol) {
                    const double ratio = b_[i] / a_(i, enter);
                    if (ratio < best_ratio - 1e-15 ||
                        (std::abs(ratio - best_ratio) <= 1e-15 &&
                         (leave < 0 || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return SolveStatus::Unbounded;
            pivot(leave, enter, &red, &obj);
        }
        return SolveStatus::TolInconclusive;
    }

    // Pivots basic artificial variables out where a nonzero non-artificial
    // entry exists; remaining artificial rows are redundant and stay at zero.
    void drive_out_artificials(double piv_tol) {
        const int art0 = first_artificial();
        for (int i = 0; i < rows(); ++i) {
            if (basis_[i] < art0) continue;
            int enter = -1;
            for (int j = 0; j < art0; ++j) {
                if (std::abs(a_(i, j)) > piv_tol) { enter = j; break; }
            }
            if (enter >= 0) pivot(i, enter, nullptr, nullptr);
        }
    }

    Vector solution() const {
        Vector x = Vector::Zero(cols());
        for (int i = 0; i < rows(); ++i) x[basis_[i]] = b_[i];
        return x;
    }

private:
    void pivot(int leave, int enter, Vector* red, double* obj) {
        const double p = a_(leave, enter);
        a_.row(leave) /= p;
        b_[leave] /= p;
        for (int i = 0; i < rows(); ++i) {
            if (i == leave) continue;
            const double f = a_(i, enter);
            if (f != 0.0) {
                a_.row(i) -= f * a_.row(leave);
                b_[i] -= f * b_[leave];
                if (b_[i] < 0.0 && b_[i] > -1e-13) b_[i] = 0.0;
            }
        }
        if (red) {
            const double f = (*red)[enter];
            if (f != 0.0) {
                *red -= f * a_.row(leave).transpose();
                *obj += f * b_[leave];
            }
        }
        basis_[leave] = enter;
    }

    Matrix a_;
    Vector b_;
    int num_art_;
    std::vector<int> basis_;
};

struct StandardForm {
    Matrix a;       // m x ncols (artificials appended later)
    Vector b;       // m
    Vector cost;    // ncols, minimize
    // Recovers original variables from the standard-form solution.
    std::vector<std::pair<int, int>> plus_minus;  // (col+, col-) per free var
    std::vector<std::pair<int, double>> shifted;  // (col, lb) per bounded var
    int num_orig = 0;
};

StandardForm to_standard_form(const Vector& objective, const LinearSystem& sys, Sense sense) {
    const int n = sys.num_vars();
    StandardForm sf;
    sf.num_orig = n;

    // Column layout per original variable.
    std::vector<int> col_plus(n), col_minus(n, -1);
    int ncols = 0;
    for (int j = 0; j < n; ++j) {
        const bool bounded = j < static_cast<int>(sys.lower_bounds.size()) &&
                             sys.lower_bounds[j].has_value();
        col_plus[j] = ncols++;
        if (!bounded) col_minus[j] = ncols++;
        if (bounded)
            sf.shifted.emplace_back(col_plus[j], *sys.lower_bounds[j]);
        else
            sf.plus_minus.emplace_back(col_plus[j], col_minus[j]);
    }
    const int num_ineq = static_cast<int>(sys.ineq_lhs.rows());
    const int slack0 = ncols;
    ncols += num_ineq;

    const int m = static_cast<int>(sys.eq_lhs.rows()) + num_ineq;
    sf.a = Matrix::Zero(m, ncols);
    sf.b = Vector::Zero(m);
    sf.cost = Vector::Zero(ncols);

    auto fill_row = [&](int row, const Eigen::RowVectorXd& lhs, double rhs) {
        double r = rhs;
        for (int j = 0; j < n; ++j) {
            sf.a(row, col_plus[j]) = lhs[j];
            if (col_minus[j] >= 0) sf.a(row, col_minus[j]) = -lhs[j];
            else r -= lhs[j] * *sys.lower_bounds[j];  // shifted variable
        }
        sf.b[row] = r;
    };

    int row = 0;
    for (int i = 0; i < sys.eq_lhs.rows(); ++i, ++row)
        fill_row(row, sys.eq_lhs.row(i), sys.eq_rhs[i]);
    for (int i = 0; i < num_ineq; ++i, ++row) {
        fill_row(row, sys.ineq_lhs.row(i), sys.ineq_rhs[i]);
        sf.a(row, slack0 + i) = 1.0;
    }
    // rhs >= 0 for phase 1.
    for (int i = 0; i < m; ++i) {
        if (sf.b[i] < 0.0) {
            sf.a.row(i) = -sf.a.row(i);
            sf.b[i] = -sf.b[i];
        }
    }
    const double sign = (sense == Sense::Maximize) ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
        sf.cost[col_plus[j]] = sign * objective[j];
        if (col_minus[j] >= 0) sf.cost[col_minus[j]] = -sign * objective[j];
    }
    return sf;
}

Vector recover(const StandardForm& sf, const Vector& x) {
    Vector w = Vector::Zero(sf.num_orig);
    // Shifted and split columns were laid out variable by variable, so walk
    // them jointly to reconstruct in original order.
    size_t ipm = 0, ish = 0;
    for (int j = 0; j < sf.num_orig; ++j) {
        if (ish < sf.shifted.size() && (ipm >= sf.plus_minus.size() ||
                                        sf.shifted[ish].first < sf.plus_minus[ipm].first)) {
            w[j] = x[sf.shifted[ish].first] + sf.shifted[ish].second;
            ++ish;
        } else {
            w[j] = x[sf.plus_minus[ipm].first] - x[sf.plus_minus[ipm].second];
            ++ipm;
        }
    }
    return w;
}

}  // namespace

SolveOutcome solve_lp(const Vector& objective, const LinearSystem& sys, Sense sense,
                      const Config& cfg) {
    const int n = sys.num_vars();
    if (objective.size() != n) throw std::invalid_argument("objective dimension mismatch");
    if (sys.eq_lhs.rows() > 0 && sys.eq_lhs.cols() != n)
        throw std::invalid_argument("equality block dimension mismatch");
    if (sys.ineq_lhs.rows() > 0 && sys.ineq_lhs.cols() != n)
        throw std::invalid_argument("inequality block dimension mismatch");

    StandardForm sf = to_standard_form(objective, sys, sense);
    const int m = static_cast<int>(sf.a.rows());
    const int ncols = static_cast<int>(sf.a.cols());

    Matrix a(m, ncols + m);
    a.leftCols(ncols) = sf.a;
    a.rightCols(m) = Matrix::Identity(m, m);
    Tableau tab(std::move(a), sf.b, m);

    const double scale = 1.0 + (m > 0 ? sf.b.lpNorm<Eigen::Infinity>() : 0.0);
    const long max_iter = 2000L * (ncols + m + 10);

    Vector phase1_cost = Vector::Zero(ncols + m);
    phase1_cost.tail(m).setOnes();
    double infeas = 0.0;
    SolveStatus st = tab.run(phase1_cost, true, cfg.lp_pivot_tol, max_iter, &infeas);
    SolveOutcome out;
    if (st == SolveStatus::TolInconclusive) {
        out.status = st;
        out.note = "phase-1 iteration limit";
        return out;
    }
    if (infeas > 1e-7 * scale) {
        out.status = SolveStatus::Infeasible;
        out.note = "phase-1 optimum positive";
        return out;
    }
    if (infeas > cfg.feas_tol * scale) {
        out.status = SolveStatus::TolInconclusive;
        out.note = "phase-1 optimum in tolerance band";
        return out;
    }
    tab.drive_out_artificials(cfg.lp_pivot_tol);

    Vector phase2_cost = Vector::Zero(ncols + m);
    phase2_cost.head(ncols) = sf.cost;
    double obj = 0.0;
    st = tab.run(phase2_cost, false, cfg.lp_pivot_tol, max_iter, &obj);
    if (st == SolveStatus::Unbounded) {
        out.status = SolveStatus::Unbounded;
        return out;
    }
    if (st == SolveStatus::TolInconclusive) {
        out.status = st;
        out.note = "phase-2 iteration limit";
        return out;
    }

    const Vector w = recover(sf, tab.solution().head(ncols));
    const double resid = sys.residual(w);
    if (resid > 1e-7 * scale) {
        std::ostringstream os;
        os << "simplex witness failed verification, residual " << resid;
        throw std::logic_error(os.str());
    }
    if (resid > cfg.feas_tol * scale) {
        out.status = SolveStatus::TolInconclusive;
        out.note = "witness residual in tolerance band";
        out.witness = w;
        return out;
    }
    out.status = SolveStatus::Feasible;
    out.witness = w;
    out.objective = (sense == Sense::Maximize) ? -obj : obj;
    return out;
}

SolveOutcome strict_margin(const LinearSystem& sys, double box_radius, const Config& cfg) {
    if (sys.strict_rows.empty())
        throw std::invalid_argument("strict_margin requires at least one strict row");
    if (!(box_radius > 0.0)) throw std::invalid_argument("box radius must be positive");

    const int n = sys.num_vars();
    LinearSystem ext = LinearSystem::empty(n + 1);  // last variable is eps
    ext.lower_bounds.assign(n + 1, std::nullopt);
    for (int j = 0; j < n && j < static_cast<int>(sys.lower_bounds.size()); ++j)
        ext.lower_bounds[j] = sys.lower_bounds[j];

    std::vector<bool> strict(sys.ineq_lhs.rows(), false);
    for (int r : sys.strict_rows) strict[r] = true;
    for (int i = 0; i < sys.ineq_lhs.rows(); ++i) {
        Vector row = Vector::Zero(n + 1);
        row.head(n) = sys.ineq_lhs.row(i).transpose();
        if (strict[i]) row[n] = 1.0;  // a.w + eps <= b
        ext.add_ineq(row, sys.ineq_rhs[i]);
    }
    for (int i = 0; i < sys.eq_lhs.rows(); ++i) {
        Vector row = Vector::Zero(n + 1);
        row.head(n) = sys.eq_lhs.row(i).transpose();
        ext.add_eq(row, sys.eq_rhs[i]);
    }
    for (int j = 0; j < n; ++j) {
        Vector up = Vector::Zero(n + 1);
        up[j] = 1.0;
        ext.add_ineq(up, box_radius);
        Vector dn = Vector::Zero(n + 1);
        dn[j] = -1.0;
        ext.add_ineq(dn, box_radius);
    }

    Vector objective = Vector::Zero(n + 1);
    objective[n] = 1.0;
    SolveOutcome lp = solve_lp(objective, ext, Sense::Maximize, cfg);

    SolveOutcome out;
    out.note = lp.note;
    if (lp.status == SolveStatus::Infeasible) {
        out.status = SolveStatus::Infeasible;
        out.margin = -std::numeric_limits<double>::infinity();
        out.note = "non-strict relaxation infeasible within box";
        return out;
    }
    if (lp.status != SolveStatus::Feasible) {
        out.status = lp.status;
        return out;
    }
    out.margin = lp.objective;
    out.witness = lp.witness->head(n);
    out.status = (out.margin > cfg.strict_tol) ? SolveStatus::Feasible : SolveStatus::Infeasible;
    return out;
}

}  // namespace sokkt
