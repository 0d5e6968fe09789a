#include "sds/ratlp.hpp"

#include <algorithm>
#include <sstream>

namespace sds {

namespace {

constexpr int kMaxVars = 96;
constexpr int kMaxRows = 512;

/// Dense exact two-phase simplex with Bland's rule:
/// minimize c·y subject to A y = b, y >= 0. Exact arithmetic means Bland's
/// rule alone guarantees termination.
class Simplex {
public:
    enum class Status { Optimal, Unbounded, Infeasible };

    Simplex(std::vector<std::vector<Rat>> a, std::vector<Rat> b, std::vector<Rat> c)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        rows_ = static_cast<int>(a_.size());
        cols_ = rows_ ? static_cast<int>(a_[0].size()) : static_cast<int>(c_.size());
    }

    Status solve() {
        for (int i = 0; i < rows_; ++i) {
            if (b_[i].sign() < 0) {
                for (auto& v : a_[i]) v = -v;
                b_[i] = -b_[i];
            }
        }
        // Phase 1: artificial basis.
        int n0 = cols_;
        for (int i = 0; i < rows_; ++i) {
            for (int r = 0; r < rows_; ++r) a_[r].push_back(Rat(r == i ? 1 : 0));
        }
        cols_ = n0 + rows_;
        basis_.resize(rows_);
        for (int i = 0; i < rows_; ++i) basis_[i] = n0 + i;

        std::vector<Rat> phase1(cols_, Rat(0));
        for (int j = n0; j < cols_; ++j) phase1[j] = Rat(1);
        Rat art_total(0);
        if (run(phase1, &art_total) == Status::Unbounded)
            return Status::Infeasible;  // cannot happen: phase 1 is bounded below by 0
        if (art_total.sign() != 0) return Status::Infeasible;

        // Drive any basic artificial out of the basis (its value is zero).
        for (int i = 0; i < rows_; ++i) {
            if (basis_[i] < n0) continue;
            int piv = -1;
            for (int j = 0; j < n0 && piv < 0; ++j)
                if (a_[i][j].sign() != 0) piv = j;
            if (piv >= 0) pivot(i, piv);
        }
        // Delete rows still led by artificials (redundant equations).
        for (int i = rows_ - 1; i >= 0; --i) {
            if (basis_[i] >= n0) {
                a_.erase(a_.begin() + i);
                b_.erase(b_.begin() + i);
                basis_.erase(basis_.begin() + i);
                --rows_;
            }
        }
        // Drop artificial columns.
        for (int i = 0; i < rows_; ++i) a_[i].resize(n0);
        cols_ = n0;

        c_.resize(n0, Rat(0));
        Rat obj(0);
        return run(c_, &obj);
    }

    /// Value of structural variable j in the final basic solution.
    std::vector<Rat> solution(int nvars) const {
        std::vector<Rat> x(nvars, Rat(0));
        for (int i = 0; i < rows_; ++i)
            if (basis_[i] < nvars) x[basis_[i]] = b_[i];
        return x;
    }

private:
    std::vector<std::vector<Rat>> a_;
    std::vector<Rat> b_;
    std::vector<Rat> c_;
    std::vector<int> basis_;
    int rows_ = 0;
    int cols_ = 0;

    void pivot(int pr, int pc) {
        Rat inv = Rat(1) / a_[pr][pc];
        for (auto& v : a_[pr]) v *= inv;
        b_[pr] *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == pr || a_[i][pc].sign() == 0) continue;
            Rat f = a_[i][pc];
            for (int j = 0; j < cols_; ++j) a_[i][j] -= f * a_[pr][j];
            b_[i] -= f * b_[pr];
        }
        basis_[pr] = pc;
    }

    /// Minimizes cost·y from the current basis; Bland's rule throughout.
    Status run(const std::vector<Rat>& cost, Rat* objective) {
        while (true) {
            // Reduced costs: r_j = cost_j - cost_B · B^{-1} A_j.
            int enter = -1;
            for (int j = 0; j < cols_ && enter < 0; ++j) {
                Rat r = cost[j];
                for (int i = 0; i < rows_; ++i) {
                    if (a_[i][j].sign() != 0) r -= cost[basis_[i]] * a_[i][j];
                }
                if (r.sign() < 0) enter = j;
            }
            if (enter < 0) break;
            int leave = -1;
            Rat best;
            for (int i = 0; i < rows_; ++i) {
                if (a_[i][enter].sign() <= 0) continue;
                Rat ratio = b_[i] / a_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return Status::Unbounded;
            pivot(leave, enter);
        }
        Rat obj(0);
        for (int i = 0; i < rows_; ++i) obj += cost[basis_[i]] * b_[i];
        *objective = obj;
        return Status::Optimal;
    }
};

/// Converts a non-strict system to standard equality form and solves
/// max objective·x. `x` is split into positive/negative parts unless the
/// system declares its variables non-negative.
OptResult solve_max(const LinearSystem& sys, const std::vector<Rat>& objective) {
    int n = sys.num_vars;
    int base = sys.vars_nonnegative ? n : 2 * n;
    int slacks = 0;
    for (const auto& row : sys.rows)
        if (row.rel != Rel::Eq) ++slacks;

    int cols = base + slacks;
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    a.reserve(sys.rows.size());
    int slack_at = base;
    for (const auto& row : sys.rows) {
        std::vector<Rat> r(cols, Rat(0));
        for (int j = 0; j < n; ++j) {
            if (row.coeff[j].sign() == 0) continue;
            r[sys.vars_nonnegative ? j : 2 * j] = row.coeff[j];
            if (!sys.vars_nonnegative) r[2 * j + 1] = -row.coeff[j];
        }
        switch (row.rel) {
            case Rel::Le: r[slack_at++] = Rat(1); break;
            case Rel::Ge: r[slack_at++] = Rat(-1); break;
            case Rel::Eq: break;
            default: throw Error(Errc::BadInput, "strict relation in optimization");
        }
        a.push_back(std::move(r));
        b.push_back(row.rhs);
    }

    // Simplex minimizes; negate the objective.
    std::vector<Rat> c(cols, Rat(0));
    for (int j = 0; j < n; ++j) {
        c[sys.vars_nonnegative ? j : 2 * j] = -objective[j];
        if (!sys.vars_nonnegative) c[2 * j + 1] = objective[j];
    }

    Simplex sx(std::move(a), std::move(b), std::move(c));
    auto status = sx.solve();
    if (status == Simplex::Status::Infeasible)
        throw Error(Errc::InfeasibleSystem, "system is infeasible");
    OptResult out;
    if (status == Simplex::Status::Unbounded) {
        out.unbounded = true;
        return out;
    }
    auto y = sx.solution(base);
    out.point.resize(n);
    Rat val(0);
    for (int j = 0; j < n; ++j) {
        out.point[j] = sys.vars_nonnegative ? y[j] : y[2 * j] - y[2 * j + 1];
        val += objective[j] * out.point[j];
    }
    out.value = val;
    return out;
}

void check_size(const LinearSystem& sys) {
    if (sys.num_vars > kMaxVars)
        throw Error(Errc::SizeLimit, "system has " + std::to_string(sys.num_vars) +
                                         " variables, limit is " + std::to_string(kMaxVars));
    if (static_cast<int>(sys.rows.size()) > kMaxRows)
        throw Error(Errc::SizeLimit, "system has " + std::to_string(sys.rows.size()) +
                                         " rows, limit is " + std::to_string(kMaxRows));
}

bool row_satisfied(const LinRow& row, const std::vector<Rat>& x) {
    Rat lhs(0);
    for (size_t j = 0; j < row.coeff.size(); ++j) lhs += row.coeff[j] * x[j];
    switch (row.rel) {
        case Rel::Le: return lhs <= row.rhs;
        case Rel::Lt: return lhs < row.rhs;
        case Rel::Eq: return lhs == row.rhs;
        case Rel::Ge: return lhs >= row.rhs;
        case Rel::Gt: return lhs > row.rhs;
    }
    return false;
}

}  // namespace

Rel negate_rel(Rel r) {
    switch (r) {
        case Rel::Le: return Rel::Gt;
        case Rel::Lt: return Rel::Ge;
        case Rel::Ge: return Rel::Lt;
        case Rel::Gt: return Rel::Le;
        case Rel::Eq: throw Error(Errc::Internal, "equality negates into two branches");
    }
    throw Error(Errc::Internal, "bad relation");
}

std::string rel_str(Rel r) {
    switch (r) {
        case Rel::Le: return "<=";
        case Rel::Lt: return "<";
        case Rel::Eq: return "=";
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
    }
    return "?";
}

void LinearSystem::add(std::vector<Rat> coeff, Rel rel, Rat rhs) {
    if (static_cast<int>(coeff.size()) != num_vars)
        throw Error(Errc::BadInput, "coefficient row has wrong arity");
    rows.push_back(LinRow{std::move(coeff), rel, std::move(rhs)});
}

void LinearSystem::add_var(int var, Rel rel, Rat rhs) {
    std::vector<Rat> c(num_vars, Rat(0));
    c[var] = Rat(1);
    add(std::move(c), rel, std::move(rhs));
}

void LinearSystem::append(const LinearSystem& other) {
    if (other.num_vars != num_vars)
        throw Error(Errc::BadInput, "appending a system over a different variable space");
    for (const auto& r : other.rows) rows.push_back(r);
}

bool LinearSystem::has_strict() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const LinRow& r) { return r.rel == Rel::Lt || r.rel == Rel::Gt; });
}

std::string LinearSystem::describe() const {
    std::ostringstream os;
    for (const auto& row : rows) {
        bool first = true;
        for (int j = 0; j < num_vars; ++j) {
            if (row.coeff[j].sign() == 0) continue;
            if (!first) os << " + ";
            os << row.coeff[j].str() << "*"
               << (j < static_cast<int>(var_names.size()) ? var_names[j]
                                                          : "x" + std::to_string(j));
            first = false;
        }
        if (first) os << "0";
        os << " " << rel_str(row.rel) << " " << row.rhs.str() << "\n";
    }
    return os.str();
}

FeasibilityResult feasible(const LinearSystem& sys) {
    check_size(sys);
    FeasibilityResult out;

    // Weaken strict rows with a shared slack t, cap t <= 1, and maximize t.
    // The system is strictly feasible iff the optimum is positive; the
    // optimal point then satisfies every strict row with slack t* > 0.
    LinearSystem aux;
    aux.num_vars = sys.num_vars + 1;
    aux.vars_nonnegative = false;
    int t = sys.num_vars;
    bool any_strict = false;
    for (const auto& row : sys.rows) {
        LinRow r;
        r.coeff = row.coeff;
        r.coeff.push_back(Rat(0));
        r.rhs = row.rhs;
        switch (row.rel) {
            case Rel::Lt: r.coeff[t] = Rat(1); r.rel = Rel::Le; any_strict = true; break;
            case Rel::Gt: r.coeff[t] = Rat(-1); r.rel = Rel::Ge; any_strict = true; break;
            default: r.rel = row.rel; break;
        }
        aux.rows.push_back(std::move(r));
    }
    if (sys.vars_nonnegative) {
        for (int j = 0; j < sys.num_vars; ++j) {
            LinRow r;
            r.coeff.assign(aux.num_vars, Rat(0));
            r.coeff[j] = Rat(1);
            r.rel = Rel::Ge;
            r.rhs = Rat(0);
            aux.rows.push_back(std::move(r));
        }
    }
    {
        LinRow cap;
        cap.coeff.assign(aux.num_vars, Rat(0));
        cap.coeff[t] = Rat(1);
        cap.rel = Rel::Le;
        cap.rhs = Rat(1);
        aux.rows.push_back(cap);
        LinRow lo;
        lo.coeff.assign(aux.num_vars, Rat(0));
        lo.coeff[t] = Rat(1);
        lo.rel = Rel::Ge;
        lo.rhs = Rat(0);
        aux.rows.push_back(lo);
    }

    std::vector<Rat> obj(aux.num_vars, Rat(0));
    obj[t] = Rat(1);
    OptResult opt;
    try {
        opt = solve_max(aux, obj);
    } catch (const Error& e) {
        if (e.code == Errc::InfeasibleSystem) return out;  // closure already infeasible
        throw;
    }
    if (any_strict && opt.value.sign() <= 0) return out;  // only the closure is feasible

    out.feasible = true;
    out.point.assign(opt.point.begin(), opt.point.begin() + sys.num_vars);
    for (const auto& row : sys.rows) {
        if (!row_satisfied(row, out.point))
            throw Error(Errc::Internal, "feasible() produced a point violating a row");
    }
    return out;
}

OptResult maximize(const LinearSystem& sys, const std::vector<Rat>& objective) {
    check_size(sys);
    if (sys.has_strict())
        throw Error(Errc::BadInput, "maximize requires non-strict constraints");
    if (static_cast<int>(objective.size()) != sys.num_vars)
        throw Error(Errc::BadInput, "objective has wrong arity");
    OptResult opt = solve_max(sys, objective);
    if (!opt.unbounded) {
        for (const auto& row : sys.rows)
            if (!row_satisfied(row, opt.point))
                throw Error(Errc::Internal, "maximize() produced a point violating a row");
    }
    return opt;
}

ImpliesResult implies(const LinearSystem& assumptions,
                      const std::vector<LinearSystem>& conclusion_cases,
                      std::uint64_t case_cap) {
    ImpliesResult out;

    // Negation atoms per case: one branch per non-strict row, two for
    // equalities. The complement of the disjunction is the cartesian product.
    struct Atom {
        LinRow row;
    };
    std::vector<std::vector<Atom>> atoms;
    std::uint64_t total = 1;
    for (const auto& c : conclusion_cases) {
        if (c.num_vars != assumptions.num_vars)
            throw Error(Errc::BadInput, "conclusion case over a different variable space");
        std::vector<Atom> as;
        for (const auto& row : c.rows) {
            if (row.rel == Rel::Eq) {
                as.push_back({LinRow{row.coeff, Rel::Lt, row.rhs}});
                as.push_back({LinRow{row.coeff, Rel::Gt, row.rhs}});
            } else {
                as.push_back({LinRow{row.coeff, negate_rel(row.rel), row.rhs}});
            }
        }
        if (as.empty()) {
            // Empty conjunction is trivially true, so the disjunction holds.
            out.holds = true;
            return out;
        }
        if (total > case_cap / as.size())
            throw Error(Errc::CaseCap, "complement expansion exceeds the case cap");
        total *= as.size();
        atoms.push_back(std::move(as));
    }

    std::vector<size_t> pick(atoms.size(), 0);
    while (true) {
        LinearSystem test = assumptions;
        for (size_t j = 0; j < atoms.size(); ++j) test.rows.push_back(atoms[j][pick[j]].row);
        auto fr = feasible(test);
        if (fr.feasible) {
            out.holds = false;
            out.counterexample = fr.point;
            return out;
        }
        // Next selection.
        size_t j = 0;
        while (j < atoms.size()) {
            if (++pick[j] < atoms[j].size()) break;
            pick[j++] = 0;
        }
        if (j == atoms.size()) break;
    }
    out.holds = true;
    return out;
}

std::optional<Lottery> sd_dominated(const Profile& profile, const Lottery& p) {
    int m = profile.m();
    LinearSystem sys;
    sys.num_vars = m;
    sys.vars_nonnegative = true;
    {
        std::vector<Rat> ones(m, Rat(1));
        sys.add(ones, Rel::Eq, Rat(1));
    }
    std::vector<Rat> objective(m, Rat(0));
    Rat baseline(0);
    for (int i = 0; i < profile.n(); ++i) {
        const WeakOrder& o = profile.voter(i);
        for (int k = 0; k + 1 < o.num_classes(); ++k) {  // skip the full set
            AltSet u = o.class_prefix(k);
            std::vector<Rat> c(m, Rat(0));
            for (Alt a : set_members(u)) c[a] = Rat(1);
            Rat pu = p.mass(u);
            sys.add(c, Rel::Ge, pu);
            for (Alt a : set_members(u)) objective[a] += Rat(1);
            baseline += pu;
        }
    }
    OptResult opt = maximize(sys, objective);
    if (opt.unbounded) throw Error(Errc::Internal, "bounded polytope reported unbounded");
    if (opt.value <= baseline) return std::nullopt;

    Lottery q{std::vector<Rat>(opt.point.begin(), opt.point.end())};
    bool some_strict = false;
    for (int i = 0; i < profile.n(); ++i) {
        SdOrd ord = sd_compare(profile.voter(i), q, p);
        if (ord == SdOrd::QStrictlyPreferred || ord == SdOrd::Incomparable)
            throw Error(Errc::Internal, "dominating certificate failed re-verification");
        if (ord == SdOrd::PStrictlyPreferred) some_strict = true;
    }
    if (!some_strict) throw Error(Errc::Internal, "dominating certificate is not strict");
    return q;
}

}  // namespace sds
