#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tetraqg/errors.hpp"
#include "tetraqg/linear_system.hpp"
#include "tetraqg/rational.hpp"

namespace tetraqg {

namespace detail {

/// Dense exact-rational simplex tableau in equality form with nonnegative
/// variables. Bland's rule throughout, so every phase terminates and
/// identical inputs pivot identically.
///
/// Construction notes, shared by the feasibility driver below:
///  - each free system variable is split x = x+ - x-;
///  - every inequality row carries one surplus column;
///  - rows are scaled by sigma in {+1,-1} so the right-hand side is
///    nonnegative; rows whose surplus column then equals +e_i seed the
///    basis, all others receive an artificial column;
///  - the column that starts as e_i (surplus or artificial) is kept and
///    never deleted, so the simplex multiplier of row i can be read back
///    from its reduced cost at any later point.
class Tableau {
 public:
  enum class Step { Optimal, Pivoted, Unbounded };

  int add_column(bool artificial) {
    is_artificial_.push_back(artificial);
    barred_.push_back(false);
    for (auto& row : mat_) row.emplace_back(0);
    return num_cols_++;
  }

  int add_row() {
    mat_.emplace_back(num_cols_);
    rhs_.emplace_back(0);
    basis_.push_back(-1);
    return static_cast<int>(mat_.size()) - 1;
  }

  Rational& at(int i, int j) { return mat_[i][j]; }
  Rational& rhs(int i) { return rhs_[i]; }
  int& basis(int i) { return basis_[i]; }
  void bar(int j) { barred_[j] = true; }
  bool artificial(int j) const { return is_artificial_[j]; }
  int rows() const { return static_cast<int>(mat_.size()); }
  int cols() const { return num_cols_; }
  const Rational& value() const { return value_; }
  const Rational& reduced_cost(int j) const { return d_[j]; }

  /// (Re)starts a phase: cost index -2 selects "maximize -(sum of
  /// artificials)", otherwise maximize the given column.
  void set_phase(int objective_col) {
    cost_.assign(num_cols_, Rational(0));
    if (objective_col == kPhaseOne) {
      for (int j = 0; j < num_cols_; ++j)
        if (is_artificial_[j]) cost_[j] = -1;
    } else {
      cost_[objective_col] = 1;
    }
    d_ = cost_;
    value_ = 0;
    for (int i = 0; i < rows(); ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb.is_zero()) continue;
      value_ += cb * rhs_[i];
      for (int j = 0; j < num_cols_; ++j)
        if (!mat_[i][j].is_zero()) d_[j] -= cb * mat_[i][j];
    }
  }

  static constexpr int kPhaseOne = -2;

  Step step() {
    // Bland: entering column is the lowest-index improving one.
    int enter = -1;
    for (int j = 0; j < num_cols_; ++j) {
      if (barred_[j]) continue;
      if (d_[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return Step::Optimal;

    int leave = -1;
    Rational best;
    for (int i = 0; i < rows(); ++i) {
      const Rational& a = mat_[i][enter];
      if (a <= 0) continue;
      Rational ratio = rhs_[i] / a;
      if (leave < 0 || ratio < best ||
          (ratio == best && basis_[i] < basis_[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave < 0) return Step::Unbounded;
    pivot(leave, enter);
    return Step::Pivoted;
  }

  /// Runs Bland pivots to optimality. Returns false on unbounded.
  bool optimize() {
    for (long iter = 0; iter < kMaxPivots; ++iter) {
      switch (step()) {
        case Step::Optimal: return true;
        case Step::Unbounded: return false;
        case Step::Pivoted: break;
      }
    }
    throw std::logic_error("simplex pivot limit exceeded");
  }

  void pivot(int r, int e) {
    std::vector<Rational>& prow = mat_[r];
    const Rational piv = prow[e];
    if (piv != 1) {
      for (Rational& x : prow)
        if (!x.is_zero()) x /= piv;
      rhs_[r] /= piv;
    }
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const Rational f = mat_[i][e];
      if (f.is_zero()) continue;
      std::vector<Rational>& row = mat_[i];
      for (int j = 0; j < num_cols_; ++j)
        if (!prow[j].is_zero()) row[j] -= f * prow[j];
      if (!rhs_[r].is_zero()) rhs_[i] -= f * rhs_[r];
    }
    const Rational fd = d_[e];
    if (!fd.is_zero()) {
      for (int j = 0; j < num_cols_; ++j)
        if (!prow[j].is_zero()) d_[j] -= fd * prow[j];
      if (!rhs_[r].is_zero()) value_ += fd * rhs_[r];
    }
    basis_[r] = e;
  }

  /// After a zero-value phase one: pivot leftover artificials out of the
  /// basis; rows that are linear combinations of others reduce to 0 = 0
  /// and are dropped. The columns stay, so multipliers of dropped rows
  /// remain readable through their reader columns.
  void drive_out_artificials() {
    for (int i = rows() - 1; i >= 0; --i) {
      if (!is_artificial_[basis_[i]]) continue;
      int e = -1;
      for (int j = 0; j < num_cols_; ++j) {
        if (is_artificial_[j] || barred_[j]) continue;
        if (!mat_[i][j].is_zero()) {
          e = j;
          break;
        }
      }
      if (e >= 0) {
        pivot(i, e);
      } else {
        mat_.erase(mat_.begin() + i);
        rhs_.erase(rhs_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
    for (int j = 0; j < num_cols_; ++j)
      if (is_artificial_[j]) barred_[j] = true;
  }

  /// Simplex multiplier of the original equality-form row whose initial
  /// identity column was `reader_col`: at any point the current tableau is
  /// M times the original rows, so cost(reader) - d(reader) recovers the
  /// combination coefficient (c_B M)_i even across row deletions.
  Rational multiplier_from_reader(int reader_col) const {
    return cost_[reader_col] - d_[reader_col];
  }

  /// Value of an eq-form column in the current basic solution.
  Rational column_value(int j) const {
    for (int i = 0; i < rows(); ++i)
      if (basis_[i] == j) return rhs_[i];
    return Rational(0);
  }

 private:
  static constexpr long kMaxPivots = 500000;

  int num_cols_ = 0;
  std::vector<std::vector<Rational>> mat_;
  std::vector<Rational> rhs_;
  std::vector<Rational> cost_;
  std::vector<Rational> d_;
  Rational value_;
  std::vector<int> basis_;
  std::vector<bool> barred_;
  std::vector<bool> is_artificial_;
};

/// Builds the eps-relaxed equality-form tableau for a system. Column
/// layout: [x+ x- per variable][eps][surplus...][artificials...]; rows are
/// the system rows in order plus the bound row eps <= 1, plus optionally
/// a pin row eps = pin (used to extract an interior feasible point).
struct RelaxedTableau {
  Tableau tab;
  int eps_col = -1;
  int num_vars = 0;
  // Per built row: original system row (or -1/-2), sign flip, and the
  // column that started as that row's identity (surplus or artificial).
  std::vector<int> row_orig, row_sigma, row_reader;

  explicit RelaxedTableau(const RationalLinearSystem& sys,
                          const Rational* pin = nullptr) {
    num_vars = static_cast<int>(sys.variables.size());
    for (int j = 0; j < num_vars; ++j) {
      tab.add_column(false);
      tab.add_column(false);
    }
    eps_col = tab.add_column(false);

    struct RowPlan {
      int orig;
      Relation rel;
      const std::vector<Rational>* coeffs;
      Rational eps_coeff;
      Rational rhs;
    };
    std::vector<RowPlan> plan;
    plan.reserve(sys.rows.size() + 2);
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
      const LinearRow& row = sys.rows[i];
      plan.push_back({static_cast<int>(i), row.rel, &row.coeffs,
                      row.rel == Relation::StrictGt ? Rational(-1) : Rational(0),
                      row.rhs});
    }
    static const std::vector<Rational> kEmpty;
    plan.push_back({-1, Relation::WeakGe, &kEmpty, Rational(-1), Rational(-1)});
    if (pin) plan.push_back({-2, Relation::Equal, &kEmpty, Rational(1), *pin});

    // Surplus columns first so artificial columns sit at the end.
    std::vector<int> surplus(plan.size(), -1);
    for (std::size_t i = 0; i < plan.size(); ++i)
      if (plan[i].rel != Relation::Equal) surplus[i] = tab.add_column(false);

    for (std::size_t i = 0; i < plan.size(); ++i) {
      const RowPlan& p = plan[i];
      const bool ineq = p.rel != Relation::Equal;
      const int sigma = ineq ? (p.rhs > 0 ? 1 : -1) : (p.rhs < 0 ? -1 : 1);
      const int r = tab.add_row();
      for (std::size_t j = 0; j < p.coeffs->size(); ++j) {
        const Rational& cj = (*p.coeffs)[j];
        if (cj.is_zero()) continue;
        tab.at(r, 2 * static_cast<int>(j)) = sigma * cj;
        tab.at(r, 2 * static_cast<int>(j) + 1) = -sigma * cj;
      }
      if (!p.eps_coeff.is_zero()) tab.at(r, eps_col) = sigma * p.eps_coeff;
      if (ineq) tab.at(r, surplus[i]) = -sigma;
      tab.rhs(r) = sigma * p.rhs;

      int reader;
      if (ineq && sigma == -1) {
        tab.basis(r) = surplus[i];
        reader = surplus[i];
      } else {
        const int art = tab.add_column(true);
        tab.at(r, art) = 1;
        tab.basis(r) = art;
        reader = art;
      }
      row_orig.push_back(p.orig);
      row_sigma.push_back(sigma);
      row_reader.push_back(reader);
    }
  }

  /// Multipliers over the original system rows, read from the reader
  /// columns at the current reduced costs. Valid at any phase optimum,
  /// including after redundant-row deletions.
  std::vector<Rational> system_multipliers(std::size_t num_rows) const {
    std::vector<Rational> mu(num_rows, Rational(0));
    for (std::size_t i = 0; i < row_orig.size(); ++i) {
      const int o = row_orig[i];
      if (o < 0) continue;
      const Rational y = tab.multiplier_from_reader(row_reader[i]);
      if (!y.is_zero()) mu[o] = -row_sigma[i] * y;
    }
    return mu;
  }

  /// Values of the original variables in the current basic solution.
  std::vector<Rational> variable_values() const {
    std::vector<Rational> x(num_vars, Rational(0));
    for (int j = 0; j < num_vars; ++j)
      x[j] = tab.column_value(2 * j) - tab.column_value(2 * j + 1);
    return x;
  }
};

}  // namespace detail

/// Decides exact feasibility of a mixed strict/weak rational system.
/// Strict rows are relaxed to ">= rhs + eps" with 0 <= eps <= 1 and eps is
/// maximized by exact simplex: a positive optimum certifies a strictly
/// feasible point (returned at eps = eps*/2), a zero optimum or an
/// infeasible relaxation yields a Motzkin-style refutation assembled from
/// the optimal simplex multipliers and re-checked by verify_certificate.
inline FeasibilityOutcome solve_feasibility(const RationalLinearSystem& sys) {
  detail::RelaxedTableau relaxed(sys);
  detail::Tableau& tab = relaxed.tab;

  tab.set_phase(detail::Tableau::kPhaseOne);
  if (!tab.optimize())
    throw UnboundedArtifact("phase one unbounded; artificial costs are bounded");

  auto make_certificate = [&]() {
    InfeasibilityCertificate cert{relaxed.system_multipliers(sys.rows.size())};
    if (!verify_certificate(sys, cert))
      throw std::logic_error("solver produced a certificate that fails verification");
    normalize_certificate(cert);
    return cert;
  };

  if (tab.value() < 0)
    return FeasibilityOutcome{make_certificate()};

  tab.drive_out_artificials();
  tab.set_phase(relaxed.eps_col);
  if (!tab.optimize())
    throw UnboundedArtifact("eps is bounded above by construction");

  const Rational eps_star = tab.value();
  if (eps_star.is_zero())
    return FeasibilityOutcome{make_certificate()};

  // Strictly feasible: pin eps to half the optimum and find a point there.
  const Rational pin = eps_star / 2;
  detail::RelaxedTableau pinned(sys, &pin);
  pinned.tab.set_phase(detail::Tableau::kPhaseOne);
  if (!pinned.tab.optimize() || !pinned.tab.value().is_zero())
    throw std::logic_error("interior point extraction failed below the eps optimum");

  FeasiblePoint point{pinned.variable_values()};
  // An eps variable that no row touches reports the relaxation slack.
  const int eps_var = sys.var_index("eps");
  if (eps_var >= 0) {
    bool untouched = true;
    for (const LinearRow& row : sys.rows)
      if (!row.coeffs[eps_var].is_zero()) untouched = false;
    if (untouched) point.values[eps_var] = pin;
  }
  if (!satisfies(sys, point))
    throw std::logic_error("solver produced a point that fails re-evaluation");
  return FeasibilityOutcome{std::move(point)};
}

}  // namespace tetraqg
