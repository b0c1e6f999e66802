#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tetraqg/errors.hpp"
#include "tetraqg/rational.hpp"

namespace tetraqg {

/// Row relation, all rows normalized to <coeffs, x> rel rhs.
enum class Relation { Equal, WeakGe, StrictGt };

inline std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::Equal: return "=";
    case Relation::WeakGe: return ">=";
    case Relation::StrictGt: return ">";
  }
  return "?";
}

/// Row provenance, used for reporting and for building system variants.
enum class RowKind { FaceSum, Positivity, Failure, Triangle, Custom };

struct LinearRow {
  std::string name;
  std::vector<Rational> coeffs;  // dense over the system's variables
  Relation rel = Relation::WeakGe;
  Rational rhs;
  RowKind kind = RowKind::Custom;
};

/// Exact linear constraint system over named variables. For the case
/// analysis the variables are the 12 face angles in pi-units plus the
/// slack symbol "eps" used by the strict-feasibility relaxation; rows
/// built by build_system never reference eps directly.
struct RationalLinearSystem {
  std::vector<std::string> variables;
  std::vector<LinearRow> rows;

  int var_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == name) return static_cast<int>(i);
    return -1;
  }

  LinearRow& add_row(std::string name, Relation rel, Rational rhs,
                     RowKind kind = RowKind::Custom) {
    rows.push_back(LinearRow{std::move(name),
                             std::vector<Rational>(variables.size()), rel,
                             std::move(rhs), kind});
    return rows.back();
  }

  /// Adds a row from sparse (variable name -> coefficient) terms.
  LinearRow& add_row(std::string name,
                     const std::map<std::string, Rational>& terms, Relation rel,
                     Rational rhs, RowKind kind = RowKind::Custom) {
    LinearRow& row = add_row(std::move(name), rel, std::move(rhs), kind);
    for (const auto& [var, coeff] : terms) {
      const int j = var_index(var);
      if (j < 0) throw std::invalid_argument("unknown variable: " + var);
      row.coeffs[j] = coeff;
    }
    return row;
  }

  const LinearRow* find_row(std::string_view name) const {
    for (const LinearRow& r : rows)
      if (r.name == name) return &r;
    return nullptr;
  }

  std::size_t count(Relation rel) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(),
                      [rel](const LinearRow& r) { return r.rel == rel; }));
  }
};

/// Motzkin-style refutation: one multiplier per row, nonnegative on
/// inequalities, free on equalities. Valid when the weighted coefficient
/// sum cancels every variable and the weighted constants leave an
/// unsatisfiable relation (0 > 0 with strict mass, or 0 >= positive).
struct InfeasibilityCertificate {
  std::vector<Rational> multipliers;
};

/// Exact satisfying assignment, aligned to the system's variable order.
struct FeasiblePoint {
  std::vector<Rational> values;
};

struct FeasibilityOutcome {
  std::variant<FeasiblePoint, InfeasibilityCertificate> result;

  bool feasible() const { return std::holds_alternative<FeasiblePoint>(result); }
  const FeasiblePoint& point() const { return std::get<FeasiblePoint>(result); }
  const InfeasibilityCertificate& certificate() const {
    return std::get<InfeasibilityCertificate>(result);
  }
};

/// Exact re-evaluation of every row at the given point.
inline bool satisfies(const RationalLinearSystem& sys, const FeasiblePoint& p) {
  if (p.values.size() != sys.variables.size())
    throw DimensionMismatch("point size does not match variable count");
  for (const LinearRow& row : sys.rows) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j)
      if (!row.coeffs[j].is_zero()) lhs += row.coeffs[j] * p.values[j];
    switch (row.rel) {
      case Relation::Equal:
        if (lhs != row.rhs) return false;
        break;
      case Relation::WeakGe:
        if (lhs < row.rhs) return false;
        break;
      case Relation::StrictGt:
        if (lhs <= row.rhs) return false;
        break;
    }
  }
  return true;
}

/// Independent certificate checker: pure rational arithmetic over the
/// system's rows, no shared code with the solver. True iff
///  (i)  multipliers on inequality rows are nonnegative,
///  (ii) the weighted coefficient vectors cancel on every column
///       (including the eps column when present), and
///  (iii) the combined constants are unsatisfiable: strictly positive, or
///        zero with positive mass on strict rows (the 0 > 0 form).
inline bool verify_certificate(const RationalLinearSystem& sys,
                               const InfeasibilityCertificate& cert) {
  if (cert.multipliers.size() != sys.rows.size())
    throw DimensionMismatch("certificate multiplier count does not match row count");

  Rational strict_mass = 0;
  Rational constant = 0;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const Rational& m = cert.multipliers[i];
    const LinearRow& row = sys.rows[i];
    if (row.rel != Relation::Equal && m < 0) return false;
    if (row.rel == Relation::StrictGt) strict_mass += m;
    if (!m.is_zero()) constant += m * row.rhs;
  }

  for (std::size_t j = 0; j < sys.variables.size(); ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < sys.rows.size(); ++i)
      if (!cert.multipliers[i].is_zero() && !sys.rows[i].coeffs[j].is_zero())
        sum += cert.multipliers[i] * sys.rows[i].coeffs[j];
    if (!sum.is_zero()) return false;
  }

  if (constant > 0) return true;
  return constant == 0 && strict_mass > 0;
}

/// Scales a certificate so its smallest positive multiplier is 1, making
/// solver output comparable to unit-coefficient hand derivations.
inline void normalize_certificate(InfeasibilityCertificate& cert) {
  std::optional<Rational> smallest;
  for (const Rational& m : cert.multipliers)
    if (m > 0 && (!smallest || m < *smallest)) smallest = m;
  if (!smallest) return;
  for (Rational& m : cert.multipliers) m /= *smallest;
}

}  // namespace tetraqg
