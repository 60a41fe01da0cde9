#pragma once

// Exact LP feasibility for {x : E x = e, A x >= b} with free x and integer
// data. Free variables and equalities are eliminated by integer pivoting, the
// remaining slack system goes through a phase-one simplex with Bland's rule.
// Rows are kept as primitive integer vectors (divided by their gcd after
// every pivot), so all arithmetic is exact.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rigidbound/numeric.hpp"

namespace rigidbound::lp {

struct Constraint {
  std::vector<std::int64_t> coeffs;
  std::int64_t rhs = 0;
  bool equality = false;  // coeffs . x == rhs, otherwise coeffs . x >= rhs
};

namespace detail {

template <class Int>
class Tableau {
 public:
  // Columns: [0, dim) free variables, then one slack per inequality, then the
  // phase-one artificial column, then the objective column. Last entry of each
  // row is the right-hand side.
  Tableau(int dim, const std::vector<Constraint>& cons) : dim_(dim) {
    int slacks = 0;
    for (const auto& c : cons) slacks += c.equality ? 0 : 1;
    slack0_ = dim;
    art_ = dim + slacks;
    obj_ = art_ + 1;
    rhs_ = obj_ + 1;
    int s = 0;
    for (const auto& c : cons) {
      std::vector<Int> row(static_cast<std::size_t>(rhs_ + 1), Int(0));
      if (c.equality) {
        for (int j = 0; j < dim; ++j) row[j] = Int(c.coeffs[j]);
        row[rhs_] = Int(c.rhs);
        eq_rows_.push_back(std::move(row));
      } else {
        // -a.x + s = -b, slack basic with coefficient +1.
        for (int j = 0; j < dim; ++j) row[j] = Int(-c.coeffs[j]);
        row[slack0_ + s] = Int(1);
        row[rhs_] = Int(-c.rhs);
        rows_.push_back(std::move(row));
        basic_.push_back(slack0_ + s);
        ++s;
      }
    }
  }

  bool feasible() {
    if (!eliminate_equalities()) return false;
    eliminate_free_columns();
    return phase_one();
  }

 private:
  using Row = std::vector<Int>;

  void normalize(Row& row) {
    Int g(0);
    for (const auto& x : row) {
      if (x != Int(0)) {
        g = gcd_of(g, x);
        if (g == Int(1)) return;
      }
    }
    if (g > Int(1)) {
      for (auto& x : row) x /= g;
    }
  }

  // row <- p*row - a*pivot_row, with p > 0.
  void eliminate(Row& row, const Row& pivot_row, int col) {
    const Int a = row[col];
    if (a == Int(0)) return;
    const Int p = pivot_row[col];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (pivot_row[j] == Int(0)) {
        if (row[j] != Int(0)) row[j] = row[j] * p;
      } else {
        row[j] = row[j] * p - a * pivot_row[j];
      }
    }
    normalize(row);
  }

  static void make_positive(Row& row, int col) {
    if (row[col] < Int(0)) {
      for (auto& x : row) x = -x;
    }
  }

  bool eliminate_equalities() {
    for (std::size_t r = 0; r < eq_rows_.size(); ++r) {
      Row pivot = eq_rows_[r];
      int col = -1;
      for (int j = 0; j < dim_; ++j) {
        if (pivot[j] != Int(0)) {
          col = j;
          break;
        }
      }
      if (col < 0) {
        if (pivot[rhs_] != Int(0)) return false;
        continue;
      }
      make_positive(pivot, col);
      normalize(pivot);
      for (std::size_t k = r + 1; k < eq_rows_.size(); ++k) eliminate(eq_rows_[k], pivot, col);
      for (auto& row : rows_) eliminate(row, pivot, col);
    }
    eq_rows_.clear();
    return true;
  }

  void eliminate_free_columns() {
    for (int col = 0; col < dim_; ++col) {
      std::size_t r = 0;
      while (r < rows_.size() && rows_[r][col] == Int(0)) ++r;
      if (r == rows_.size()) continue;
      Row pivot = std::move(rows_[r]);
      rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
      basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(r));
      make_positive(pivot, col);
      for (auto& row : rows_) eliminate(row, pivot, col);
    }
  }

  void pivot(std::size_t r, int col) {
    make_positive(rows_[r], col);
    normalize(rows_[r]);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i], rows_[r], col);
    }
    eliminate(objective_, rows_[r], col);
    basic_[r] = col;
  }

  // Bland order: the artificial column first, then slacks.
  int bland_rank(int col) const { return col == art_ ? -1 : col; }

  bool phase_one() {
    std::size_t worst = rows_.size();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i][rhs_] < Int(0)) {
        // Value of the basic variable is rhs / coeff with coeff > 0.
        if (worst == rows_.size() ||
            rows_[i][rhs_] * rows_[worst][basic_[worst]] < rows_[worst][rhs_] * rows_[i][basic_[i]]) {
          worst = i;
        }
      }
    }
    if (worst == rows_.size()) return true;

    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i][art_] = -rows_[i][basic_[i]];
    objective_.assign(static_cast<std::size_t>(rhs_ + 1), Int(0));
    objective_[obj_] = Int(1);
    objective_[art_] = Int(1);  // maximize z = -art
    pivot(worst, art_);

    while (true) {
      bool art_basic = false;
      for (int b : basic_) art_basic = art_basic || b == art_;
      if (!art_basic || objective_[rhs_] == Int(0)) return true;

      int enter = objective_[art_] < Int(0) ? art_ : -1;
      for (int j = slack0_; enter < 0 && j < art_; ++j) {
        if (objective_[j] < Int(0)) enter = j;
      }
      if (enter < 0) return false;  // optimal with art > 0

      std::size_t leave = rows_.size();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= Int(0)) continue;
        if (leave == rows_.size()) {
          leave = i;
          continue;
        }
        const Int lhs = rows_[i][rhs_] * rows_[leave][enter];
        const Int rhs = rows_[leave][rhs_] * rows_[i][enter];
        if (lhs < rhs || (lhs == rhs && bland_rank(basic_[i]) < bland_rank(basic_[leave]))) leave = i;
      }
      if (leave == rows_.size()) throw std::logic_error("phase-one LP reported unbounded");
      pivot(leave, enter);
    }
  }

  int dim_;
  int slack0_ = 0;
  int art_ = 0;
  int obj_ = 0;
  int rhs_ = 0;
  std::vector<Row> eq_rows_;
  std::vector<Row> rows_;
  std::vector<int> basic_;
  Row objective_;
};

}  // namespace detail

template <class Int>
bool feasible_with(int dim, const std::vector<Constraint>& cons) {
  detail::Tableau<Int> t(dim, cons);
  return t.feasible();
}

/// Exact feasibility; 128-bit fast path with an arbitrary-precision rerun on overflow.
inline bool feasible(int dim, const std::vector<Constraint>& cons) {
  try {
    return feasible_with<Checked128>(dim, cons);
  } catch (const ArithmeticOverflow&) {
    return feasible_with<BigInt>(dim, cons);
  }
}

}  // namespace rigidbound::lp
