/*
Copyright 2026 The GECS Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "gecs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gecs/error.hpp"

namespace gecs::lp {

std::string_view to_string(Status status) {
    switch (status) {
    case Status::optimal:
        return "optimal";
    case Status::infeasible:
        return "infeasible";
    case Status::unbounded:
        return "unbounded";
    case Status::iteration_limit:
        return "iteration_limit";
    }
    return "unknown";
}

namespace {

enum class PhaseResult { optimal, unbounded, iteration_limit };

class Tableau {
  public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * (cols + 1), 0.0) {}

    double &at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
    double &rhs(std::size_t r) { return at(r, cols_); }
    double rhs(std::size_t r) const { return at(r, cols_); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void drop_row(std::size_t r) {
        const std::size_t width = cols_ + 1;
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r * width),
                     cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
        --rows_;
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> cells_;
};

class Simplex {
  public:
    Simplex(Tableau tableau, std::vector<std::size_t> basis, const Options &options)
        : t_(std::move(tableau)), basis_(std::move(basis)), opt_(options) {}

    PhaseResult run(const std::vector<double> &cost, const std::vector<bool> &allowed) {
        price(cost);
        while (true) {
            std::size_t entering = t_.cols();
            for (std::size_t j = 0; j < t_.cols(); ++j) {
                if (allowed[j] && reduced_[j] < -opt_.tolerance) {
                    entering = j;
                    break;
                }
            }
            if (entering == t_.cols()) {
                return PhaseResult::optimal;
            }
            std::size_t leaving = t_.rows();
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < t_.rows(); ++r) {
                const double a = t_.at(r, entering);
                if (a <= opt_.pivot_tolerance) {
                    continue;
                }
                const double ratio = std::max(t_.rhs(r), 0.0) / a;
                const bool tie = leaving < t_.rows() && std::abs(ratio - best_ratio) <= 1e-12 * (1.0 + best_ratio);
                if ((!tie && ratio < best_ratio) || (tie && basis_[r] < basis_[leaving])) {
                    best_ratio = ratio;
                    leaving = r;
                }
            }
            if (leaving == t_.rows()) {
                return PhaseResult::unbounded;
            }
            if (iterations_ >= opt_.max_iterations) {
                return PhaseResult::iteration_limit;
            }
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        ++iterations_;
        const double p = t_.at(row, col);
        for (std::size_t c = 0; c <= t_.cols(); ++c) {
            t_.at(row, c) /= p;
        }
        t_.at(row, col) = 1.0;
        for (std::size_t r = 0; r < t_.rows(); ++r) {
            if (r == row) {
                continue;
            }
            const double f = t_.at(r, col);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c <= t_.cols(); ++c) {
                t_.at(r, c) -= f * t_.at(row, c);
            }
            t_.at(r, col) = 0.0;
        }
        if (!reduced_.empty()) {
            const double f = reduced_[col];
            if (f != 0.0) {
                for (std::size_t c = 0; c <= t_.cols(); ++c) {
                    reduced_[c] -= f * t_.at(row, c);
                }
                reduced_[col] = 0.0;
            }
        }
        basis_[row] = col;
    }

    /// Objective value of the current basic solution under the last cost.
    double value() const { return -reduced_[t_.cols()]; }

    Tableau &tableau() { return t_; }
    std::vector<std::size_t> &basis() { return basis_; }
    std::size_t iterations() const { return iterations_; }

  private:
    void price(const std::vector<double> &cost) {
        reduced_.assign(t_.cols() + 1, 0.0);
        std::copy(cost.begin(), cost.end(), reduced_.begin());
        for (std::size_t r = 0; r < t_.rows(); ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c <= t_.cols(); ++c) {
                reduced_[c] -= cb * t_.at(r, c);
            }
        }
    }

    Tableau t_;
    std::vector<std::size_t> basis_;
    std::vector<double> reduced_;
    Options opt_;
    std::size_t iterations_ = 0;
};

} // namespace

Outcome solve(const LinearProgram &program, const Options &options) {
    const std::size_t n = program.num_variables();
    const std::size_t m = program.constraints.size();
    for (double c : program.objective) {
        if (!std::isfinite(c)) {
            throw ValidationError("objective coefficient is not finite");
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto &row = program.constraints[i];
        if (row.coefficients.size() != n) {
            throw ValidationError("constraint " + std::to_string(i) + " has " +
                                  std::to_string(row.coefficients.size()) + " coefficients, expected " +
                                  std::to_string(n));
        }
        if (!std::isfinite(row.rhs) ||
            !std::all_of(row.coefficients.begin(), row.coefficients.end(), [](double v) { return std::isfinite(v); })) {
            throw ValidationError("constraint " + std::to_string(i) + " has a non-finite entry");
        }
    }

    // Normalize to rhs >= 0, then lay out columns as
    // [structural | slack/surplus | artificial].
    std::vector<Relation> rel(m);
    std::vector<double> sign(m, 1.0);
    std::size_t num_slack = 0;
    std::size_t num_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        rel[i] = program.constraints[i].relation;
        if (program.constraints[i].rhs < 0.0) {
            sign[i] = -1.0;
            if (rel[i] == Relation::less_equal) {
                rel[i] = Relation::greater_equal;
            } else if (rel[i] == Relation::greater_equal) {
                rel[i] = Relation::less_equal;
            }
        }
        if (rel[i] != Relation::equal) {
            ++num_slack;
        }
        if (rel[i] != Relation::less_equal) {
            ++num_art;
        }
    }
    const std::size_t cols = n + num_slack + num_art;
    const std::size_t art_begin = n + num_slack;
    Tableau tab(m, cols);
    std::vector<std::size_t> basis(m);
    std::size_t slack = n;
    std::size_t art = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
        const auto &row = program.constraints[i];
        for (std::size_t j = 0; j < n; ++j) {
            tab.at(i, j) = sign[i] * row.coefficients[j];
        }
        tab.rhs(i) = sign[i] * row.rhs;
        if (rel[i] == Relation::less_equal) {
            tab.at(i, slack) = 1.0;
            basis[i] = slack++;
        } else {
            if (rel[i] == Relation::greater_equal) {
                tab.at(i, slack++) = -1.0;
            }
            tab.at(i, art) = 1.0;
            basis[i] = art++;
        }
    }

    Simplex simplex(std::move(tab), std::move(basis), options);
    Outcome out;

    if (num_art > 0) {
        std::vector<double> phase1(cols, 0.0);
        std::fill(phase1.begin() + static_cast<std::ptrdiff_t>(art_begin), phase1.end(), 1.0);
        std::vector<bool> allowed(cols, true);
        const PhaseResult r = simplex.run(phase1, allowed);
        out.iterations = simplex.iterations();
        if (r == PhaseResult::iteration_limit) {
            out.status = Status::iteration_limit;
            return out;
        }
        double scale = 1.0;
        for (const auto &c : program.constraints) {
            scale = std::max(scale, std::abs(c.rhs));
        }
        if (simplex.value() > options.tolerance * scale) {
            out.status = Status::infeasible;
            return out;
        }
        // Pivot zero-level artificials out of the basis; rows where that is
        // impossible are linearly dependent and get dropped.
        for (std::size_t r = 0; r < simplex.tableau().rows();) {
            if (simplex.basis()[r] < art_begin) {
                ++r;
                continue;
            }
            std::size_t col = art_begin;
            for (std::size_t j = 0; j < art_begin; ++j) {
                if (std::abs(simplex.tableau().at(r, j)) > options.pivot_tolerance) {
                    col = j;
                    break;
                }
            }
            if (col < art_begin) {
                simplex.pivot(r, col);
                ++r;
            } else {
                simplex.tableau().drop_row(r);
                simplex.basis().erase(simplex.basis().begin() + static_cast<std::ptrdiff_t>(r));
            }
        }
    }

    std::vector<double> phase2(cols, 0.0);
    std::copy(program.objective.begin(), program.objective.end(), phase2.begin());
    std::vector<bool> allowed(cols, true);
    std::fill(allowed.begin() + static_cast<std::ptrdiff_t>(art_begin), allowed.end(), false);
    const PhaseResult r = simplex.run(phase2, allowed);
    out.iterations = simplex.iterations();
    if (r == PhaseResult::iteration_limit) {
        out.status = Status::iteration_limit;
        return out;
    }
    if (r == PhaseResult::unbounded) {
        out.status = Status::unbounded;
        return out;
    }

    out.status = Status::optimal;
    out.x.assign(n, 0.0);
    for (std::size_t row = 0; row < simplex.tableau().rows(); ++row) {
        const std::size_t b = simplex.basis()[row];
        if (b < n) {
            out.x[b] = std::max(simplex.tableau().rhs(row), 0.0);
        }
    }
    out.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out.value += program.objective[j] * out.x[j];
    }
    return out;
}

double max_violation(const LinearProgram &program, const std::vector<double> &x) {
    double worst = 0.0;
    for (double v : x) {
        worst = std::max(worst, -v);
    }
    for (const auto &c : program.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            lhs += c.coefficients[j] * x[j];
        }
        double gap = 0.0;
        switch (c.relation) {
        case Relation::less_equal:
            gap = lhs - c.rhs;
            break;
        case Relation::greater_equal:
            gap = c.rhs - lhs;
            break;
        case Relation::equal:
            gap = std::abs(lhs - c.rhs);
            break;
        }
        worst = std::max(worst, gap / (1.0 + std::abs(c.rhs)));
    }
    return worst;
}

} // namespace gecs::lp
