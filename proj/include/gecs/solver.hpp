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

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace gecs::lp {

enum class Relation { less_equal, equal, greater_equal };

struct Constraint {
    std::vector<double> coefficients;
    Relation relation;
    double rhs;
};

/// minimize objective . x  subject to constraints, x >= 0.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<Constraint> constraints;

    std::size_t num_variables() const { return objective.size(); }
    void add(std::vector<double> coefficients, Relation relation, double rhs) {
        constraints.push_back({std::move(coefficients), relation, rhs});
    }
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

std::string_view to_string(Status status);

struct Outcome {
    Status status = Status::infeasible;
    double value = 0.0;
    std::vector<double> x;
    std::size_t iterations = 0;
};

struct Options {
    /// Reduced-cost and phase-one feasibility threshold.
    double tolerance = 1e-9;
    /// Smallest magnitude accepted as a pivot element.
    double pivot_tolerance = 1e-11;
    std::size_t max_iterations = 100000;
};

/**
 * Dense two-phase primal simplex with Bland's smallest-index rule, which
 * rules out cycling on degenerate pivots and makes the pivot sequence a pure
 * function of the input.
 *
 * Throws ValidationError when a constraint row length differs from the
 * objective length or a coefficient is not finite. Running out of iterations
 * yields Status::iteration_limit, never a feasibility verdict.
 */
Outcome solve(const LinearProgram &program, const Options &options = {});

/// Largest violation of any constraint at x, scaled by 1 + |rhs|.
double max_violation(const LinearProgram &program, const std::vector<double> &x);

} // namespace gecs::lp
