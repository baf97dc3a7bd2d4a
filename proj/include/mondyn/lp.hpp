#pragma once

#include <vector>

namespace mondyn::lp {

// maximize objective·x  s.t.  le_rows·x <= le_rhs,  eq_rows·x = eq_rhs,  x >= 0.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> le_rows;
    std::vector<double> le_rhs;
    std::vector<std::vector<double>> eq_rows;
    std::vector<double> eq_rhs;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
    Status status = Status::infeasible;
    double objective = 0.0;
    std::vector<double> x;
    int pivots = 0;
};

// Dense two-phase tableau simplex using Bland's rule for both the entering
// and the leaving variable, so it cannot cycle. Intended for problems with a
// few dozen variables.
Solution solve(const LinearProgram& problem);

const char* to_string(Status s);

}  // namespace mondyn::lp
