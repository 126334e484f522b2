#pragma once

#include <stdexcept>
#include <string>

namespace sfplan {

struct invalid_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Base set spans a plane and no off-plane vertex is available.
struct unrepairable_base_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No selection can satisfy the size/non-coplanarity constraints.
struct infeasible_selection_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive enumeration refused; instance exceeds the subset budget.
struct enumeration_budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct edge_set_mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct singular_gradient_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_alignment_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quantity has no defined value for the given inputs (e.g. zero-length path).
struct undefined_value_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct scenario_generation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sfplan
