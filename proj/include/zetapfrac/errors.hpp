#pragma once

#include <stdexcept>
#include <string>

namespace zetapfrac {

// Base class for everything this library throws on contract violations.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation requested at (or numerically indistinguishable from) a pole.
struct pole_error : error {
    using error::error;
};

// Argument outside the operation's stated domain.
struct domain_error : error {
    using error::error;
};

// An iterative scheme failed its self-consistency check.
struct convergence_error : error {
    using error::error;
};

// A series hit the configured term cap before meeting its tolerance.
struct cap_error : error {
    using error::error;
};

struct index_error : error {
    using error::error;
};

struct case_error : error {
    using error::error;
};

// Cache file problems.
struct schema_error : error {
    using error::error;
};
struct checksum_error : error {
    using error::error;
};

struct disjointness_error : error {
    using error::error;
};

struct window_error : error {
    using error::error;
};

struct step_error : error {
    using error::error;
};

struct insufficient_data_error : error {
    using error::error;
};

// A located zero of zeta came out with |zeta'| below the noise floor.  This
// would contradict the simple-zeros hypothesis numerically and must never be
// ignored.
struct simple_zero_violation : error {
    using error::error;
};

// A quantity that is provably real came out with an imaginary part well
// above its error estimate.
struct realness_violation : error {
    using error::error;
};

// A checked internal identity failed beyond 10x its error budget.
struct assertion_error : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

struct missing_cache_error : error {
    using error::error;
};

} // namespace zetapfrac
