#pragma once

#include <stdexcept>
#include <string>

namespace frv {

// Every library error carries a stable machine-readable code so callers
// (and the CLI) can map failures without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what)
        : Error("dimension_mismatch", what) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& what) : Error("grid_mismatch", what) {}
};

// Constructor-time validation failure of a domain type.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& what)
        : Error("invariant_violation", what) {}
};

// Reconstruction found an empty level body.
struct EmptyLevel : Error {
    EmptyLevel(std::size_t level, const std::string& what)
        : Error("empty_level", what), level(level) {}
    std::size_t level;
};

// Surface values increase with alpha beyond tolerance.
struct NotMonotone : Error {
    NotMonotone(std::size_t level, const std::string& what)
        : Error("not_monotone", what), level(level) {}
    std::size_t level;
};

struct NotCentered : Error {
    explicit NotCentered(const std::string& what) : Error("not_centered", what) {}
};

struct SolverDidNotConverge : Error {
    SolverDidNotConverge(double feasibility, double delta, const std::string& what)
        : Error("solver_no_convergence", what),
          feasibility_residual(feasibility),
          last_sweep_delta(delta) {}
    double feasibility_residual;
    double last_sweep_delta;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse_error", what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("io_error", what) {}
};

} // namespace frv
