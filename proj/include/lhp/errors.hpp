#pragma once

#include <stdexcept>
#include <string>

namespace lhp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation requested outside a field's domain (includes sqrt/pow at zero on jets).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters, unknown names, malformed configs.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An algebraic precondition failed: closure, ideal, trace, rank or sign consistency.
class AlgebraError : public Error {
public:
    enum class Reason {
        rank_deficient,
        not_closed,
        not_an_ideal,
        wedge_vanishes,
        nonzero_trace,
        not_sl2,
        mixed_rank,
        inconsistent_sign,
        not_hamiltonian
    };

    AlgebraError(Reason reason, std::string what, int offender = -1)
        : Error(std::move(what)), reason_(reason), offender_(offender) {}

    Reason reason() const noexcept { return reason_; }
    /// Index of the offending basis element, or -1.
    int offender() const noexcept { return offender_; }

private:
    Reason reason_;
    int offender_;
};

inline std::string to_string(AlgebraError::Reason r) {
    switch (r) {
        case AlgebraError::Reason::rank_deficient: return "rank_deficient";
        case AlgebraError::Reason::not_closed: return "not_closed";
        case AlgebraError::Reason::not_an_ideal: return "not_an_ideal";
        case AlgebraError::Reason::wedge_vanishes: return "wedge_vanishes";
        case AlgebraError::Reason::nonzero_trace: return "nonzero_trace";
        case AlgebraError::Reason::not_sl2: return "not_sl2";
        case AlgebraError::Reason::mixed_rank: return "mixed_rank";
        case AlgebraError::Reason::inconsistent_sign: return "inconsistent_sign";
        case AlgebraError::Reason::not_hamiltonian: return "not_hamiltonian";
    }
    return "unknown";
}

/// Degenerate superposition configuration (collinear points, vanishing area, zero denominators).
class DegenerateError : public Error {
public:
    DegenerateError(std::string what, double t = 0.0) : Error(std::move(what)), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

/// Integration failure: domain exit or step-size underflow.
class IntegrationError : public Error {
public:
    IntegrationError(std::string what, double t) : Error(std::move(what)), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

}  // namespace lhp
