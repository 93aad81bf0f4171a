#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

// Base for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands built over different alphabets.
struct AlphabetMismatchError : Error {
    using Error::Error;
};

// Argument outside the operation's domain (symbol not in alphabet, bad index...).
struct DomainError : Error {
    using Error::Error;
};

// A stated precondition does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

// Requested expansion exceeds the configured size budget.
struct BudgetError : Error {
    using Error::Error;
};

// Pruning an SFT presentation left no vertices.
struct EmptyShiftError : Error {
    using Error::Error;
};

// The presented shift is a single cycle (finite orbit), so the requested
// block construction has no room to work.
struct FiniteShiftError : Error {
    using Error::Error;
};

// Bounded search ran out before producing the required witness.
struct SearchExhaustedError : Error {
    using Error::Error;
};

// The requested split/construction is impossible for the given input.
struct InfeasibleError : Error {
    using Error::Error;
};

// A generated object failed its own construction invariant.
struct ConstructionInvariantError : Error {
    using Error::Error;
};

// Ladder construction could not certify one of its covering relations.
struct LadderError : Error {
    using Error::Error;
};

// A certified property failed on replay; indicates a bug, not bad input.
struct InternalInvariantError : Error {
    using Error::Error;
};

}  // namespace symdyn
