#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace marginvote {

/// Base class for every error raised by the library. Errors that describe bad
/// input (malformed ballots, unmet preconditions) derive from this; a breach of
/// an internal invariant raises InvariantError instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define MARGINVOTE_DECLARE_ERROR(Name)  \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

// core
MARGINVOTE_DECLARE_ERROR(OverlapOrGapError);
MARGINVOTE_DECLARE_ERROR(NotAdjacentError);
MARGINVOTE_DECLARE_ERROR(VoterCollisionError);
MARGINVOTE_DECLARE_ERROR(CandidateMismatchError);
MARGINVOTE_DECLARE_ERROR(EmptyRestrictionError);
MARGINVOTE_DECLARE_ERROR(EmptyProfileError);
MARGINVOTE_DECLARE_ERROR(UnknownCandidateError);
MARGINVOTE_DECLARE_ERROR(UnknownVoterError);
MARGINVOTE_DECLARE_ERROR(DuplicateCandidateError);
MARGINVOTE_DECLARE_ERROR(InvalidVoterIdError);

// margins
MARGINVOTE_DECLARE_ERROR(ScopeMismatchError);
MARGINVOTE_DECLARE_ERROR(NotAntisymmetricError);

// rules / axioms
MARGINVOTE_DECLARE_ERROR(DomainError);
MARGINVOTE_DECLARE_ERROR(DomainMismatchError);
MARGINVOTE_DECLARE_ERROR(TieAmbiguousError);
MARGINVOTE_DECLARE_ERROR(NotReversalPairError);
MARGINVOTE_DECLARE_ERROR(NotATieError);
MARGINVOTE_DECLARE_ERROR(UnknownIdentifierError);

// canonical
MARGINVOTE_DECLARE_ERROR(OddMarginError);
MARGINVOTE_DECLARE_ERROR(MarginMismatchError);

// noncomp
MARGINVOTE_DECLARE_ERROR(PreconditionError);
MARGINVOTE_DECLARE_ERROR(SelfReversalError);
MARGINVOTE_DECLARE_ERROR(ToLosnTieError);

#undef MARGINVOTE_DECLARE_ERROR

/// Malformed election or profile text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace marginvote
