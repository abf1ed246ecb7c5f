#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace mulnpoly {

// Caller misuse: mismatched descriptors or variable lists, bad arguments.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested operation has no decision procedure for this ring.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by ring_inverse. For Z/NZ the witness is gcd(a, N).
class NotAUnit : public std::domain_error {
 public:
  explicit NotAUnit(const std::string& what, std::optional<mpz_class> witness = std::nullopt)
      : std::domain_error(what), witness_(std::move(witness)) {}

  const std::optional<mpz_class>& witness() const noexcept { return witness_; }

 private:
  std::optional<mpz_class> witness_;
};

// poly_divexact found a nonzero remainder. Carries its leading term.
class NotDivisible : public std::domain_error {
 public:
  NotDivisible(const std::string& what, std::string leading_term)
      : std::domain_error(what), leading_term_(std::move(leading_term)) {}

  const std::string& leading_term() const noexcept { return leading_term_; }

 private:
  std::string leading_term_;
};

// A division that must be exact was not. Always
// an implementation bug, never bad input.
class ExactnessViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation requires a field (chord-tangent oracle).
class NonField : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The point is not in the smooth locus.
class SingularPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotOnCurve : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Tate normal form cannot be reached: a3 or a2 fails to be a unit.
class OrderObstruction : public std::domain_error {
 public:
  enum class Which { a3_not_unit, a2_not_unit };

  OrderObstruction(Which which, const std::string& what)
      : std::domain_error(what), which_(which) {}

  Which which() const noexcept { return which_; }

 private:
  Which which_;
};

// A cache entry failed its checksum or key check.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mulnpoly
