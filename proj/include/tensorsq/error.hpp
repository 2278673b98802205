#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorsq {

// Base of every exception thrown by the library. `kind()` is the stable
// identifier printed by the CLI and stored in suite verdicts.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string const& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  std::string const& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class NotAGroup : public Error {
 public:
  NotAGroup(std::string const& what, std::vector<std::uint32_t> witness)
      : Error("NotAGroup", what), witness_(std::move(witness)) {}

  // Elements exhibiting the failure (a triple for associativity, a row
  // index for Latin-square failures, ...).
  std::vector<std::uint32_t> const& witness() const noexcept { return witness_; }

 private:
  std::vector<std::uint32_t> witness_;
};

class SizeLimit : public Error {
 public:
  SizeLimit(std::uint64_t requested, std::uint64_t cap)
      : Error("SizeLimit", "order " + std::to_string(requested) +
                               " exceeds table cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

// A subgroup extracted from a regular representation exceeded the table cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::uint64_t size, std::uint64_t cap)
      : Error("CapExceeded", "subgroup of order at least " +
                                 std::to_string(size) + " exceeds table cap " +
                                 std::to_string(cap)),
        size_(size),
        cap_(cap) {}

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t size_;
  std::uint64_t cap_;
};

class NotNormal : public Error {
 public:
  explicit NotNormal(std::string const& what) : Error("NotNormal", what) {}
};

class NotAbelian : public Error {
 public:
  NotAbelian(std::uint32_t x, std::uint32_t y)
      : Error("NotAbelian", "elements " + std::to_string(x) + " and " +
                                std::to_string(y) + " do not commute"),
        x_(x),
        y_(y) {}

  std::uint32_t x() const noexcept { return x_; }
  std::uint32_t y() const noexcept { return y_; }

 private:
  std::uint32_t x_, y_;
};

// Coset enumeration (or a size prediction made before it) exceeded the
// configured coset budget.
class Capped : public Error {
 public:
  Capped(std::uint64_t cap, std::uint64_t live, std::string const& detail = {})
      : Error("Capped", "coset count " + std::to_string(live) +
                            " exceeds cap " + std::to_string(cap) +
                            (detail.empty() ? "" : " (" + detail + ")")),
        cap_(cap),
        live_(live) {}

  std::uint64_t cap() const noexcept { return cap_; }
  // Live coset count when the cap was hit, or the predicted minimum size
  // when the enumeration was refused up front.
  std::uint64_t live() const noexcept { return live_; }

 private:
  std::uint64_t cap_;
  std::uint64_t live_;
};

class FreeGroupSuspected : public Error {
 public:
  FreeGroupSuspected()
      : Error("FreeGroupSuspected",
              "presentation has generators but no relators") {}
};

class ConstructionInvalid : public Error {
 public:
  explicit ConstructionInvalid(std::string const& what)
      : Error("ConstructionInvalid", what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string const& expected)
      : Error("ParseError", "at position " + std::to_string(position) +
                                ": expected " + expected),
        position_(position),
        expected_(expected) {}

  std::size_t position() const noexcept { return position_; }
  std::string const& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

// Violated operation precondition (NotPGroup, AbelianInput, PreconditionM,
// NotCentral, ...). The kind string names which one.
class Precondition : public Error {
 public:
  Precondition(std::string kind, std::string const& what)
      : Error(std::move(kind), what) {}
};

}  // namespace tensorsq
