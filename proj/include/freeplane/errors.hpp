#ifndef FREEPLANE_ERRORS_HPP
#define FREEPLANE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freeplane {

/// Malformed input: duplicate or reserved names, dangling incidences, bad terms.
class StructureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An operation that needs axioms (A)-(D) was given something that is not a plane.
class NotAPlaneError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A lattice element could not be classified as bottom, atom, coatom or top.
class NotLength3Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class BudgetError : public std::runtime_error {
  public:
    BudgetError(const std::string& what, std::size_t points, std::size_t lines, std::size_t budget)
        : std::runtime_error(what), points_(points), lines_(lines), budget_(budget) {}

    /// Size the stage would have had.
    std::size_t points() const { return points_; }
    std::size_t lines() const { return lines_; }
    std::size_t budget() const { return budget_; }

  private:
    std::size_t points_;
    std::size_t lines_;
    std::size_t budget_;
};

/// Search node cap exceeded.
class ResourceError : public std::runtime_error {
  public:
    ResourceError(const std::string& what, std::size_t partial_results)
        : std::runtime_error(what), partial_(partial_results) {}
    std::size_t partial_results() const { return partial_; }

  private:
    std::size_t partial_;
};

/// Unreadable or invalid input file (bad JSON, unknown fields under --strict).
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class EncoderError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Should be unreachable; a failed internal self-check.
class InternalConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace freeplane

#endif
