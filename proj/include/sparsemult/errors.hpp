#ifndef SPARSEMULT_ERRORS_HPP
#define SPARSEMULT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sparsemult {

// Every typed failure derives from Error so callers (and the CLI) can
// catch one type and still report the specific kind.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SPARSEMULT_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

SPARSEMULT_DEFINE_ERROR(ShapeError);
SPARSEMULT_DEFINE_ERROR(DegenerateConfig);
SPARSEMULT_DEFINE_ERROR(DuplicatePoint);
SPARSEMULT_DEFINE_ERROR(NotConvenient);
SPARSEMULT_DEFINE_ERROR(DimensionMismatch);
SPARSEMULT_DEFINE_ERROR(OriginNotRoot);
SPARSEMULT_DEFINE_ERROR(TruncationTooShort);
SPARSEMULT_DEFINE_ERROR(OnesNotInKernel);
SPARSEMULT_DEFINE_ERROR(CodimNotOne);
SPARSEMULT_DEFINE_ERROR(DuplicateValue);
SPARSEMULT_DEFINE_ERROR(PreconditionError);
SPARSEMULT_DEFINE_ERROR(ParseError);
SPARSEMULT_DEFINE_ERROR(ValidationError);

#undef SPARSEMULT_DEFINE_ERROR

class VanishesOnAxis : public Error {
public:
    explicit VanishesOnAxis(int axis)
        : Error("VanishesOnAxis", "no nonzero value on axis " + std::to_string(axis + 1)),
          axis_(axis) {}
    // zero-based
    int axis() const noexcept { return axis_; }

private:
    int axis_;
};

}  // namespace sparsemult

#endif  // SPARSEMULT_ERRORS_HPP
