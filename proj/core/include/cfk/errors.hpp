#pragma once

#include <stdexcept>
#include <string>

namespace cfk {

// Every failure raised by the library derives from Error.  kind() is a stable
// machine-readable tag; exit_code() is the CLI exit status the failure maps to.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what, int exit_code = 1)
        : std::runtime_error(what), kind_(std::move(kind)), exit_code_(exit_code) {}

    const std::string& kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return exit_code_; }

private:
    std::string kind_;
    int exit_code_;
};

#define CFK_DEFINE_ERROR(Name, code)                                   \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& what) : Error(#Name, what, code) {} \
    };

CFK_DEFINE_ERROR(PreconditionError, 1)
CFK_DEFINE_ERROR(InvalidComplex, 1)
CFK_DEFINE_ERROR(NotReduced, 1)
CFK_DEFINE_ERROR(NotLSpaceShape, 1)
CFK_DEFINE_ERROR(ArithmeticOverflow, 1)
CFK_DEFINE_ERROR(InfiniteRegion, 1)
CFK_DEFINE_ERROR(NonConvex, 1)
CFK_DEFINE_ERROR(ChainMapViolation, 1)
CFK_DEFINE_ERROR(NotACycle, 1)
CFK_DEFINE_ERROR(InvariantContradiction, 1)
CFK_DEFINE_ERROR(ZeroElement, 1)
CFK_DEFINE_ERROR(Unclassifiable, 1)
CFK_DEFINE_ERROR(WindowTooLarge, 1)
CFK_DEFINE_ERROR(SearchLimit, 1)
CFK_DEFINE_ERROR(UndefinedInvariant, 2)
CFK_DEFINE_ERROR(ParseError, 3)
CFK_DEFINE_ERROR(IoError, 3)

#undef CFK_DEFINE_ERROR

}  // namespace cfk
