#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ioimpact {

// Base for every domain error the library throws. `kind()` is the stable
// machine-readable name the CLI prints next to the message.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual std::string_view kind() const { return "Error"; }
};

#define IOIMPACT_DEFINE_ERROR(NAME)                                  \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& msg) : Error(msg) {}        \
        std::string_view kind() const override { return #NAME; }     \
    }

IOIMPACT_DEFINE_ERROR(DimensionError);
IOIMPACT_DEFINE_ERROR(ValueError);
IOIMPACT_DEFINE_ERROR(NonProductiveError);
IOIMPACT_DEFINE_ERROR(ParseError);
IOIMPACT_DEFINE_ERROR(SchemaError);
IOIMPACT_DEFINE_ERROR(SectorMismatchError);
IOIMPACT_DEFINE_ERROR(EmptyGroupError);
IOIMPACT_DEFINE_ERROR(UnknownSectorError);
IOIMPACT_DEFINE_ERROR(ModelMismatchError);
IOIMPACT_DEFINE_ERROR(NoUnconnectedHouseholdsError);
IOIMPACT_DEFINE_ERROR(InvalidRecordError);
IOIMPACT_DEFINE_ERROR(InsufficientDataError);

#undef IOIMPACT_DEFINE_ERROR

class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& msg, std::size_t column)
        : Error(msg), column_(column) {}
    std::string_view kind() const override { return "SingularMatrixError"; }
    // Column whose pivot fell below the tolerance.
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

}  // namespace ioimpact
