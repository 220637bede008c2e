#ifndef NILNOV_ERROR_HPP
#define NILNOV_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilnov
{

// Base of every error raised by the library. The kind() string is stable and
// is what the CLI and the tests key on.
class Error : public std::runtime_error
{
public:
    Error(std::string kind, const std::string &what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind))
    {
    }

    const std::string &kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class SyntaxError : public Error
{
public:
    SyntaxError(const std::string &what, std::size_t line, std::size_t column)
        : Error("SyntaxError", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

#define NILNOV_DECLARE_ERROR(Name)                                                                                     \
    class Name : public Error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        explicit Name(const std::string &what) : Error(#Name, what) {}                                                 \
    }

NILNOV_DECLARE_ERROR(AdaptationError);
NILNOV_DECLARE_ERROR(UnknownGenerator);
NILNOV_DECLARE_ERROR(MismatchedGroup);
NILNOV_DECLARE_ERROR(MismatchedField);
NILNOV_DECLARE_ERROR(MismatchedCharacter);
NILNOV_DECLARE_ERROR(Infeasible);
NILNOV_DECLARE_ERROR(NoStrictMinimum);
NILNOV_DECLARE_ERROR(TruncationInsufficient);
NILNOV_DECLARE_ERROR(CertificateFailure);
NILNOV_DECLARE_ERROR(IncompatibleCharacter);
NILNOV_DECLARE_ERROR(InvalidFraction);
NILNOV_DECLARE_ERROR(RelatorNotKilled);
NILNOV_DECLARE_ERROR(ClassUnsupported);
NILNOV_DECLARE_ERROR(DimensionMismatch);
NILNOV_DECLARE_ERROR(InconsistentReport);
NILNOV_DECLARE_ERROR(InvalidArgument);

#undef NILNOV_DECLARE_ERROR

} // namespace nilnov

#endif
