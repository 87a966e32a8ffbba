#ifndef ASCOHOM_ERRORS_HPP
#define ASCOHOM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace ascohom {

/// Broad failure category. The numeric value is the CLI exit code.
enum class ErrorKind : int {
    parse = 2,
    precondition = 3,
    mismatch = 4,
    internal = 5,
};

/// Every library failure carries a machine-readable name (e.g. "NotNilpotent")
/// next to the human message, so reports and exit codes stay stable.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), kind_(kind), name_(std::move(name)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

   private:
    ErrorKind kind_;
    std::string name_;
};

inline Error parse_error(std::string name, const std::string& msg) {
    return Error(ErrorKind::parse, std::move(name), msg);
}
inline Error precondition_error(std::string name, const std::string& msg) {
    return Error(ErrorKind::precondition, std::move(name), msg);
}
inline Error mismatch_error(std::string name, const std::string& msg) {
    return Error(ErrorKind::mismatch, std::move(name), msg);
}
inline Error internal_error(std::string name, const std::string& msg) {
    return Error(ErrorKind::internal, std::move(name), msg);
}

/// Internal assertion that survives NDEBUG builds.
inline void ensure(bool cond, const char* name, const std::string& msg) {
    if (!cond) throw internal_error(name, msg);
}

}  // namespace ascohom

#endif
