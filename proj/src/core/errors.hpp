#pragma once
#include <stdexcept>
#include <string>

namespace sz {

// Error taxonomy shared by every module. The C API maps `kind` onto status
// codes and the CLI maps those onto exit codes, so throw sites must pick the
// right one: contract/parse for caller mistakes, cap/precision for resource
// or certification exhaustion.
enum class errkind {
    contract,   // violated precondition or domain error
    parse,      // malformed input text
    cap,        // enumeration / state-space / solver cap exceeded
    precision,  // interval arithmetic could not decide at max precision
    io,         // file system failure
};

class error : public std::runtime_error {
public:
    error(errkind kind, std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), kind_(kind), module_(std::move(module)) {}

    errkind kind() const { return kind_; }
    const std::string& module() const { return module_; }

private:
    errkind kind_;
    std::string module_;
};

[[noreturn]] inline void fail(errkind k, const std::string& module, const std::string& msg) {
    throw error(k, module, msg);
}

inline void require(bool cond, errkind k, const std::string& module, const std::string& msg) {
    if (!cond) fail(k, module, msg);
}

}  // namespace sz
