#pragma once

#include <stdexcept>
#include <string>

namespace nilcx {

// Typed failure with a stable machine-readable code. The CLI maps these to
// {"status":"error", ...} reports and exit code 2; tests match on the code.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace nilcx
