#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace cpk {

// Thrown when an input file or CLI payload is malformed.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal invariant is violated. Reaching one of these is a
// bug in this library, never a property of the input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

namespace detail {
[[noreturn]] inline void check_fail(const char* expr, const char* file, int line,
                                    const std::string& msg) {
    std::ostringstream os;
    os << "invariant failed: " << expr << " at " << file << ":" << line;
    if (!msg.empty()) os << " (" << msg << ")";
    throw internal_error(os.str());
}
}  // namespace detail

}  // namespace cpk

#define CPK_CHECK(expr)                                                  \
    do {                                                                 \
        if (!(expr))                                                     \
            ::cpk::detail::check_fail(#expr, __FILE__, __LINE__, "");    \
    } while (0)

#define CPK_CHECK_MSG(expr, msg)                                         \
    do {                                                                 \
        if (!(expr))                                                     \
            ::cpk::detail::check_fail(#expr, __FILE__, __LINE__, (msg)); \
    } while (0)
