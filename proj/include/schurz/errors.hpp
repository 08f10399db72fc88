#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schurz {

// Malformed textual or file input. Carries the byte offset of the first
// offending character when one is known (npos otherwise).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what,
                         std::size_t offset = std::string::npos)
        : std::runtime_error(format(what, offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    static std::string format(const std::string& what, std::size_t offset) {
        if (offset == std::string::npos) return what;
        return what + " (byte offset " + std::to_string(offset) + ")";
    }
    std::size_t offset_;
};

// Input is well-formed but violates a convergence / membership condition
// (non-proper word, inadmissible index, word outside G or theta(H), ...).
class admissibility_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured complexity guardrail (element count, enumeration weight,
// loop budget, nesting depth) would be exceeded.
class cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace schurz
