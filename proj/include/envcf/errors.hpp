#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace envcf {

enum class errc {
    parse,         // malformed expression / scenario / survey text
    validate,      // family or survey fails an invariant check
    domain,        // expression evaluated outside its domain
    not_creative,  // operation requires a creative family
    degenerate,    // geometric degeneracy (coincident circles, f == A, ...)
    io,            // file read/write failure
    invalid_arg,   // bad option or precondition at the API boundary
};

class Error : public std::runtime_error {
public:
    Error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    Error(errc code, std::string message, std::size_t offset)
        : std::runtime_error(std::move(message)), code_(code), offset_(offset), has_offset_(true) {}

    errc code() const { return code_; }
    bool has_offset() const { return has_offset_; }
    std::size_t offset() const { return offset_; }

private:
    errc code_;
    std::size_t offset_ = 0;
    bool has_offset_ = false;
};

}  // namespace envcf
