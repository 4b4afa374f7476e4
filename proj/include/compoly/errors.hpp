#pragma once

#include <stdexcept>
#include <string>

namespace compoly {

struct SizeLimitExceeded : std::domain_error {
    explicit SizeLimitExceeded(const std::string& what) : std::domain_error(what) {}
};

struct OutOfRange : std::domain_error {
    explicit OutOfRange(const std::string& what) : std::domain_error(what) {}
};

struct DimensionTooHigh : std::domain_error {
    explicit DimensionTooHigh(const std::string& what) : std::domain_error(what) {}
};

struct DegenerateBlock : std::domain_error {
    explicit DegenerateBlock(const std::string& what) : std::domain_error(what) {}
};

struct NotInPolytope : std::domain_error {
    explicit NotInPolytope(const std::string& what) : std::domain_error(what) {}
};

}  // namespace compoly
