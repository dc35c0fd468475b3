#pragma once

#include <stdexcept>
#include <string>

namespace depolarb {

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimMismatch : std::runtime_error {
    explicit DimMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitian : std::runtime_error {
    explicit NotHermitian(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMomentPair : std::runtime_error {
    explicit SingularMomentPair(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidPOM : std::runtime_error {
    explicit InvalidPOM(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace depolarb
