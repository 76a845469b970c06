#pragma once

#include <exception>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclodense {

// Error categories double as CLI exit codes.
enum class ErrorCode : int {
    domain = 1,     // bad input or precondition violation
    resource = 2,   // a configured cap was exceeded
    invariant = 3,  // internal consistency check failed
};

inline std::string_view error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::resource: return "resource_cap";
    case ErrorCode::invariant: return "invariant_violation";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(ErrorCode::resource, what) {}
};

class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& what) : Error(ErrorCode::invariant, what) {}
};

/// Same category as e, message prefixed.
inline std::exception_ptr with_context(const Error& e, const std::string& prefix) {
    const std::string msg = prefix + e.what();
    switch (e.code()) {
    case ErrorCode::domain: return std::make_exception_ptr(DomainError(msg));
    case ErrorCode::resource: return std::make_exception_ptr(ResourceError(msg));
    case ErrorCode::invariant: return std::make_exception_ptr(InvariantError(msg));
    }
    return std::make_exception_ptr(Error(e.code(), msg));
}

} // namespace cyclodense
