#pragma once

#include <stdexcept>
#include <string>

namespace cwm {

// Input that violates a documented precondition (CLI exit code 2).
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& m) : std::runtime_error(m) {}
};

struct NotBijectiveError : PreconditionError {
    int color;
    explicit NotBijectiveError(int c)
        : PreconditionError("tau[" + std::to_string(c) + "] is not a bijection"), color(c) {}
};

struct DisconnectedError : PreconditionError {
    explicit DisconnectedError(const std::string& what) : PreconditionError(what) {}
};

struct OpenGraphError : PreconditionError {
    OpenGraphError() : PreconditionError("operation requires a closed graph") {}
};

struct CapExceededError : PreconditionError {
    explicit CapExceededError(const std::string& m) : PreconditionError(m) {}
};

struct LabelMismatchError : PreconditionError {
    explicit LabelMismatchError(const std::string& m) : PreconditionError(m) {}
};

struct UnreducedTemplateError : PreconditionError {
    UnreducedTemplateError()
        : PreconditionError("template has a monochromatic cycle; reduce it first") {}
};

struct UnknownFamilyError : PreconditionError {
    explicit UnknownFamilyError(const std::string& name)
        : PreconditionError("unknown dominance family: " + name) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// Internal consistency failure; must never fire on valid inputs (CLI exit code 3).
struct InternalCheckError : std::logic_error {
    explicit InternalCheckError(const std::string& m) : std::logic_error(m) {}
};

inline void internal_check(bool ok, const char* what) {
    if (!ok) throw InternalCheckError(what);
}

} // namespace cwm
