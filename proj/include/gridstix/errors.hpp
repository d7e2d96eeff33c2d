#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridstix {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- core --------------------------------------------------------------

/// Malformed document. Carries the byte offset of the fault when known.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t byte_offset)
        : Error(msg), byte_offset_(byte_offset) {}
    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

/// Object-level envelope violation (missing id/type/spec_version,
/// id-type mismatch, relationship ref rules). Carries the object index.
class EnvelopeError : public Error {
public:
    EnvelopeError(const std::string& msg, std::optional<std::size_t> object_index = {})
        : Error(msg), object_index_(object_index) {}
    std::optional<std::size_t> object_index() const { return object_index_; }

private:
    std::optional<std::size_t> object_index_;
};

class TokenError : public Error {
public:
    using Error::Error;
};

class SelfLoopError : public Error {
public:
    using Error::Error;
};

// ---- schema ------------------------------------------------------------

class RegistryError : public Error {
public:
    using Error::Error;
};

class UnknownTypeError : public Error {
public:
    using Error::Error;
};

class UnknownRelationshipError : public Error {
public:
    using Error::Error;
};

class UnknownVocabularyError : public Error {
public:
    using Error::Error;
};

// ---- validation --------------------------------------------------------

class MergeConflictError : public Error {
public:
    using Error::Error;
};

// ---- analytics ---------------------------------------------------------

class GraphBuildError : public Error {
public:
    using Error::Error;
};

class UnknownSeedError : public Error {
public:
    using Error::Error;
};

class UnknownRootError : public Error {
public:
    using Error::Error;
};

/// Cycle in the contains/depends-on subgraph. Carries one witness cycle.
class CycleError : public Error {
public:
    CycleError(const std::string& msg, std::vector<std::string> witness)
        : Error(msg), witness_(std::move(witness)) {}
    const std::vector<std::string>& witness() const { return witness_; }

private:
    std::vector<std::string> witness_;
};

class UnknownPatternError : public Error {
public:
    using Error::Error;
};

class MissingPatternPropertyError : public Error {
public:
    using Error::Error;
};

// ---- policy ------------------------------------------------------------

class UnknownTargetError : public Error {
public:
    using Error::Error;
};

class UnknownContextError : public Error {
public:
    using Error::Error;
};

class ConflictingContextsError : public Error {
public:
    using Error::Error;
};

// ---- redaction ---------------------------------------------------------

class ProfileConflictError : public Error {
public:
    using Error::Error;
};

class ValidationPreconditionError : public Error {
public:
    using Error::Error;
};

// ---- export ------------------------------------------------------------

class CollisionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gridstix
