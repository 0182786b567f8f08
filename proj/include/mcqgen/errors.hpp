#pragma once

#include <stdexcept>
#include <string>

namespace mcqgen {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Answer text is empty after normalization.
class InvalidAnswerError : public Error {
public:
    using Error::Error;
};

/// A corpus line could not be parsed. Carries the 1-based line number.
class CorpusParseError : public Error {
public:
    CorpusParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A parsed record violates an MCQ invariant. Carries the question id.
class SchemaError : public Error {
public:
    SchemaError(std::string id, const std::string& what)
        : Error("question '" + id + "': " + what), id_(std::move(id)) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

class CorpusTooSmallError : public Error {
public:
    using Error::Error;
};

class EmptyPoolError : public Error {
public:
    using Error::Error;
};

class SynthesisError : public Error {
public:
    using Error::Error;
};

class EmbeddingError : public Error {
public:
    using Error::Error;
};

class DegenerateVectorError : public Error {
public:
    using Error::Error;
};

/// Model output could not be parsed into the expected shape.
class MalformedOutputError : public Error {
public:
    using Error::Error;
};

/// An in-context example lacks a field the prompt format requires.
class ExampleUnusableError : public Error {
public:
    ExampleUnusableError(std::string id, const std::string& what)
        : Error("example '" + id + "': " + what), id_(std::move(id)) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

/// A retryable provider failure (timeout, throttling, 5xx).
class TransientProviderError : public Error {
public:
    using Error::Error;
};

/// Provider kept failing after the retry budget was spent.
class ProviderUnavailableError : public Error {
public:
    using Error::Error;
};

/// Authentication/authorization failure; never retried.
class CredentialError : public Error {
public:
    using Error::Error;
};

class EmptyEvaluationError : public Error {
public:
    using Error::Error;
};

/// Metric is undefined for the given inputs (e.g. zero distractors).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace mcqgen
