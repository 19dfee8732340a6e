#pragma once

#include <stdexcept>
#include <string>

namespace fc45 {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value outside its attribute/variable domain, or a violated precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent data (bad CSV row, missing class label, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// Header or attribute layout does not match the expected schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Partition does not refine its parent distribution, and similar bookkeeping
/// violations in the induction math.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Text-format error; carries the 1-based line number where parsing failed.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A rule references a variable or term the system does not declare.
class RuleBaseError : public Error {
public:
    using Error::Error;
};

/// A tree symbol (branch label or class) has no matching vocabulary term.
class VocabularyError : public Error {
public:
    using Error::Error;
};

/// Classification descended to a node without a branch for the record's value.
class TreeMismatchError : public Error {
public:
    using Error::Error;
};

/// No rule fired: the aggregated output set is identically zero.
class NoActivationError : public Error {
public:
    using Error::Error;
};

} // namespace fc45
