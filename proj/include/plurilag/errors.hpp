#pragma once

#include <stdexcept>
#include <string>

namespace plurilag {

// Numerically inadmissible configuration: singular data, log of a
// non-positive argument, field outside a model's domain.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed combinatorial data: bad cell, incoherent or non-disk surface.
class CellError : public std::invalid_argument {
public:
    explicit CellError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Field lookup at a vertex that carries no value. Message names the vertex.
class LookupError : public std::out_of_range {
public:
    explicit LookupError(const std::string& msg) : std::out_of_range(msg) {}
};

// Root finding or cube completion failure (no bracket, iteration cap,
// residual check).
class SolveError : public std::runtime_error {
public:
    explicit SolveError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. Message carries the offending location.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace plurilag
