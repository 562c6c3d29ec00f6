#pragma once

#include <stdexcept>
#include <string>

namespace excitable {

// Base class of every failure the library surfaces. The CLI maps kind()
// strings to exit codes in tools/excitable_main.cpp.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

// A step produced a non-finite field value (time step too large or input
// corrupted). Carries the step index at which the value was detected.
class NumericalBlowup : public Error {
public:
    explicit NumericalBlowup(long step, const std::string& context = {})
        : Error(context.empty()
                    ? "non-finite field value at step " + std::to_string(step)
                    : context + ": non-finite field value at step " + std::to_string(step)),
          step_(step) {}
    long step() const noexcept { return step_; }
    const char* kind() const noexcept override { return "NumericalBlowup"; }

private:
    long step_;
};

class VoidStimulus : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "VoidStimulus"; }
};

class GeometryOverflow : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "GeometryOverflow"; }
};

class ParseError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ParseError"; }
};

class EmptyMask : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "EmptyMask"; }
};

class ZeroStreets : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ZeroStreets"; }
};

class BadBracket : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "BadBracket"; }
};

class Inconclusive : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "Inconclusive"; }
};

class DegenerateInput : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "DegenerateInput"; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ConfigError"; }
};

}  // namespace excitable
