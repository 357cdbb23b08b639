#pragma once

#include <stdexcept>
#include <string>

namespace mesoatom {

struct NotHalfInteger : std::runtime_error {
    explicit NotHalfInteger(const std::string& msg) : std::runtime_error(msg) {}
};

struct CouplingTooLarge : std::runtime_error {
    explicit CouplingTooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidDegree : std::runtime_error {
    explicit InvalidDegree(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfChart : std::runtime_error {
    explicit OutOfChart(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfSpectrum : std::runtime_error {
    explicit OutOfSpectrum(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivergentIntegral : std::runtime_error {
    explicit DivergentIntegral(const std::string& msg) : std::runtime_error(msg) {}
};

struct StiffnessFailure : std::runtime_error {
    explicit StiffnessFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct BranchError : std::runtime_error {
    explicit BranchError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoSuchLevel : std::runtime_error {
    explicit NoSuchLevel(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mesoatom
