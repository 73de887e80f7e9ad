#pragma once

#include <stdexcept>
#include <string>

namespace ocorg {

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct Unstabilizable : std::runtime_error {
    explicit Unstabilizable(const std::string& what) : std::runtime_error(what) {}
};

struct IterationCap : std::runtime_error {
    explicit IterationCap(const std::string& what) : std::runtime_error(what) {}
};

struct Unbounded : std::runtime_error {
    explicit Unbounded(const std::string& what) : std::runtime_error(what) {}
};

struct Infeasible : std::runtime_error {
    explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyResult : std::runtime_error {
    explicit EmptyResult(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyTightening : std::runtime_error {
    explicit EmptyTightening(const std::string& what) : std::runtime_error(what) {}
};

struct HorizonCap : std::runtime_error {
    explicit HorizonCap(const std::string& what) : std::runtime_error(what) {}
};

struct KCap : std::runtime_error {
    explicit KCap(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySet : std::runtime_error {
    explicit EmptySet(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleAtZero : std::runtime_error {
    explicit InfeasibleAtZero(const std::string& what) : std::runtime_error(what) {}
};

struct NotStronglyConvex : std::runtime_error {
    explicit NotStronglyConvex(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ocorg
