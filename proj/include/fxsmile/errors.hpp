#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fxsmile {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-positive strike, vol, expiry or forward, or a probability outside (0,1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A root does not exist inside the search bracket.
class NoSolution : public Error {
public:
    NoSolution(const std::string& what, double lo, double hi)
        : Error(what + " (bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "])"),
          lo_(lo), hi_(hi) {}
    double lower() const noexcept { return lo_; }
    double upper() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

class NoBracket : public NoSolution {
public:
    using NoSolution::NoSolution;
};

class PriceOutOfBounds : public Error {
public:
    PriceOutOfBounds(const std::string& what, double price, double bound)
        : Error(what), price_(price), bound_(bound) {}
    double price() const noexcept { return price_; }
    double violated_bound() const noexcept { return bound_; }

private:
    double price_;
    double bound_;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class NodesNotMonotone : public Error {
public:
    using Error::Error;
};

/// Raised when a smile is asked for a vol where its total variance is not positive.
class NegativeVariance : public Error {
public:
    NegativeVariance(double y, double w)
        : Error("non-positive total variance " + std::to_string(w) + " at log-moneyness " +
                std::to_string(y)),
          y_(y), w_(w) {}
    double log_moneyness() const noexcept { return y_; }
    double total_variance() const noexcept { return w_; }

private:
    double y_;
    double w_;
};

class CalibrationFailed : public Error {
public:
    CalibrationFailed(const std::string& what, double objective)
        : Error(what + " (objective " + std::to_string(objective) + ")"), objective_(objective) {}
    double objective() const noexcept { return objective_; }

private:
    double objective_;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

}  // namespace fxsmile
