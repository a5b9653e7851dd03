#pragma once

#include <stdexcept>
#include <string>

#include "dmc/monomial.hpp"

namespace dmc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

// Witness: missing ⪯ present, present is in the set, missing is not.
class NotDecreasing : public Error {
public:
    NotDecreasing(Monomial missing, Monomial present)
        : Error("set is not decreasing: " + missing.to_string() + " ⪯ " + present.to_string() +
                " but " + missing.to_string() + " is absent"),
          missing_(missing),
          present_(present) {}

    const Monomial& missing() const { return missing_; }
    const Monomial& present() const { return present_; }

private:
    Monomial missing_;
    Monomial present_;
};

}  // namespace dmc
