#pragma once

#include <stdexcept>
#include <string>

namespace torustrace {

// A series or iterative scheme failed to reach its tolerance within budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// A request would exceed a configured enumeration or memory budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace torustrace
